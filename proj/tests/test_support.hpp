#pragma once

// Shared fixtures, random generators and brute-force oracles for the tests.
// Oracles here deliberately avoid the library code path they check.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chunkpunct/chunker.hpp"
#include "chunkpunct/labels.hpp"

namespace chunkpunct::testing {

inline const std::string kSampleOriginal =
    "The bill does not become law, unless houses of Congress vote to override the veto.";
inline const std::string kSampleInput =
    "the bill does not become law unless houses of congress vote to override the veto";
inline const std::string kSampleInputChunk1 = "the bill does not become law unless houses of congress";
inline const std::string kSampleInputChunk2 = "law unless houses of congress vote to override the veto";
inline const std::string kSamplePlainChunk1 = "The bill does not become law, unless houses of Congress";
inline const std::string kSamplePlainChunk2 = "law, unless houses of Congress vote to override the veto.";
inline const std::string kSampleEncodedChunk1 = "U$ L$ L$ L$ L$ L, L$ L$ L$ U$";
inline const std::string kSampleEncodedChunk2 = "L, L$ L$ L$ U$ L$ L$ L$ L$ L.";

inline std::vector<std::string> sample_words() {
  return {"the", "bill", "does", "not", "become", "law", "unless", "houses",
          "of",  "congress", "vote", "to", "override", "the", "veto"};
}

/// Reference labels for the sample sentence, written out by hand.
inline LabeledSequence sample_reference() {
  const auto words = sample_words();
  LabeledSequence seq;
  for (const auto& w : words) seq.push_back(Token{w, CaseLabel::Lower, PunctLabel::None});
  seq[0].case_label = CaseLabel::Upper;
  seq[9].case_label = CaseLabel::Upper;
  seq[5].punct = PunctLabel::Comma;
  seq[14].punct = PunctLabel::FullStop;
  return seq;
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : gen_(seed) {}

  std::size_t uniform(std::size_t lo, std::size_t hi) {  // inclusive
    return std::uniform_int_distribution<std::size_t>(lo, hi)(gen_);
  }
  double real() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }

  std::string word() {
    static const std::array<const char*, 24> vocab{
        "the", "bill", "law", "vote", "congress", "house", "veto", "a", "of", "to", "is", "we",
        "london", "mary", "why", "what", "report", "said", "it", "and", "ok", "i", "paris", "news"};
    if (uniform(0, 9) == 0) {  // occasional random word
      std::string w;
      const auto len = uniform(1, 8);
      for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<char>('a' + uniform(0, 25)));
      return w;
    }
    return vocab[uniform(0, vocab.size() - 1)];
  }

  std::vector<std::string> words(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(word());
    return out;
  }

  CaseLabel case_label() { return uniform(0, 3) == 0 ? CaseLabel::Upper : CaseLabel::Lower; }
  PunctLabel punct() {
    const auto r = uniform(0, 9);
    if (r == 0) return PunctLabel::FullStop;
    if (r == 1) return PunctLabel::Comma;
    if (r == 2) return PunctLabel::Question;
    return PunctLabel::None;
  }

  LabeledSequence sequence(std::size_t n) {
    LabeledSequence seq;
    for (std::size_t i = 0; i < n; ++i) seq.push_back(Token{word(), case_label(), punct()});
    return seq;
  }

  /// Same words, independently drawn labels.
  LabeledSequence relabel(const LabeledSequence& seq) {
    LabeledSequence out = seq;
    for (auto& t : out) {
      t.case_label = case_label();
      t.punct = punct();
    }
    return out;
  }

  ChunkConfig chunk_config(std::size_t max_k = 40) {
    const auto k = uniform(2, max_k);
    return ChunkConfig{k, uniform(0, k - 1)};
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Brute-force one-vs-rest counts over the 6 slot symbols, written against the
/// 2-character label strings ("U$", "L,", ...) rather than the library's slots.
struct BruteForceCounts {
  static constexpr std::array<char, 6> kSymbols{'U', 'L', '.', ',', '?', '$'};
  std::array<std::uint64_t, 6> tp{}, fp{}, fn{};

  static char case_symbol(const Token& t) { return t.case_label == CaseLabel::Upper ? 'U' : 'L'; }
  static char punct_symbol(const Token& t) {
    switch (t.punct) {
      case PunctLabel::FullStop: return '.';
      case PunctLabel::Comma: return ',';
      case PunctLabel::Question: return '?';
      default: return '$';
    }
  }

  void add(const LabeledSequence& ref, const LabeledSequence& hyp) {
    for (std::size_t i = 0; i < ref.size(); ++i) {
      for (int slot = 0; slot < 2; ++slot) {
        const char r = slot == 0 ? case_symbol(ref[i]) : punct_symbol(ref[i]);
        const char h = slot == 0 ? case_symbol(hyp[i]) : punct_symbol(hyp[i]);
        for (std::size_t c = 0; c < kSymbols.size(); ++c) {
          const bool in_ref = r == kSymbols[c];
          const bool in_hyp = h == kSymbols[c];
          if (in_ref && in_hyp) ++tp[c];
          if (!in_ref && in_hyp) ++fp[c];
          if (in_ref && !in_hyp) ++fn[c];
        }
      }
    }
  }

  double precision(std::size_t c) const {
    return tp[c] + fp[c] == 0 ? 0.0 : double(tp[c]) / double(tp[c] + fp[c]);
  }
  double recall(std::size_t c) const {
    return tp[c] + fn[c] == 0 ? 0.0 : double(tp[c]) / double(tp[c] + fn[c]);
  }
  double f1(std::size_t c) const {
    const double p = precision(c), r = recall(c);
    return p + r == 0.0 ? 0.0 : 2 * p * r / (p + r);
  }
};

/// Which (chunk, local position) supplies global position g under the
/// min_words_cut rule, found by scanning chunks instead of building a plan:
/// position g in the overlap of chunks i and i+1 stays with chunk i iff it is
/// before the last `cut` positions of chunk i.
struct Owner {
  std::size_t chunk;
  std::size_t local;
};

inline Owner owner_of(std::size_t g, std::size_t n, const ChunkConfig& cfg, std::size_t m) {
  const std::size_t s = cfg.stride();
  const std::size_t count = chunk_count(n, cfg);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t start = i * s;
    const std::size_t end = std::min(start + cfg.chunk_size, n);
    if (g < start || g >= end) continue;
    if (i + 1 < count) {
      const std::size_t next_start = (i + 1) * s;
      const std::size_t next_len = std::min(next_start + cfg.chunk_size, n) - next_start;
      const std::size_t cut = std::min({m, cfg.overlap, next_len});
      if (g >= end - cut) continue;  // handed to the next chunk
    }
    return {i, g - start};
  }
  return {count, 0};
}

}  // namespace chunkpunct::testing
