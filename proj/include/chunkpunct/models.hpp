#pragma once

// Restoration models: lowercase unpunctuated chunk in, labeled chunk out.

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <memory>
#include <utility>
#include <vector>

#include "chunkpunct/chunker.hpp"
#include "chunkpunct/codec.hpp"
#include "chunkpunct/corpus.hpp"
#include "chunkpunct/error.hpp"
#include "chunkpunct/labels.hpp"
#include "chunkpunct/text.hpp"

namespace chunkpunct {

/// Implementations must be safe for concurrent `restore` calls and must give
/// the same answer for a chunk regardless of call order.
class Restorer {
 public:
  virtual ~Restorer() = default;

  virtual LabeledSequence restore(const Chunk& chunk) const = 0;

  virtual std::vector<LabeledSequence> restore_batch(std::span<const Chunk> chunks) const {
    std::vector<LabeledSequence> out;
    out.reserve(chunks.size());
    for (const auto& c : chunks) out.push_back(restore(c));
    return out;
  }

  /// Chunks per `restore_batch` call preferred by the model.
  virtual std::size_t batch_size() const { return 1; }
};

inline LabeledSequence restore_chunk(const Restorer& model, const Chunk& chunk) {
  return model.restore(chunk);
}

/// Returns the reference labels of each chunk, keyed by chunk index.
class OracleRestorer : public Restorer {
 public:
  explicit OracleRestorer(std::vector<LabeledSequence> reference_chunks)
      : chunks_(std::move(reference_chunks)) {}

  /// Slices a whole-document reference the way `split` slices its words.
  static OracleRestorer from_document(const LabeledSequence& reference, const ChunkConfig& cfg) {
    std::vector<LabeledSequence> chunks;
    const auto words = words_of(reference);
    for (const auto& c : split(words, cfg)) {
      chunks.emplace_back(reference.begin() + c.start, reference.begin() + c.end());
    }
    return OracleRestorer(std::move(chunks));
  }

  LabeledSequence restore(const Chunk& chunk) const override {
    if (chunk.index >= chunks_.size()) {
      throw ModelError("oracle has no reference for chunk " + std::to_string(chunk.index));
    }
    const auto& ref = chunks_[chunk.index];
    if (ref.size() != chunk.words.size()) {
      throw ModelError("oracle reference for chunk " + std::to_string(chunk.index) + " has " +
                       std::to_string(ref.size()) + " words, chunk has " +
                       std::to_string(chunk.words.size()));
    }
    for (std::size_t i = 0; i < ref.size(); ++i) {
      if (ref[i].word != chunk.words[i]) {
        throw ModelError("oracle reference for chunk " + std::to_string(chunk.index) +
                         " disagrees at word " + std::to_string(i) + " ('" + ref[i].word +
                         "' vs '" + chunk.words[i] + "')");
      }
    }
    return ref;
  }

  std::size_t size() const { return chunks_.size(); }

 private:
  std::vector<LabeledSequence> chunks_;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Uniform [0, 1) draw keyed by (seed, chunk, position).
inline double keyed_uniform(std::uint64_t seed, std::size_t chunk_index, std::size_t position) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(chunk_index));
  h = splitmix64(h ^ static_cast<std::uint64_t>(position));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Simulates boundary errors: each position within `width` of either chunk
/// edge is hit with probability `p`; a hit flips the case label and drops the
/// punctuation. Interior positions are untouched.
inline LabeledSequence corrupt_boundary(const LabeledSequence& reference, std::size_t width,
                                        double p, std::uint64_t seed, std::size_t chunk_index = 0) {
  LabeledSequence out = reference;
  const std::size_t n = out.size();
  for (std::size_t pos = 0; pos < n; ++pos) {
    const bool near_edge = pos < width || pos + width >= n;
    if (!near_edge || detail::keyed_uniform(seed, chunk_index, pos) >= p) continue;
    Token& t = out[pos];
    t.case_label = t.case_label == CaseLabel::Upper ? CaseLabel::Lower : CaseLabel::Upper;
    t.punct = PunctLabel::None;
  }
  return out;
}

class BoundaryNoiseRestorer : public Restorer {
 public:
  BoundaryNoiseRestorer(OracleRestorer oracle, std::size_t width, double p, std::uint64_t seed)
      : oracle_(std::move(oracle)), width_(width), p_(p), seed_(seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("corruption probability must be in [0, 1]");
  }

  LabeledSequence restore(const Chunk& chunk) const override {
    return corrupt_boundary(oracle_.restore(chunk), width_, p_, seed_, chunk.index);
  }

 private:
  OracleRestorer oracle_;
  std::size_t width_;
  double p_;
  std::uint64_t seed_;
};

struct CaseCounts {
  std::uint64_t upper = 0;
  std::uint64_t lower = 0;
  friend bool operator==(const CaseCounts&, const CaseCounts&) = default;
};

/// Counts indexed by PunctLabel.
using PunctCounts = std::array<std::uint64_t, 4>;

namespace detail {

// Tie order for the punctuation argmax: None > FullStop > Comma > Question.
inline constexpr std::array<PunctLabel, 4> kPunctPreference{PunctLabel::None, PunctLabel::FullStop,
                                                            PunctLabel::Comma, PunctLabel::Question};
// Column order in the persisted table.
inline constexpr std::array<PunctLabel, 4> kPunctColumns{PunctLabel::None, PunctLabel::FullStop,
                                                         PunctLabel::Comma, PunctLabel::Question};

inline PunctLabel argmax(const PunctCounts& counts) {
  PunctLabel best = kPunctPreference[0];
  for (PunctLabel p : kPunctPreference) {
    if (counts[static_cast<std::size_t>(p)] > counts[static_cast<std::size_t>(best)]) best = p;
  }
  return best;
}

}  // namespace detail

/// Frequency tables behind the baseline restorer.
struct BaselineTable {
  std::map<std::string, CaseCounts> case_freq;
  std::map<std::pair<std::string, std::string>, PunctCounts> punct_bigram;
  std::map<std::string, PunctCounts> punct_final;

  bool empty() const { return case_freq.empty() && punct_bigram.empty() && punct_final.empty(); }

  void add(const LabeledSequence& chunk) {
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      const Token& t = chunk[i];
      auto& cc = case_freq[t.word];
      (t.case_label == CaseLabel::Upper ? cc.upper : cc.lower)++;
      const auto p = static_cast<std::size_t>(t.punct);
      if (i + 1 < chunk.size()) {
        punct_bigram[{t.word, chunk[i + 1].word}][p]++;
      } else {
        punct_final[t.word][p]++;
      }
    }
  }

  CaseLabel predict_case(const std::string& word) const {
    const auto it = case_freq.find(word);
    if (it == case_freq.end()) return CaseLabel::Lower;
    return it->second.upper > it->second.lower ? CaseLabel::Upper : CaseLabel::Lower;
  }

  /// `next` is empty for the last word of a chunk.
  PunctLabel predict_punct(const std::string& word, const std::string* next) const {
    if (next) {
      const auto it = punct_bigram.find({word, *next});
      return it == punct_bigram.end() ? PunctLabel::None : detail::argmax(it->second);
    }
    const auto it = punct_final.find(word);
    return it == punct_final.end() ? PunctLabel::None : detail::argmax(it->second);
  }

  LabeledSequence predict(std::span<const std::string> words) const {
    LabeledSequence out;
    out.reserve(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
      out.push_back(Token{words[i], predict_case(words[i]),
                          predict_punct(words[i], i + 1 < words.size() ? &words[i + 1] : nullptr)});
    }
    return out;
  }

  void save(std::ostream& os) const {
    os << "#case\tword\tU\tL\n";
    for (const auto& [w, c] : case_freq) os << w << '\t' << c.upper << '\t' << c.lower << '\n';
    auto counts = [&os](const PunctCounts& pc) {
      for (PunctLabel p : detail::kPunctColumns) os << '\t' << pc[static_cast<std::size_t>(p)];
      os << '\n';
    };
    os << "#bigram\tword\tnext\t$\t.\t,\t?\n";
    for (const auto& [key, pc] : punct_bigram) {
      os << key.first << '\t' << key.second;
      counts(pc);
    }
    os << "#final\tword\t$\t.\t,\t?\n";
    for (const auto& [w, pc] : punct_final) {
      os << w;
      counts(pc);
    }
  }

  static BaselineTable load(std::istream& is) {
    enum class Section { None, Case, Bigram, Final } section = Section::None;
    BaselineTable table;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& why) {
      throw FormatError("baseline table line " + std::to_string(lineno) + ": " + why);
    };
    auto number = [&](const std::string& s) -> std::uint64_t {
      std::uint64_t v = 0;
      std::size_t used = 0;
      try {
        v = std::stoull(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != s.size() || s.empty() || s[0] == '-') fail("bad count '" + s + "'");
      return v;
    };
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      std::vector<std::string> f;
      std::stringstream ss(line);
      for (std::string cell; std::getline(ss, cell, '\t');) f.push_back(cell);
      if (f[0] == "#case") { section = Section::Case; continue; }
      if (f[0] == "#bigram") { section = Section::Bigram; continue; }
      if (f[0] == "#final") { section = Section::Final; continue; }
      auto read_counts = [&](std::size_t from) {
        PunctCounts pc{};
        for (std::size_t k = 0; k < 4; ++k) {
          pc[static_cast<std::size_t>(detail::kPunctColumns[k])] = number(f[from + k]);
        }
        return pc;
      };
      switch (section) {
        case Section::None: fail("entry before any section header"); break;
        case Section::Case:
          if (f.size() != 3) fail("expected 3 columns");
          table.case_freq[f[0]] = CaseCounts{number(f[1]), number(f[2])};
          break;
        case Section::Bigram:
          if (f.size() != 6) fail("expected 6 columns");
          table.punct_bigram[{f[0], f[1]}] = read_counts(2);
          break;
        case Section::Final:
          if (f.size() != 5) fail("expected 5 columns");
          table.punct_final[f[0]] = read_counts(1);
          break;
      }
    }
    return table;
  }

  friend bool operator==(const BaselineTable&, const BaselineTable&) = default;
};

/// Accumulates counts from (input chunk, target chunk) pairs.
inline BaselineTable train_baseline(std::span<const ChunkPair> pairs,
                                    LineFormat target_format = LineFormat::Plain) {
  BaselineTable table;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto words = split_words(pairs[i].input);
    LabeledSequence target;
    try {
      target = target_format == LineFormat::Plain ? parse_plain(pairs[i].target)
                                                  : decode(pairs[i].target, words);
    } catch (const Error& e) {
      throw FormatError("training pair " + std::to_string(i) + ": " + e.what());
    }
    if (target.size() != words.size()) {
      throw FormatError("training pair " + std::to_string(i) + ": target has " +
                        std::to_string(target.size()) + " words, input has " +
                        std::to_string(words.size()));
    }
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (target[j].word != words[j]) {
        throw FormatError("training pair " + std::to_string(i) + ": word " + std::to_string(j) +
                          " differs between input and target");
      }
    }
    table.add(target);
  }
  return table;
}

class BaselineRestorer : public Restorer {
 public:
  explicit BaselineRestorer(std::shared_ptr<const BaselineTable> table) : table_(std::move(table)) {}

  LabeledSequence restore(const Chunk& chunk) const override { return table_->predict(chunk.words); }

 private:
  std::shared_ptr<const BaselineTable> table_;
};

}  // namespace chunkpunct
