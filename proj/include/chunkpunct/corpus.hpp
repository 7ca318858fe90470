#pragma once

// Raw text cleanup into (ASR-like input, reference output) material.
//
// Cleanup keeps letters and the three marks '.', ',' and '?'. Everything else
// (digits, apostrophes, hyphens, other symbols) is deleted without splitting
// the word, so "don't" becomes "dont". A mark only counts when no letter or
// digit follows it inside the same whitespace-delimited raw token; "5.99" and
// the inner dots of "U.S.A." are deleted. Counted marks attach to the previous
// surviving word. When several land on one word the strongest wins
// (? > . > ,). Sentences end at '.' and '?'.

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chunkpunct/chunker.hpp"
#include "chunkpunct/codec.hpp"
#include "chunkpunct/labels.hpp"
#include "chunkpunct/text.hpp"
#include "chunkpunct/utf8.hpp"

namespace chunkpunct {

struct CleanSentence {
  std::vector<std::string> words;  // original case, letters only
  std::vector<PunctLabel> puncts;  // one per word

  friend bool operator==(const CleanSentence&, const CleanSentence&) = default;
};

struct CleanOptions {
  bool ascii_only = false;
};

namespace detail {

constexpr int punct_rank(PunctLabel p) {
  switch (p) {
    case PunctLabel::None: return 0;
    case PunctLabel::Comma: return 1;
    case PunctLabel::FullStop: return 2;
    case PunctLabel::Question: return 3;
  }
  return 0;
}

class SentenceBuilder {
 public:
  void add_word(std::string word) {
    current_.words.push_back(std::move(word));
    current_.puncts.push_back(PunctLabel::None);
  }

  void add_mark(PunctLabel mark) {
    PunctLabel* target = nullptr;
    if (!current_.words.empty()) {
      target = &current_.puncts.back();
    } else if (!done_.empty()) {
      target = &done_.back().puncts.back();
    } else {
      return;  // nothing to attach to
    }
    if (punct_rank(mark) > punct_rank(*target)) *target = mark;
    if (!current_.words.empty() && ends_sentence(*target)) flush();
  }

  std::vector<CleanSentence> finish() && {
    flush();
    return std::move(done_);
  }

 private:
  void flush() {
    if (current_.words.empty()) return;
    done_.push_back(std::move(current_));
    current_ = {};
  }

  CleanSentence current_;
  std::vector<CleanSentence> done_;
};

}  // namespace detail

inline std::vector<CleanSentence> clean_text(std::string_view raw, const CleanOptions& opts = {}) {
  detail::SentenceBuilder builder;
  std::vector<char32_t> token;
  auto emit = [&] {
    if (token.empty()) return;
    std::size_t tail = 0;  // one past the last letter or digit
    for (std::size_t i = 0; i < token.size(); ++i) {
      if (utf8::is_letter(token[i]) || utf8::is_digit(token[i])) tail = i + 1;
    }
    std::string word;
    for (std::size_t i = 0; i < tail; ++i) {
      const char32_t cp = token[i];
      if (utf8::is_letter(cp) && (!opts.ascii_only || utf8::is_ascii_letter(cp))) {
        utf8::append(word, cp);
      }
    }
    if (!word.empty()) builder.add_word(std::move(word));
    for (std::size_t i = tail; i < token.size(); ++i) {
      if (token[i] < 0x80 && is_mark(static_cast<char>(token[i]))) {
        builder.add_mark(*punct_from_char(static_cast<char>(token[i])));
      }
    }
    token.clear();
  };
  for (std::size_t pos = 0; pos < raw.size();) {
    const char32_t cp = utf8::decode(raw, pos);
    if (utf8::is_space(cp)) {
      emit();
    } else {
      token.push_back(cp);
    }
  }
  emit();
  return std::move(builder).finish();
}

inline std::vector<CleanSentence> clean_text(std::string_view raw, bool ascii_only) {
  return clean_text(raw, CleanOptions{ascii_only});
}

/// Renders cleaned sentences back to text; clean_text of the result is the input.
inline std::string render_sentences(std::span<const CleanSentence> sentences) {
  std::string out;
  for (const auto& s : sentences) {
    for (std::size_t i = 0; i < s.words.size(); ++i) {
      if (!out.empty()) out.push_back(' ');
      out += s.words[i];
      if (s.puncts[i] != PunctLabel::None) out.push_back(punct_char(s.puncts[i]));
    }
  }
  return out;
}

inline std::vector<std::string> to_asr_input(const CleanSentence& s) {
  std::vector<std::string> out;
  out.reserve(s.words.size());
  for (const auto& w : s.words) out.push_back(utf8::lowercase(w));
  return out;
}

inline LabeledSequence to_sequence(std::span<const CleanSentence> sentences) {
  LabeledSequence seq;
  for (const auto& s : sentences) {
    for (std::size_t i = 0; i < s.words.size(); ++i) {
      seq.push_back(Token{utf8::lowercase(s.words[i]),
                          utf8::starts_upper(s.words[i]) ? CaseLabel::Upper : CaseLabel::Lower,
                          s.puncts[i]});
    }
  }
  return seq;
}

inline LabeledSequence to_sequence(const CleanSentence& s) { return to_sequence(std::span(&s, 1)); }

struct ChunkPair {
  std::string input;   // lowercase words, no punctuation
  std::string target;  // plain or encoded reference for the same words

  friend bool operator==(const ChunkPair&, const ChunkPair&) = default;
};

/// Chunks the whole sentence stream as one document and pairs each input chunk
/// with its reference. Target labels reflect the full-sentence truth, so a
/// chunk starting mid-sentence keeps lowercase on its first word.
inline std::vector<ChunkPair> make_pairs(std::span<const CleanSentence> sentences,
                                         const ChunkConfig& cfg,
                                         LineFormat format = LineFormat::Plain) {
  const LabeledSequence reference = to_sequence(sentences);
  const auto words = words_of(reference);
  std::vector<ChunkPair> pairs;
  for (const auto& chunk : split(words, cfg)) {
    const LabeledSequence slice(reference.begin() + chunk.start, reference.begin() + chunk.end());
    pairs.push_back(ChunkPair{join(chunk.words), render(slice, format)});
  }
  return pairs;
}

struct CorpusStats {
  std::size_t upper = 0;
  std::size_t lower = 0;
  std::size_t full_stop = 0;
  std::size_t comma = 0;
  std::size_t question = 0;
  std::size_t none = 0;

  std::size_t words() const { return upper + lower; }
  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

inline CorpusStats stats(std::span<const CleanSentence> sentences) {
  CorpusStats st;
  for (const auto& t : to_sequence(sentences)) {
    (t.case_label == CaseLabel::Upper ? st.upper : st.lower)++;
    switch (t.punct) {
      case PunctLabel::FullStop: ++st.full_stop; break;
      case PunctLabel::Comma: ++st.comma; break;
      case PunctLabel::Question: ++st.question; break;
      case PunctLabel::None: ++st.none; break;
    }
  }
  return st;
}

}  // namespace chunkpunct
