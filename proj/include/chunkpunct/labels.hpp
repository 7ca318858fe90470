#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chunkpunct {

enum class CaseLabel : std::uint8_t { Upper, Lower };

/// Punctuation following a word. `None` is written "$".
enum class PunctLabel : std::uint8_t { FullStop, Comma, Question, None };

inline constexpr std::array<CaseLabel, 2> kCaseLabels{CaseLabel::Upper, CaseLabel::Lower};
inline constexpr std::array<PunctLabel, 4> kPunctLabels{PunctLabel::FullStop, PunctLabel::Comma,
                                                        PunctLabel::Question, PunctLabel::None};

constexpr char case_char(CaseLabel c) { return c == CaseLabel::Upper ? 'U' : 'L'; }

constexpr char punct_char(PunctLabel p) {
  switch (p) {
    case PunctLabel::FullStop: return '.';
    case PunctLabel::Comma: return ',';
    case PunctLabel::Question: return '?';
    case PunctLabel::None: break;
  }
  return '$';
}

constexpr std::optional<CaseLabel> case_from_char(char c) {
  if (c == 'U') return CaseLabel::Upper;
  if (c == 'L') return CaseLabel::Lower;
  return std::nullopt;
}

constexpr std::optional<PunctLabel> punct_from_char(char c) {
  switch (c) {
    case '.': return PunctLabel::FullStop;
    case ',': return PunctLabel::Comma;
    case '?': return PunctLabel::Question;
    case '$': return PunctLabel::None;
    default: return std::nullopt;
  }
}

/// The marks that may trail a word in plain text.
constexpr bool is_mark(char c) { return c == '.' || c == ',' || c == '?'; }

constexpr bool ends_sentence(PunctLabel p) {
  return p == PunctLabel::FullStop || p == PunctLabel::Question;
}

/// One restored word: lowercase surface form plus its two labels.
struct Token {
  std::string word;
  CaseLabel case_label = CaseLabel::Lower;
  PunctLabel punct = PunctLabel::None;

  friend bool operator==(const Token&, const Token&) = default;
};

/// An aligned restoration hypothesis or reference.
using LabeledSequence = std::vector<Token>;

inline std::vector<std::string> words_of(const LabeledSequence& seq) {
  std::vector<std::string> out;
  out.reserve(seq.size());
  for (const auto& t : seq) out.push_back(t.word);
  return out;
}

}  // namespace chunkpunct
