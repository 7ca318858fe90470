#pragma once

// Conversions between plain restored text ("The bill does not become law,"),
// aligned token sequences and the two-character encoded format ("U$ L$ ... L,").

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chunkpunct/error.hpp"
#include "chunkpunct/labels.hpp"
#include "chunkpunct/text.hpp"
#include "chunkpunct/utf8.hpp"

namespace chunkpunct {

enum class LineFormat { Plain, Encoded };

inline std::string to_string(LineFormat f) { return f == LineFormat::Plain ? "plain" : "encoded"; }

inline LineFormat parse_line_format(std::string_view s) {
  if (s == "plain") return LineFormat::Plain;
  if (s == "encoded") return LineFormat::Encoded;
  throw ConfigError("unknown format '" + std::string(s) + "' (expected plain or encoded)");
}

inline std::string encode_token(const Token& t) { return {case_char(t.case_label), punct_char(t.punct)}; }

inline std::string encode(const LabeledSequence& seq) {
  std::string out;
  out.reserve(seq.size() * 3);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out.push_back(' ');
    out.push_back(case_char(seq[i].case_label));
    out.push_back(punct_char(seq[i].punct));
  }
  return out;
}

/// Parses one whitespace-delimited plain word such as "Congress" or "law,".
/// `position` only feeds the error message.
inline Token parse_plain_word(std::string_view surface, std::size_t position) {
  PunctLabel punct = PunctLabel::None;
  if (!surface.empty() && is_mark(surface.back())) {
    punct = *punct_from_char(surface.back());
    surface.remove_suffix(1);
  }
  if (surface.empty()) throw MalformedPlainText(position, "punctuation mark not attached to a word");
  for (char c : surface) {
    if (is_mark(c)) {
      throw MalformedPlainText(position, "'" + std::string(surface) + "' carries more than one mark");
    }
  }
  return Token{utf8::lowercase(surface),
               utf8::starts_upper(surface) ? CaseLabel::Upper : CaseLabel::Lower, punct};
}

inline LabeledSequence parse_plain(std::string_view line) {
  const auto fields = split_fields(line);
  LabeledSequence seq;
  seq.reserve(fields.size());
  for (std::size_t i = 0; i < fields.size(); ++i) seq.push_back(parse_plain_word(fields[i], i));
  return seq;
}

inline std::string render_token(const Token& t) {
  std::string out = t.case_label == CaseLabel::Upper ? utf8::capitalize_first(t.word) : t.word;
  if (t.punct != PunctLabel::None) out.push_back(punct_char(t.punct));
  return out;
}

inline std::string render_plain(const LabeledSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out.push_back(' ');
    out += render_token(seq[i]);
  }
  return out;
}

/// Labels of an encoded line, without words.
inline std::vector<std::pair<CaseLabel, PunctLabel>> parse_encoded(std::string_view line) {
  const auto fields = split_fields(line);
  std::vector<std::pair<CaseLabel, PunctLabel>> labels;
  labels.reserve(fields.size());
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto f = fields[i];
    const auto c = f.size() == 2 ? case_from_char(f[0]) : std::nullopt;
    const auto p = f.size() == 2 ? punct_from_char(f[1]) : std::nullopt;
    if (!c || !p) throw UnknownLabel(std::string(f), i);
    labels.emplace_back(*c, *p);
  }
  return labels;
}

/// Zips an encoded line onto the chunk's input words.
inline LabeledSequence decode(std::string_view line, std::span<const std::string> words) {
  const auto fields = split_fields(line);
  if (fields.size() != words.size()) throw LengthMismatch(words.size(), fields.size(), "decode");
  const auto labels = parse_encoded(line);
  LabeledSequence seq;
  seq.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    seq.push_back(Token{words[i], labels[i].first, labels[i].second});
  }
  return seq;
}

inline std::string render(const LabeledSequence& seq, LineFormat format) {
  return format == LineFormat::Plain ? render_plain(seq) : encode(seq);
}

}  // namespace chunkpunct
