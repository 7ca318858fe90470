#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace chunkpunct {

constexpr bool is_ascii_space(char c) { return c == ' ' || (c >= '\t' && c <= '\r'); }

/// Splits on runs of ASCII whitespace; no empty fields.
inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_ascii_space(line[i])) ++i;
    const std::size_t begin = i;
    while (i < line.size() && !is_ascii_space(line[i])) ++i;
    if (i > begin) out.push_back(line.substr(begin, i - begin));
  }
  return out;
}

inline std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  for (auto f : split_fields(line)) out.emplace_back(f);
  return out;
}

template <typename Range>
std::string join(const Range& parts, std::string_view sep = " ") {
  std::string out;
  bool first = true;
  for (const auto& p : parts) {
    if (!first) out.append(sep);
    out.append(p);
    first = false;
  }
  return out;
}

}  // namespace chunkpunct
