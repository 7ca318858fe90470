#pragma once

#include <clocale>
#include <cstdint>
#include <cwctype>
#include <locale.h>
#include <string>
#include <string_view>

namespace chunkpunct::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

/// Decodes one code point starting at `pos` and advances `pos`.
/// Invalid sequences yield U+FFFD and consume a single byte.
inline char32_t decode(std::string_view s, std::size_t& pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return kReplacement;
  }
  if (pos + len > s.size()) {
    ++pos;
    return kReplacement;
  }
  for (int i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kReplacement;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  pos += len;
  return cp;
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

namespace detail {

// Unicode character classes come from glibc's C.UTF-8 tables, independent of
// the process locale.
inline locale_t unicode_locale() {
  static const locale_t loc = [] {
    locale_t l = newlocale(LC_CTYPE_MASK, "C.UTF-8", static_cast<locale_t>(0));
    if (l == static_cast<locale_t>(0)) l = newlocale(LC_CTYPE_MASK, "C.utf8", static_cast<locale_t>(0));
    return l;
  }();
  return loc;
}

}  // namespace detail

inline bool is_ascii_letter(char32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
}

inline bool is_letter(char32_t cp) {
  if (cp < 0x80) return is_ascii_letter(cp);
  if (cp == kReplacement) return false;
  const locale_t loc = detail::unicode_locale();
  if (loc == static_cast<locale_t>(0)) return false;
  return iswalpha_l(static_cast<wint_t>(cp), loc) != 0;
}

inline bool is_digit(char32_t cp) {
  if (cp < 0x80) return cp >= '0' && cp <= '9';
  const locale_t loc = detail::unicode_locale();
  // glibc classifies non-ASCII decimal digits as alnum but not alpha.
  return loc != static_cast<locale_t>(0) && iswalnum_l(static_cast<wint_t>(cp), loc) &&
         !iswalpha_l(static_cast<wint_t>(cp), loc);
}

inline bool is_space(char32_t cp) {
  if (cp < 0x80) return cp == ' ' || (cp >= '\t' && cp <= '\r');
  const locale_t loc = detail::unicode_locale();
  return loc != static_cast<locale_t>(0) && iswspace_l(static_cast<wint_t>(cp), loc) != 0;
}

inline char32_t to_lower(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
  const locale_t loc = detail::unicode_locale();
  if (loc == static_cast<locale_t>(0)) return cp;
  return static_cast<char32_t>(towlower_l(static_cast<wint_t>(cp), loc));
}

inline char32_t to_upper(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') ? cp - 32 : cp;
  const locale_t loc = detail::unicode_locale();
  if (loc == static_cast<locale_t>(0)) return cp;
  return static_cast<char32_t>(towupper_l(static_cast<wint_t>(cp), loc));
}

inline bool is_upper(char32_t cp) { return to_lower(cp) != cp; }

inline std::string lowercase(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t pos = 0; pos < s.size();) append(out, to_lower(decode(s, pos)));
  return out;
}

/// True iff the first code point of `s` is an uppercase letter.
inline bool starts_upper(std::string_view s) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  return is_upper(decode(s, pos));
}

inline std::string capitalize_first(std::string_view s) {
  if (s.empty()) return {};
  std::size_t pos = 0;
  const char32_t first = decode(s, pos);
  std::string out;
  out.reserve(s.size() + 2);
  append(out, to_upper(first));
  out.append(s.substr(pos));
  return out;
}

}  // namespace chunkpunct::utf8
