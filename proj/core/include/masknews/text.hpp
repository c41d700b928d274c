#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace masknews {

constexpr bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

constexpr bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

constexpr bool is_ascii_alnum(char c) {
  return is_ascii_alpha(c) || is_ascii_digit(c);
}

constexpr bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string ascii_lower(std::string_view s);

// Strips leading and trailing ASCII whitespace.
std::string_view trim(std::string_view s);

bool is_blank(std::string_view s);

// Byte offset of every UTF-8 code point start plus one past-the-end sentinel.
// Bytes that do not form a valid sequence count as single code points.
std::vector<std::size_t> utf8_boundaries(std::string_view s);

std::size_t count_code_points(std::string_view s);

}  // namespace masknews
