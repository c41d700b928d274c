#include "masknews/text.hpp"

namespace masknews {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && is_ascii_space(s[begin])) ++begin;
  while (end > begin && is_ascii_space(s[end - 1])) --end;
  return s.substr(begin, end - begin);
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

namespace {

// Length of the UTF-8 sequence starting at s[i]; 1 for anything invalid.
std::size_t sequence_length(std::string_view s, std::size_t i) {
  const auto byte = static_cast<unsigned char>(s[i]);
  std::size_t len = 1;
  if (byte >= 0xc2 && byte <= 0xdf) {
    len = 2;
  } else if (byte >= 0xe0 && byte <= 0xef) {
    len = 3;
  } else if (byte >= 0xf0 && byte <= 0xf4) {
    len = 4;
  } else {
    return 1;
  }
  if (i + len > s.size()) return 1;
  for (std::size_t j = 1; j < len; ++j) {
    const auto cont = static_cast<unsigned char>(s[i + j]);
    if ((cont & 0xc0) != 0x80) return 1;
  }
  return len;
}

}  // namespace

std::vector<std::size_t> utf8_boundaries(std::string_view s) {
  std::vector<std::size_t> offsets;
  offsets.reserve(s.size() + 1);
  std::size_t i = 0;
  while (i < s.size()) {
    offsets.push_back(i);
    i += sequence_length(s, i);
  }
  offsets.push_back(s.size());
  return offsets;
}

std::size_t count_code_points(std::string_view s) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    i += sequence_length(s, i);
    ++count;
  }
  return count;
}

}  // namespace masknews
