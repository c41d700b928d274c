#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "masknews/hashing.hpp"

namespace masknews {

// Ranked word list, rank 1 = most frequent. Entries are lowercase.
struct FrequencyLexicon {
  std::vector<std::string> words;

  std::size_t size() const noexcept { return words.size(); }
};

// The top-k prefix of a lexicon as a membership set.
struct WordSet {
  std::unordered_set<std::string, TransparentStringHash, std::equal_to<>>
      members;
  std::size_t k = 0;      // requested prefix length
  bool clamped = false;   // k exceeded the lexicon size

  bool contains(std::string_view lowered_word) const {
    return members.find(lowered_word) != members.end();
  }
};

// One word per line, most frequent first; an optional tab-separated
// frequency count per line is ignored. Entries are lowercased on load.
FrequencyLexicon load_lexicon(const std::filesystem::path& path);

// Builds a lexicon from an in-memory ranked list, applying the same
// lowercasing and validation as load_lexicon.
FrequencyLexicon lexicon_from_words(const std::vector<std::string>& words);

WordSet top_k(const FrequencyLexicon& lexicon, std::size_t k);

}  // namespace masknews
