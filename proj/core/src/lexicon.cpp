#include "masknews/lexicon.hpp"

#include <fstream>

#include "masknews/errors.hpp"
#include "masknews/text.hpp"

namespace masknews {

namespace {

FrequencyLexicon build_lexicon(std::vector<std::string> entries,
                               const std::string& origin) {
  FrequencyLexicon lexicon;
  std::unordered_set<std::string> seen;
  for (std::string& word : entries) {
    std::string lowered = ascii_lower(word);
    if (lowered.empty()) {
      fail(ErrorCode::invalid_argument, origin + ": empty lexicon entry");
    }
    for (char c : lowered) {
      if (is_ascii_space(c)) {
        fail(ErrorCode::invalid_argument,
             origin + ": lexicon entry contains whitespace: '" + word + "'");
      }
    }
    if (!seen.insert(lowered).second) {
      fail(ErrorCode::duplicate_word,
           origin + ": duplicate lexicon word '" + lowered + "'");
    }
    lexicon.words.push_back(std::move(lowered));
  }
  if (lexicon.words.empty()) {
    fail(ErrorCode::empty_lexicon, origin + ": lexicon has no entries");
  }
  return lexicon;
}

}  // namespace

FrequencyLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::missing_file,
         "cannot open lexicon file: " + path.string());
  }
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // An optional tab-separated frequency count is ignored for ranking.
    const std::size_t tab = line.find('\t');
    std::string word =
        tab == std::string::npos ? line : line.substr(0, tab);
    if (std::string_view trimmed = trim(word); trimmed.empty()) {
      continue;  // blank line
    }
    entries.push_back(std::move(word));
  }
  return build_lexicon(std::move(entries), path.string());
}

FrequencyLexicon lexicon_from_words(const std::vector<std::string>& words) {
  return build_lexicon(words, "<memory>");
}

WordSet top_k(const FrequencyLexicon& lexicon, std::size_t k) {
  if (k == 0) {
    fail(ErrorCode::invalid_argument, "top_k requires k >= 1");
  }
  WordSet set;
  set.k = k;
  set.clamped = k > lexicon.size();
  const std::size_t take = set.clamped ? lexicon.size() : k;
  set.members.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    set.members.insert(lexicon.words[i]);
  }
  return set;
}

}  // namespace masknews
