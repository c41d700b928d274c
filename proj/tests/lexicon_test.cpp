#include "masknews/lexicon.hpp"

#include "doctest.h"
#include "masknews/errors.hpp"
#include "testutil.hpp"

using namespace masknews;
using masknews::testsupport::TempDir;

TEST_CASE("load_lexicon preserves file order as rank order") {
  TempDir tmp;
  const auto path = tmp.write("lex.txt", "the\nof\nand\n");
  const FrequencyLexicon lexicon = load_lexicon(path);
  REQUIRE(lexicon.size() == 3);
  CHECK(lexicon.words[0] == "the");
  CHECK(lexicon.words[1] == "of");
  CHECK(lexicon.words[2] == "and");
}

TEST_CASE("load_lexicon lowercases and rejects case-fold collisions") {
  TempDir tmp;
  const auto upper = tmp.write("u.txt", "The\nOf\n");
  const FrequencyLexicon lexicon = load_lexicon(upper);
  CHECK(lexicon.words[0] == "the");

  const auto collide = tmp.write("c.txt", "The\nthe\n");
  try {
    load_lexicon(collide);
    FAIL("expected DuplicateWord");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::duplicate_word);
  }
}

TEST_CASE("load_lexicon rejects empty files") {
  TempDir tmp;
  const auto empty = tmp.write("e.txt", "");
  try {
    load_lexicon(empty);
    FAIL("expected EmptyLexicon");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::empty_lexicon);
  }
  const auto blank = tmp.write("b.txt", "\n\n \n");
  CHECK_THROWS_AS(load_lexicon(blank), Error);
}

TEST_CASE("load_lexicon ignores tab-separated counts and CRLF") {
  TempDir tmp;
  const auto path = tmp.write("lex.txt", "the\t6187267\r\nof\t2941444\n");
  const FrequencyLexicon lexicon = load_lexicon(path);
  REQUIRE(lexicon.size() == 2);
  CHECK(lexicon.words[0] == "the");
  CHECK(lexicon.words[1] == "of");
}

TEST_CASE("load_lexicon missing file") {
  try {
    load_lexicon("/nonexistent/lexicon.txt");
    FAIL("expected MissingFile");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::missing_file);
  }
}

TEST_CASE("top_k takes the ranked prefix") {
  const FrequencyLexicon lexicon = lexicon_from_words({"the", "of", "and"});

  const WordSet two = top_k(lexicon, 2);
  CHECK(two.k == 2);
  CHECK(!two.clamped);
  CHECK(two.contains("the"));
  CHECK(two.contains("of"));
  CHECK(!two.contains("and"));

  const WordSet all = top_k(lexicon, 3);
  CHECK(all.members.size() == 3);
  CHECK(!all.clamped);

  const WordSet beyond = top_k(lexicon, 500);
  CHECK(beyond.members.size() == 3);
  CHECK(beyond.clamped);
  CHECK(beyond.k == 500);

  CHECK_THROWS_AS(top_k(lexicon, 0), Error);
}

TEST_CASE("top_k is monotone in k and pure") {
  std::vector<std::string> words;
  for (int i = 0; i < 40; ++i) words.push_back("w" + std::to_string(i));
  const FrequencyLexicon lexicon = lexicon_from_words(words);
  for (std::size_t k1 = 1; k1 < 40; k1 += 7) {
    for (std::size_t k2 = k1; k2 <= 40; k2 += 5) {
      const WordSet small = top_k(lexicon, k1);
      const WordSet large = top_k(lexicon, k2);
      for (const std::string& member : small.members) {
        CHECK(large.contains(member));
      }
    }
    const WordSet again = top_k(lexicon, k1);
    CHECK(again.members == top_k(lexicon, k1).members);
  }
}
