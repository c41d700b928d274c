#include "synthetic.hpp"

#include <array>
#include <unordered_set>

#include "masknews/masking.hpp"
#include "masknews/rng.hpp"
#include "masknews/text.hpp"

namespace masknews::testsupport {

namespace {

const std::vector<std::string>& function_words() {
  static const std::vector<std::string> words = {
      "the",    "of",      "and",   "a",    "to",   "in",    "is",
      "was",    "it",      "for",   "on",   "that", "with",  "he",
      "as",     "his",     "at",    "by",   "but",  "from",  "they",
      "she",    "or",      "an",    "were", "we",   "their", "been",
      "has",    "had",     "you",   "which","are",  "not",   "this",
      "her",    "him",     "all",   "so",   "if",   "will",  "would",
      "there",  "what",    "when",  "who",  "said", "out",   "about",
      "just",   "into",    "than",  "them", "some", "could", "after",
      "before", "between", "few",   "went"};
  return words;
}

// Disjoint content pools, one per orientation: trees, minerals, birds.
const std::array<std::vector<std::string>, 3>& content_words() {
  static const std::array<std::vector<std::string>, 3> pools = {{
      {"arbor",    "birch",    "cedar",    "willow",   "maple",
       "aspen",    "rowan",    "alder",    "linden",   "juniper",
       "hazel",    "spruce",   "poplar",   "chestnut", "sycamore",
       "magnolia", "cypress",  "laurel",   "hawthorn", "beech",
       "holly",    "acacia",   "walnut",   "sequoia",  "fir",
       "yew",      "olive",    "palm",     "bamboo",   "fern",
       "moss",     "clover",   "heather",  "ivy",      "reed",
       "sage",     "thyme",    "basil",    "sorrel",   "bracken"},
      {"copper",   "cobalt",   "nickel",   "quartz",   "granite",
       "basalt",   "marble",   "slate",    "gypsum",   "mica",
       "shale",    "flint",    "obsidian", "pumice",   "amber",
       "topaz",    "garnet",   "beryl",    "zircon",   "feldspar",
       "pyrite",   "galena",   "bauxite",  "magnetite","hematite",
       "borax",    "calcite",  "dolomite", "gneiss",   "tungsten",
       "titanium", "vanadium", "chromium", "platinum", "iridium",
       "osmium",   "rhodium",  "silica",   "zinc",     "talc"},
      {"falcon",   "heron",    "osprey",   "kestrel",  "plover",
       "curlew",   "gannet",   "petrel",   "fulmar",   "skua",
       "tern",     "guillemot","razorbill","puffin",   "cormorant",
       "bittern",  "egret",    "harrier",  "buzzard",  "goshawk",
       "merlin",   "peregrine","lapwing",  "dunlin",   "sanderling",
       "turnstone","whimbrel", "godwit",   "redshank", "greenshank",
       "snipe",    "woodcock", "nightjar", "swallow",  "starling",
       "wagtail",  "pipit",    "linnet",   "siskin",   "brambling"}}};
  return pools;
}

const std::array<std::array<std::string, 3>, 3>& publishers() {
  static const std::array<std::array<std::string, 3>, 3> names = {{
      {"alderledger", "ashpost", "aspenwire"},
      {"beaconnews", "birchherald", "bluffgazette"},
      {"cliffcourier", "cresttribune", "canyondaily"}}};
  return names;
}

std::string capitalize(std::string word) {
  if (!word.empty() && word[0] >= 'a' && word[0] <= 'z') {
    word[0] = static_cast<char>(word[0] - 'a' + 'A');
  }
  return word;
}

}  // namespace

Corpus make_synthetic_corpus(const SyntheticSpec& spec) {
  Rng rng(spec.seed);
  const auto& functions = function_words();
  const auto& pools = content_words();

  Corpus corpus;
  for (Orientation o : kOrientations) {
    const std::size_t oi = orientation_index(o);
    for (const std::string& publisher : publishers()[oi]) {
      for (std::size_t a = 0; a < spec.articles_per_publisher; ++a) {
        const std::size_t sentences =
            spec.min_sentences +
            rng.below(spec.max_sentences - spec.min_sentences + 1);
        std::string text;
        for (std::size_t s = 0; s < sentences; ++s) {
          const std::size_t tokens =
              spec.min_tokens +
              rng.below(spec.max_tokens - spec.min_tokens + 1);
          for (std::size_t t = 0; t < tokens; ++t) {
            std::string word =
                rng.chance(spec.function_word_percent)
                    ? functions[rng.below(functions.size())]
                    : pools[oi][rng.below(pools[oi].size())];
            if (t == 0) word = capitalize(word);
            if (t > 0) text += rng.chance(12) ? ", " : " ";
            text += word;
          }
          text += ". ";
        }
        if (!text.empty() && text.back() == ' ') text.pop_back();

        Article article;
        article.id = publisher + "-" + std::to_string(a);
        article.publisher = publisher;
        article.orientation = o;
        article.text = std::move(text);
        corpus.articles.push_back(std::move(article));
      }
    }
  }
  return corpus;
}

FrequencyLexicon synthetic_function_lexicon() {
  return lexicon_from_words(function_words());
}

FrequencyLexicon saturated_lexicon(const Corpus& corpus) {
  std::vector<std::string> words;
  std::unordered_set<std::string> seen;
  for (const Article& article : corpus.articles) {
    for (const TokenSpan& token : tokenize(article.text)) {
      if (token.kind != TokenKind::word) continue;
      std::string lowered = ascii_lower(token.surface);
      if (seen.insert(lowered).second) {
        words.push_back(std::move(lowered));
      }
    }
  }
  return lexicon_from_words(words);
}

}  // namespace masknews::testsupport
