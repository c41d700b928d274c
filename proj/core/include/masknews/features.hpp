#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "masknews/corpus.hpp"
#include "masknews/hashing.hpp"

namespace masknews {

// Total-frequency cutoffs applied when a vocabulary is built: keep an
// n-gram iff freq >= min_total (when set) and freq < max_total (when set).
struct PruningConfig {
  std::optional<std::uint64_t> min_total;
  std::optional<std::uint64_t> max_total;
};

using NgramCounts =
    std::unordered_map<std::string, std::uint64_t, TransparentStringHash,
                       std::equal_to<>>;

// Character n-grams over Unicode code points (not bytes), sliding across
// the whole text including spaces, punctuation and mask symbols. Texts
// shorter than n code points yield no n-grams.
NgramCounts extract_char_ngrams(std::string_view text, std::size_t n);

struct NgramVocabulary {
  std::size_t n = 0;
  std::vector<std::string> ngrams;          // by column index
  std::vector<std::uint64_t> total_freq;    // by column index
  std::unordered_map<std::string, std::uint32_t, TransparentStringHash,
                     std::equal_to<>>
      index;
  PruningConfig pruning;

  std::size_t size() const noexcept { return ngrams.size(); }
};

// Column indices are assigned by descending total training frequency, ties
// broken by lexicographic n-gram order. Must only ever see training texts.
NgramVocabulary build_vocabulary(std::span<const std::string_view> texts,
                                 std::size_t n, PruningConfig pruning = {});
NgramVocabulary build_vocabulary(const std::vector<std::string>& texts,
                                 std::size_t n, PruningConfig pruning = {});

struct SparseVector {
  // (column index, tf) sorted by strictly increasing index, tf > 0.
  std::vector<std::pair<std::uint32_t, double>> pairs;

  bool empty() const noexcept { return pairs.empty(); }
};

// Raw term-frequency counts of vocabulary n-grams; out-of-vocabulary
// n-grams are ignored. Optional L2 normalization of the resulting vector.
SparseVector vectorize(std::string_view text, const NgramVocabulary& vocab,
                       bool l2_normalize = false);

// TSV dump: ngram<TAB>index<TAB>total_freq, with backslash, tab, newline,
// carriage return and space escaped as \\ \t \n \r \s.
void dump_vocabulary(const NgramVocabulary& vocab, std::ostream& out);

struct LabeledRow {
  SparseVector features;
  Orientation label = Orientation::mainstream;
  std::string publisher;  // group id for fold hygiene
};

struct LabeledDataset {
  std::vector<LabeledRow> rows;
  std::size_t vocab_size = 0;
};

}  // namespace masknews
