#include "masknews/features.hpp"

#include <algorithm>
#include <cmath>

#include "masknews/errors.hpp"
#include "masknews/text.hpp"

namespace masknews {

namespace {

void bump(NgramCounts& counts, std::string_view key, std::uint64_t delta) {
  auto it = counts.find(key);
  if (it == counts.end()) {
    counts.emplace(std::string(key), delta);
  } else {
    it->second += delta;
  }
}

void accumulate_ngrams(std::string_view text, std::size_t n,
                       NgramCounts& counts) {
  const std::vector<std::size_t> bounds = utf8_boundaries(text);
  const std::size_t code_points = bounds.size() - 1;
  if (code_points < n) return;
  for (std::size_t i = 0; i + n <= code_points; ++i) {
    bump(counts, text.substr(bounds[i], bounds[i + n] - bounds[i]), 1);
  }
}

void validate_pruning(const PruningConfig& pruning) {
  if (pruning.min_total && pruning.max_total &&
      !(*pruning.min_total < *pruning.max_total)) {
    fail(ErrorCode::invalid_argument,
         "pruning requires min_total < max_total");
  }
}

bool keep(const PruningConfig& pruning, std::uint64_t freq) {
  if (pruning.min_total && freq < *pruning.min_total) return false;
  if (pruning.max_total && freq >= *pruning.max_total) return false;
  return true;
}

std::string escape_ngram(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case ' ': out += "\\s"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

NgramCounts extract_char_ngrams(std::string_view text, std::size_t n) {
  if (n == 0) {
    fail(ErrorCode::invalid_argument, "n-gram length must be >= 1");
  }
  NgramCounts counts;
  accumulate_ngrams(text, n, counts);
  return counts;
}

NgramVocabulary build_vocabulary(std::span<const std::string_view> texts,
                                 std::size_t n, PruningConfig pruning) {
  if (n == 0) {
    fail(ErrorCode::invalid_argument, "n-gram length must be >= 1");
  }
  validate_pruning(pruning);

  NgramCounts totals;
  for (std::string_view text : texts) {
    accumulate_ngrams(text, n, totals);
  }

  std::vector<std::pair<const std::string*, std::uint64_t>> retained;
  retained.reserve(totals.size());
  for (const auto& [ngram, freq] : totals) {
    if (keep(pruning, freq)) retained.emplace_back(&ngram, freq);
  }
  if (retained.empty()) {
    fail(ErrorCode::empty_vocabulary,
         "vocabulary is empty after n-gram extraction and pruning (n=" +
             std::to_string(n) + ")");
  }

  std::sort(retained.begin(), retained.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return *a.first < *b.first;
            });

  NgramVocabulary vocab;
  vocab.n = n;
  vocab.pruning = pruning;
  vocab.ngrams.reserve(retained.size());
  vocab.total_freq.reserve(retained.size());
  vocab.index.reserve(retained.size());
  for (std::size_t i = 0; i < retained.size(); ++i) {
    vocab.ngrams.push_back(*retained[i].first);
    vocab.total_freq.push_back(retained[i].second);
    vocab.index.emplace(vocab.ngrams.back(), static_cast<std::uint32_t>(i));
  }
  return vocab;
}

NgramVocabulary build_vocabulary(const std::vector<std::string>& texts,
                                 std::size_t n, PruningConfig pruning) {
  std::vector<std::string_view> views(texts.begin(), texts.end());
  return build_vocabulary(std::span<const std::string_view>(views), n,
                          pruning);
}

SparseVector vectorize(std::string_view text, const NgramVocabulary& vocab,
                       bool l2_normalize) {
  const NgramCounts counts = extract_char_ngrams(text, vocab.n);
  SparseVector vec;
  vec.pairs.reserve(counts.size());
  for (const auto& [ngram, count] : counts) {
    auto it = vocab.index.find(ngram);
    if (it != vocab.index.end()) {
      vec.pairs.emplace_back(it->second, static_cast<double>(count));
    }
  }
  std::sort(vec.pairs.begin(), vec.pairs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (l2_normalize && !vec.pairs.empty()) {
    double norm_sq = 0.0;
    for (const auto& [idx, value] : vec.pairs) norm_sq += value * value;
    const double norm = std::sqrt(norm_sq);
    for (auto& [idx, value] : vec.pairs) value /= norm;
  }
  return vec;
}

void dump_vocabulary(const NgramVocabulary& vocab, std::ostream& out) {
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    out << escape_ngram(vocab.ngrams[i]) << '\t' << i << '\t'
        << vocab.total_freq[i] << '\n';
  }
}

}  // namespace masknews
