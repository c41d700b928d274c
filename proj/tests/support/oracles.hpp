#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "masknews/corpus.hpp"
#include "masknews/features.hpp"

namespace masknews::testsupport {

// Tiny dense training instance for the generative-model oracle.
struct TinyInstance {
  std::size_t vocab = 0;
  std::vector<std::vector<double>> docs;   // docs x vocab, tf counts
  std::vector<Orientation> labels;
};

// Log posterior of each label for query tf vector x, computed term by term
// from prior and smoothed likelihood with long double arithmetic. Fully
// independent of the NbModel code path.
std::array<double, 3> nb_enumeration_oracle(const TinyInstance& instance,
                                            double alpha,
                                            std::span<const double> x);

// Macro F1 recomputed directly from the label sequences with per-label
// counting loops (no confusion matrix).
double macro_f1_bruteforce(std::span<const Orientation> gold,
                           std::span<const Orientation> predicted);

LabeledDataset dataset_from_instance(const TinyInstance& instance);
SparseVector sparse_from_dense(std::span<const double> dense);

}  // namespace masknews::testsupport
