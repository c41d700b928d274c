#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "masknews/corpus.hpp"
#include "masknews/features.hpp"

namespace masknews {

// Multinomial Naive Bayes with Laplace smoothing over tf vectors.
struct NbModel {
  std::array<double, 3> log_prior{};
  std::array<std::vector<double>, 3> log_likelihood;  // [label][feature]
  double alpha = 1.0;
  std::size_t vocab_size = 0;
};

struct SvmHyperparams {
  double lambda = 1e-4;
  std::size_t epochs = 20;
  std::string schedule = "inv_t";  // step 1/(lambda*t)
  std::uint64_t seed = 0;
};

// One-vs-rest linear SVM trained by regularized stochastic subgradient
// descent on the hinge loss.
struct SvmModel {
  std::array<std::vector<double>, 3> weights;  // dense, length = vocab size
  std::array<double, 3> bias{};
  SvmHyperparams hyper;
  std::size_t vocab_size = 0;
};

struct Prediction {
  Orientation label = Orientation::left;
  std::array<double, 3> scores{};  // log posteriors (NB) or margins (SVM)
};

NbModel train_nb(const LabeledDataset& dataset, double alpha = 1.0);
Prediction predict_nb(const NbModel& model, const SparseVector& x);

SvmModel train_svm(const LabeledDataset& dataset,
                   const SvmHyperparams& hyper = {});
Prediction predict_svm(const SvmModel& model, const SparseVector& x);

// Per-label ranked feature lists; spaces in the n-gram are displayed as
// underscores.
struct FeatureReport {
  struct Entry {
    std::string display;
    double weight = 0.0;
  };
  std::array<std::vector<Entry>, 3> per_label;
};

FeatureReport top_features(const SvmModel& model, const NgramVocabulary& vocab,
                           std::size_t m);
FeatureReport top_features(const NbModel& model, const NgramVocabulary& vocab,
                           std::size_t m);

// Versioned JSON serialization; a round trip preserves predictions exactly.
void save_model(const NbModel& model, const std::filesystem::path& path);
void save_model(const SvmModel& model, const std::filesystem::path& path);
NbModel load_nb_model(const std::filesystem::path& path);
SvmModel load_svm_model(const std::filesystem::path& path);

}  // namespace masknews
