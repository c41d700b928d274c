#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "masknews/corpus.hpp"
#include "masknews/features.hpp"
#include "masknews/lexicon.hpp"
#include "masknews/masking.hpp"
#include "masknews/models.hpp"

namespace masknews {

// Three folds; each fold holds exactly one test publisher per orientation.
struct FoldPlan {
  struct Fold {
    std::array<std::string, 3> publisher_by_orientation;

    const std::string& publisher(Orientation o) const {
      return publisher_by_orientation[orientation_index(o)];
    }
  };
  std::array<Fold, 3> folds;
};

// Default plan: publishers sorted alphabetically within each orientation,
// the i-th of each orientation assigned to fold i. Requires exactly three
// publishers per orientation.
FoldPlan make_publisher_folds(const Corpus& corpus);

// Checks an explicit plan: three folds, one publisher per orientation per
// fold, no publisher reused, every corpus publisher covered, and each slot
// matching the publisher's orientation in the corpus.
void validate_fold_plan(const Corpus& corpus, const FoldPlan& plan);

// JSON file: {"folds": [{"left": ..., "mainstream": ..., "right": ...} x3]}
FoldPlan load_fold_plan(const std::filesystem::path& path);

struct EvalReport {
  std::array<std::array<std::uint64_t, 3>, 3> confusion{};  // [gold][pred]
  std::array<double, 3> precision{};
  std::array<double, 3> recall{};
  std::array<double, 3> f1{};
  double accuracy = 0.0;
  double macro_f1 = 0.0;
};

EvalReport evaluate(std::span<const Orientation> gold,
                    std::span<const Orientation> predicted);

enum class ClassifierKind { nb, svm };

std::string_view to_string(ClassifierKind k) noexcept;
std::optional<ClassifierKind> classifier_from_string(std::string_view s) noexcept;

struct ExperimentConfig {
  MaskMode mode = MaskMode::topic;
  std::size_t k = 500;
  std::size_t n = 5;
  ClassifierKind classifier = ClassifierKind::svm;
  PruningConfig pruning;
  bool oversample = true;
  bool l2_normalize = false;
  std::uint64_t seed = 0;
  double nb_alpha = 1.0;
  SvmHyperparams svm;           // per-fold seeds are derived from `seed`
  std::size_t feature_top_m = 15;
  bool features_all_folds = false;
};

// Balances the training set by duplicating seeded random picks of each
// minority label until all label counts match the majority. Originals are
// always retained and come first; duplicates are appended in label order.
LabeledDataset oversample(const LabeledDataset& dataset, std::uint64_t seed);

// Everything needed to train and score one fold; exposed so the leakage
// and hygiene checks can inspect exactly what an experiment sees.
struct FoldData {
  NgramVocabulary vocab;  // built from this fold's training texts only
  LabeledDataset train;
  LabeledDataset test;
  std::vector<Orientation> test_gold;
};

FoldData prepare_fold(const Corpus& masked_corpus, const FoldPlan& plan,
                      std::size_t fold_index, const ExperimentConfig& config);

struct FoldDiagnostics {
  std::size_t vocab_size = 0;
  std::size_t train_rows = 0;
  std::size_t train_rows_after_oversample = 0;
  std::size_t test_rows = 0;
};

struct ExperimentResult {
  std::vector<EvalReport> per_fold;
  EvalReport aggregate;  // pooled over all folds' test predictions
  FeatureReport features;  // from the final fold's model
  std::vector<FeatureReport> per_fold_features;  // when features_all_folds
  std::vector<Orientation> pooled_gold;
  std::vector<Orientation> pooled_predicted;
  std::vector<FoldDiagnostics> diagnostics;
};

ExperimentResult run_experiment(const Corpus& corpus,
                                const FrequencyLexicon& lexicon,
                                const ExperimentConfig& config,
                                const std::optional<FoldPlan>& plan = {});

struct SweepRow {
  MaskMode mode = MaskMode::topic;
  std::size_t k = 0;
  std::size_t n = 0;
  ClassifierKind classifier = ClassifierKind::svm;
  double mean_macro_f1 = 0.0;  // arithmetic mean of the per-fold values
  std::array<double, 3> per_fold_macro_f1{};
};

std::vector<SweepRow> sweep(const Corpus& corpus,
                            const FrequencyLexicon& lexicon,
                            std::span<const ExperimentConfig> grid);

// CSV: header mode,k,n,classifier,fold,macro_f1; one row per fold plus an
// aggregate row with fold=mean; macro F1 printed with 6 decimal places.
void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out);

// JSON report with config echo, seed, per-fold and pooled metrics,
// diagnostics and the feature report.
std::string experiment_report_json(const ExperimentResult& result,
                                   const ExperimentConfig& config);

std::string experiment_config_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const std::string& json_text);

}  // namespace masknews
