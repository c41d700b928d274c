#include "masknews/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "json.hpp"
#include "masknews/errors.hpp"
#include "masknews/rng.hpp"

namespace masknews {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Salts for deriving independent random streams from (config.seed, fold).
constexpr std::uint64_t kOversampleSalt = 0x100;
constexpr std::uint64_t kTrainSalt = 0x200;

std::map<std::string, Orientation> publisher_orientations(
    const Corpus& corpus) {
  std::map<std::string, Orientation> result;
  for (const Article& article : corpus.articles) {
    auto [it, inserted] =
        result.emplace(article.publisher, article.orientation);
    if (!inserted && it->second != article.orientation) {
      fail(ErrorCode::unbalanced_publishers,
           "publisher '" + article.publisher +
               "' has articles with multiple orientations");
    }
  }
  return result;
}

}  // namespace

std::string_view to_string(ClassifierKind k) noexcept {
  return k == ClassifierKind::nb ? "nb" : "svm";
}

std::optional<ClassifierKind> classifier_from_string(
    std::string_view s) noexcept {
  if (s == "nb") return ClassifierKind::nb;
  if (s == "svm") return ClassifierKind::svm;
  return std::nullopt;
}

FoldPlan make_publisher_folds(const Corpus& corpus) {
  const auto orientations = publisher_orientations(corpus);
  std::array<std::vector<std::string>, 3> by_orientation;
  for (const auto& [publisher, orientation] : orientations) {
    by_orientation[orientation_index(orientation)].push_back(publisher);
  }
  for (Orientation o : kOrientations) {
    auto& publishers = by_orientation[orientation_index(o)];
    std::sort(publishers.begin(), publishers.end());
    if (publishers.size() != 3) {
      fail(ErrorCode::unbalanced_publishers,
           "default fold plan needs exactly 3 publishers per orientation; '" +
               std::string(to_string(o)) + "' has " +
               std::to_string(publishers.size()));
    }
  }
  FoldPlan plan;
  for (std::size_t fold = 0; fold < 3; ++fold) {
    for (Orientation o : kOrientations) {
      plan.folds[fold].publisher_by_orientation[orientation_index(o)] =
          by_orientation[orientation_index(o)][fold];
    }
  }
  return plan;
}

void validate_fold_plan(const Corpus& corpus, const FoldPlan& plan) {
  const auto orientations = publisher_orientations(corpus);
  std::set<std::string> assigned;
  for (std::size_t fold = 0; fold < 3; ++fold) {
    for (Orientation o : kOrientations) {
      const std::string& publisher = plan.folds[fold].publisher(o);
      if (publisher.empty()) {
        fail(ErrorCode::invalid_plan,
             "fold " + std::to_string(fold) + " is missing a publisher for '" +
                 std::string(to_string(o)) + "'");
      }
      auto it = orientations.find(publisher);
      if (it == orientations.end()) {
        fail(ErrorCode::invalid_plan,
             "fold plan names unknown publisher '" + publisher + "'");
      }
      if (it->second != o) {
        fail(ErrorCode::invalid_plan,
             "publisher '" + publisher + "' is labeled '" +
                 std::string(to_string(it->second)) +
                 "' in the corpus but assigned to the '" +
                 std::string(to_string(o)) + "' slot");
      }
      if (!assigned.insert(publisher).second) {
        fail(ErrorCode::invalid_plan,
             "publisher '" + publisher + "' appears in two folds");
      }
    }
  }
  for (const auto& [publisher, orientation] : orientations) {
    if (!assigned.contains(publisher)) {
      fail(ErrorCode::invalid_plan,
           "publisher '" + publisher + "' is not assigned to any fold");
    }
  }
}

FoldPlan load_fold_plan(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::missing_file,
         "cannot open fold-plan file: " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_plan,
         path.string() + ": invalid JSON: " + e.what());
  }
  if (!doc.contains("folds") || !doc["folds"].is_array() ||
      doc["folds"].size() != 3) {
    fail(ErrorCode::invalid_plan,
         path.string() + ": expected a 'folds' array of exactly 3 entries");
  }
  FoldPlan plan;
  for (std::size_t fold = 0; fold < 3; ++fold) {
    const json& entry = doc["folds"][fold];
    for (Orientation o : kOrientations) {
      const std::string key(to_string(o));
      if (!entry.contains(key) || !entry[key].is_string()) {
        fail(ErrorCode::invalid_plan,
             path.string() + ": fold " + std::to_string(fold) +
                 " is missing a string field '" + key + "'");
      }
      plan.folds[fold].publisher_by_orientation[orientation_index(o)] =
          entry[key].get<std::string>();
    }
  }
  return plan;
}

EvalReport evaluate(std::span<const Orientation> gold,
                    std::span<const Orientation> predicted) {
  if (gold.size() != predicted.size()) {
    fail(ErrorCode::length_mismatch,
         "gold and predicted label sequences differ in length (" +
             std::to_string(gold.size()) + " vs " +
             std::to_string(predicted.size()) + ")");
  }
  if (gold.empty()) {
    fail(ErrorCode::length_mismatch, "label sequences are empty");
  }

  EvalReport report;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++report.confusion[orientation_index(gold[i])]
                      [orientation_index(predicted[i])];
  }

  std::uint64_t correct = 0;
  for (std::size_t li = 0; li < 3; ++li) {
    const std::uint64_t tp = report.confusion[li][li];
    correct += tp;
    std::uint64_t gold_total = 0;
    std::uint64_t predicted_total = 0;
    for (std::size_t lj = 0; lj < 3; ++lj) {
      gold_total += report.confusion[li][lj];
      predicted_total += report.confusion[lj][li];
    }
    report.precision[li] =
        predicted_total > 0
            ? static_cast<double>(tp) / static_cast<double>(predicted_total)
            : 0.0;
    report.recall[li] =
        gold_total > 0
            ? static_cast<double>(tp) / static_cast<double>(gold_total)
            : 0.0;
    const double pr = report.precision[li] + report.recall[li];
    report.f1[li] =
        pr > 0.0 ? 2.0 * report.precision[li] * report.recall[li] / pr : 0.0;
  }
  report.accuracy =
      static_cast<double>(correct) / static_cast<double>(gold.size());
  report.macro_f1 = (report.f1[0] + report.f1[1] + report.f1[2]) / 3.0;
  return report;
}

LabeledDataset oversample(const LabeledDataset& dataset, std::uint64_t seed) {
  std::array<std::vector<std::size_t>, 3> by_label;
  for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
    by_label[orientation_index(dataset.rows[i].label)].push_back(i);
  }
  std::size_t majority = 0;
  for (const auto& indices : by_label) {
    majority = std::max(majority, indices.size());
  }

  LabeledDataset balanced;
  balanced.vocab_size = dataset.vocab_size;
  balanced.rows = dataset.rows;  // originals always retained, in order
  Rng rng(seed);
  for (Orientation o : kOrientations) {
    const auto& indices = by_label[orientation_index(o)];
    if (indices.empty()) continue;  // nothing to duplicate from
    for (std::size_t need = majority - indices.size(); need > 0; --need) {
      const std::size_t pick = indices[rng.below(indices.size())];
      balanced.rows.push_back(dataset.rows[pick]);
    }
  }
  return balanced;
}

FoldData prepare_fold(const Corpus& masked_corpus, const FoldPlan& plan,
                      std::size_t fold_index, const ExperimentConfig& config) {
  if (fold_index >= 3) {
    fail(ErrorCode::invalid_argument, "fold index must be 0, 1 or 2");
  }
  const FoldPlan::Fold& fold = plan.folds[fold_index];
  auto is_test_publisher = [&](const std::string& publisher) {
    for (const std::string& test : fold.publisher_by_orientation) {
      if (publisher == test) return true;
    }
    return false;
  };

  std::vector<std::string_view> train_texts;
  train_texts.reserve(masked_corpus.size());
  for (const Article& article : masked_corpus.articles) {
    if (!is_test_publisher(article.publisher)) {
      train_texts.push_back(article.text);
    }
  }

  FoldData data;
  data.vocab = build_vocabulary(
      std::span<const std::string_view>(train_texts), config.n,
      config.pruning);
  data.train.vocab_size = data.vocab.size();
  data.test.vocab_size = data.vocab.size();

  for (const Article& article : masked_corpus.articles) {
    LabeledRow row{vectorize(article.text, data.vocab, config.l2_normalize),
                   article.orientation, article.publisher};
    if (is_test_publisher(article.publisher)) {
      data.test.rows.push_back(std::move(row));
      data.test_gold.push_back(article.orientation);
    } else {
      data.train.rows.push_back(std::move(row));
    }
  }
  return data;
}

ExperimentResult run_experiment(const Corpus& corpus,
                                const FrequencyLexicon& lexicon,
                                const ExperimentConfig& config,
                                const std::optional<FoldPlan>& plan) {
  if (config.k == 0 || config.n == 0) {
    fail(ErrorCode::invalid_argument, "k and n must be >= 1");
  }

  FoldPlan folds;
  if (plan) {
    validate_fold_plan(corpus, *plan);
    folds = *plan;
  } else {
    folds = make_publisher_folds(corpus);
  }

  const WordSet wordset = top_k(lexicon, config.k);
  const Corpus masked = mask_corpus(corpus, wordset, config.mode);

  ExperimentResult result;
  for (std::size_t fold = 0; fold < 3; ++fold) {
    FoldData data = prepare_fold(masked, folds, fold, config);

    FoldDiagnostics diag;
    diag.vocab_size = data.vocab.size();
    diag.train_rows = data.train.rows.size();
    diag.test_rows = data.test.rows.size();

    LabeledDataset balanced;
    const LabeledDataset* train = &data.train;
    if (config.oversample) {
      balanced =
          oversample(data.train, mix_seed(config.seed, kOversampleSalt + fold));
      train = &balanced;
    }
    diag.train_rows_after_oversample = train->rows.size();

    std::vector<Orientation> predicted;
    predicted.reserve(data.test.rows.size());
    FeatureReport features;
    if (config.classifier == ClassifierKind::svm) {
      SvmHyperparams hyper = config.svm;
      hyper.seed = mix_seed(config.seed, kTrainSalt + fold);
      const SvmModel model = train_svm(*train, hyper);
      for (const LabeledRow& row : data.test.rows) {
        predicted.push_back(predict_svm(model, row.features).label);
      }
      features = top_features(model, data.vocab, config.feature_top_m);
    } else {
      const NbModel model = train_nb(*train, config.nb_alpha);
      for (const LabeledRow& row : data.test.rows) {
        predicted.push_back(predict_nb(model, row.features).label);
      }
      features = top_features(model, data.vocab, config.feature_top_m);
    }

    result.per_fold.push_back(evaluate(data.test_gold, predicted));
    result.pooled_gold.insert(result.pooled_gold.end(),
                              data.test_gold.begin(), data.test_gold.end());
    result.pooled_predicted.insert(result.pooled_predicted.end(),
                                   predicted.begin(), predicted.end());
    result.diagnostics.push_back(diag);
    if (config.features_all_folds) {
      result.per_fold_features.push_back(features);
    }
    if (fold == 2) {
      result.features = std::move(features);
    }
  }

  result.aggregate = evaluate(result.pooled_gold, result.pooled_predicted);
  return result;
}

std::vector<SweepRow> sweep(const Corpus& corpus,
                            const FrequencyLexicon& lexicon,
                            std::span<const ExperimentConfig> grid) {
  if (grid.empty()) {
    fail(ErrorCode::invalid_argument, "sweep grid is empty");
  }
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const ExperimentConfig& config : grid) {
    const ExperimentResult result = run_experiment(corpus, lexicon, config);
    SweepRow row;
    row.mode = config.mode;
    row.k = config.k;
    row.n = config.n;
    row.classifier = config.classifier;
    double sum = 0.0;
    for (std::size_t fold = 0; fold < 3; ++fold) {
      row.per_fold_macro_f1[fold] = result.per_fold[fold].macro_f1;
      sum += result.per_fold[fold].macro_f1;
    }
    row.mean_macro_f1 = sum / 3.0;
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string format_f1(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

}  // namespace

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
  out << "mode,k,n,classifier,fold,macro_f1\n";
  for (const SweepRow& row : rows) {
    const std::string prefix = std::string(to_string(row.mode)) + "," +
                               std::to_string(row.k) + "," +
                               std::to_string(row.n) + "," +
                               std::string(to_string(row.classifier)) + ",";
    for (std::size_t fold = 0; fold < 3; ++fold) {
      out << prefix << fold << ',' << format_f1(row.per_fold_macro_f1[fold])
          << '\n';
    }
    out << prefix << "mean," << format_f1(row.mean_macro_f1) << '\n';
  }
}

namespace {

ordered_json eval_report_to_json(const EvalReport& report) {
  ordered_json doc;
  doc["labels"] = {"left", "mainstream", "right"};
  doc["confusion"] = report.confusion;
  ordered_json per_label;
  for (Orientation o : kOrientations) {
    const std::size_t li = orientation_index(o);
    per_label[std::string(to_string(o))] = {{"precision",
                                             report.precision[li]},
                                            {"recall", report.recall[li]},
                                            {"f1", report.f1[li]}};
  }
  doc["per_label"] = std::move(per_label);
  doc["accuracy"] = report.accuracy;
  doc["macro_f1"] = report.macro_f1;
  return doc;
}

ordered_json feature_report_to_json(const FeatureReport& report) {
  ordered_json doc;
  for (Orientation o : kOrientations) {
    ordered_json entries = ordered_json::array();
    for (const FeatureReport::Entry& entry :
         report.per_label[orientation_index(o)]) {
      entries.push_back({{"ngram", entry.display}, {"weight", entry.weight}});
    }
    doc[std::string(to_string(o))] = std::move(entries);
  }
  return doc;
}

ordered_json config_to_json(const ExperimentConfig& config) {
  ordered_json doc;
  doc["mode"] = to_string(config.mode);
  doc["k"] = config.k;
  doc["n"] = config.n;
  doc["classifier"] = to_string(config.classifier);
  ordered_json pruning;
  pruning["min_total"] = config.pruning.min_total
                             ? ordered_json(*config.pruning.min_total)
                             : ordered_json(nullptr);
  pruning["max_total"] = config.pruning.max_total
                             ? ordered_json(*config.pruning.max_total)
                             : ordered_json(nullptr);
  doc["pruning"] = std::move(pruning);
  doc["oversample"] = config.oversample;
  doc["l2_normalize"] = config.l2_normalize;
  doc["seed"] = config.seed;
  doc["nb_alpha"] = config.nb_alpha;
  doc["svm"] = {{"lambda", config.svm.lambda},
                {"epochs", config.svm.epochs},
                {"schedule", config.svm.schedule}};
  doc["feature_top_m"] = config.feature_top_m;
  doc["features_all_folds"] = config.features_all_folds;
  return doc;
}

}  // namespace

std::string experiment_report_json(const ExperimentResult& result,
                                   const ExperimentConfig& config) {
  ordered_json doc;
  doc["config"] = config_to_json(config);
  doc["seed"] = config.seed;
  ordered_json folds = ordered_json::array();
  for (std::size_t fold = 0; fold < result.per_fold.size(); ++fold) {
    ordered_json entry;
    entry["fold"] = fold;
    entry["vocab_size"] = result.diagnostics[fold].vocab_size;
    entry["train_rows"] = result.diagnostics[fold].train_rows;
    entry["train_rows_after_oversample"] =
        result.diagnostics[fold].train_rows_after_oversample;
    entry["test_rows"] = result.diagnostics[fold].test_rows;
    entry["report"] = eval_report_to_json(result.per_fold[fold]);
    if (fold < result.per_fold_features.size()) {
      entry["features"] = feature_report_to_json(result.per_fold_features[fold]);
    }
    folds.push_back(std::move(entry));
  }
  doc["folds"] = std::move(folds);
  doc["aggregate"] = eval_report_to_json(result.aggregate);
  doc["features"] = feature_report_to_json(result.features);
  return doc.dump(2) + "\n";
}

std::string experiment_config_json(const ExperimentConfig& config) {
  return config_to_json(config).dump(2) + "\n";
}

ExperimentConfig experiment_config_from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::malformed_record,
         std::string("invalid experiment config JSON: ") + e.what());
  }
  ExperimentConfig config;
  try {
    if (auto mode = mask_mode_from_string(doc.at("mode").get<std::string>())) {
      config.mode = *mode;
    } else {
      fail(ErrorCode::invalid_argument, "unknown mask mode in config");
    }
    config.k = doc.at("k").get<std::size_t>();
    config.n = doc.at("n").get<std::size_t>();
    if (auto classifier =
            classifier_from_string(doc.at("classifier").get<std::string>())) {
      config.classifier = *classifier;
    } else {
      fail(ErrorCode::invalid_argument, "unknown classifier in config");
    }
    const json& pruning = doc.at("pruning");
    if (!pruning.at("min_total").is_null()) {
      config.pruning.min_total = pruning.at("min_total").get<std::uint64_t>();
    }
    if (!pruning.at("max_total").is_null()) {
      config.pruning.max_total = pruning.at("max_total").get<std::uint64_t>();
    }
    config.oversample = doc.at("oversample").get<bool>();
    config.l2_normalize = doc.at("l2_normalize").get<bool>();
    config.seed = doc.at("seed").get<std::uint64_t>();
    config.nb_alpha = doc.at("nb_alpha").get<double>();
    config.svm.lambda = doc.at("svm").at("lambda").get<double>();
    config.svm.epochs = doc.at("svm").at("epochs").get<std::size_t>();
    config.svm.schedule = doc.at("svm").at("schedule").get<std::string>();
    config.feature_top_m = doc.at("feature_top_m").get<std::size_t>();
    config.features_all_folds = doc.at("features_all_folds").get<bool>();
  } catch (const json::exception& e) {
    fail(ErrorCode::malformed_record,
         std::string("malformed experiment config: ") + e.what());
  }
  return config;
}

}  // namespace masknews
