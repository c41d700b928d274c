#include "masknews/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "masknews/errors.hpp"
#include "masknews/rng.hpp"

namespace masknews {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_rows(const LabeledDataset& dataset) {
  if (dataset.rows.empty()) {
    fail(ErrorCode::missing_label, "training set is empty");
  }
  std::array<std::size_t, 3> counts{};
  for (const LabeledRow& row : dataset.rows) {
    ++counts[orientation_index(row.label)];
    for (const auto& [idx, value] : row.features.pairs) {
      if (idx >= dataset.vocab_size) {
        fail(ErrorCode::invalid_argument,
             "feature index " + std::to_string(idx) +
                 " out of range for vocabulary of size " +
                 std::to_string(dataset.vocab_size));
      }
    }
  }
  for (Orientation o : kOrientations) {
    if (counts[orientation_index(o)] == 0) {
      fail(ErrorCode::missing_label,
           "no training rows labeled '" + std::string(to_string(o)) + "'");
    }
  }
}

Orientation argmax_label(const std::array<double, 3>& scores) {
  // Ties resolve to the earliest label: left < mainstream < right.
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return kOrientations[best];
}

double sparse_dot(const std::vector<double>& dense, const SparseVector& x) {
  double sum = 0.0;
  for (const auto& [idx, value] : x.pairs) sum += dense[idx] * value;
  return sum;
}

void check_indices(const SparseVector& x, std::size_t vocab_size) {
  for (const auto& [idx, value] : x.pairs) {
    if (idx >= vocab_size) {
      fail(ErrorCode::invalid_argument,
           "feature index " + std::to_string(idx) +
               " out of range for vocabulary of size " +
               std::to_string(vocab_size));
    }
  }
}

}  // namespace

NbModel train_nb(const LabeledDataset& dataset, double alpha) {
  if (alpha < 0.0) {
    fail(ErrorCode::invalid_argument, "smoothing alpha must be >= 0");
  }
  check_rows(dataset);

  NbModel model;
  model.alpha = alpha;
  model.vocab_size = dataset.vocab_size;

  std::array<std::size_t, 3> doc_counts{};
  std::array<std::vector<double>, 3> tf_sums;
  std::array<double, 3> tf_totals{};
  for (auto& sums : tf_sums) sums.assign(dataset.vocab_size, 0.0);

  for (const LabeledRow& row : dataset.rows) {
    const std::size_t li = orientation_index(row.label);
    ++doc_counts[li];
    for (const auto& [idx, value] : row.features.pairs) {
      tf_sums[li][idx] += value;
      tf_totals[li] += value;
    }
  }

  const double total_docs = static_cast<double>(dataset.rows.size());
  for (std::size_t li = 0; li < 3; ++li) {
    model.log_prior[li] =
        std::log(static_cast<double>(doc_counts[li])) - std::log(total_docs);
    const double denom =
        tf_totals[li] + alpha * static_cast<double>(dataset.vocab_size);
    auto& ll = model.log_likelihood[li];
    ll.assign(dataset.vocab_size, kNegInf);
    for (std::size_t f = 0; f < dataset.vocab_size; ++f) {
      const double num = tf_sums[li][f] + alpha;
      if (num > 0.0 && denom > 0.0) {
        ll[f] = std::log(num) - std::log(denom);
      }
    }
  }
  return model;
}

Prediction predict_nb(const NbModel& model, const SparseVector& x) {
  check_indices(x, model.vocab_size);
  Prediction pred;
  for (std::size_t li = 0; li < 3; ++li) {
    double score = model.log_prior[li];
    for (const auto& [idx, value] : x.pairs) {
      score += value * model.log_likelihood[li][idx];
    }
    pred.scores[li] = score;
  }
  pred.label = argmax_label(pred.scores);
  return pred;
}

SvmModel train_svm(const LabeledDataset& dataset,
                   const SvmHyperparams& hyper) {
  if (hyper.lambda <= 0.0) {
    fail(ErrorCode::invalid_argument, "lambda must be > 0");
  }
  if (hyper.schedule != "inv_t") {
    fail(ErrorCode::invalid_argument,
         "unknown learning-rate schedule '" + hyper.schedule + "'");
  }
  check_rows(dataset);

  SvmModel model;
  model.hyper = hyper;
  model.vocab_size = dataset.vocab_size;

  const std::size_t rows = dataset.rows.size();
  std::vector<double> row_norm_sq(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (const auto& [idx, value] : dataset.rows[i].features.pairs) {
      row_norm_sq[i] += value * value;
    }
  }
  const double ball_radius = 1.0 / std::sqrt(hyper.lambda);

  for (std::size_t li = 0; li < 3; ++li) {
    const Orientation positive = kOrientations[li];

    // Scaled representation w = s * v keeps the per-step shrink O(1) and
    // the margin update O(nnz); ||w||^2 is tracked incrementally so the
    // projection onto the 1/sqrt(lambda) ball is O(1) per step.
    std::vector<double> v(dataset.vocab_size, 0.0);
    double scale = 1.0;
    double bias = 0.0;
    double norm_sq = 0.0;

    // Every label sees the same visit order: the rng is re-seeded per label.
    Rng rng(mix_seed(hyper.seed, 0x73766d));
    std::vector<std::uint32_t> order(rows);
    std::iota(order.begin(), order.end(), 0u);

    std::uint64_t t = 0;
    for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
      rng.shuffle(order);
      for (const std::uint32_t i : order) {
        ++t;
        const LabeledRow& row = dataset.rows[i];
        const double y = row.label == positive ? 1.0 : -1.0;
        const double eta = 1.0 / (hyper.lambda * static_cast<double>(t));
        double wx = scale * sparse_dot(v, row.features);
        const double margin = y * (wx + bias);
        if (t > 1) {
          const double decay = 1.0 - 1.0 / static_cast<double>(t);
          scale *= decay;
          norm_sq *= decay * decay;
          wx *= decay;
        }
        if (margin < 1.0) {
          const double g = eta * y / scale;
          for (const auto& [idx, value] : row.features.pairs) {
            v[idx] += g * value;
          }
          norm_sq += 2.0 * eta * y * wx + eta * eta * row_norm_sq[i];
          bias += eta * y;  // bias is not regularized and not projected
        }
        if (norm_sq > ball_radius * ball_radius) {
          const double shrink = ball_radius / std::sqrt(norm_sq);
          scale *= shrink;
          norm_sq = ball_radius * ball_radius;
        }
      }
    }

    auto& w = model.weights[li];
    w.assign(dataset.vocab_size, 0.0);
    for (std::size_t f = 0; f < dataset.vocab_size; ++f) {
      w[f] = scale * v[f];
    }
    model.bias[li] = bias;
  }
  return model;
}

Prediction predict_svm(const SvmModel& model, const SparseVector& x) {
  check_indices(x, model.vocab_size);
  Prediction pred;
  for (std::size_t li = 0; li < 3; ++li) {
    pred.scores[li] = sparse_dot(model.weights[li], x) + model.bias[li];
  }
  pred.label = argmax_label(pred.scores);
  return pred;
}

namespace {

std::string display_ngram(std::string_view ngram) {
  std::string out(ngram);
  std::replace(out.begin(), out.end(), ' ', '_');
  return out;
}

FeatureReport report_from_scores(
    const std::array<std::vector<double>, 3>& scores,
    const NgramVocabulary& vocab, std::size_t m) {
  FeatureReport report;
  const std::size_t take = std::min(m, vocab.size());
  for (std::size_t li = 0; li < 3; ++li) {
    std::vector<std::uint32_t> order(vocab.size());
    std::iota(order.begin(), order.end(), 0u);
    std::partial_sort(order.begin(), order.begin() + take, order.end(),
                      [&](std::uint32_t a, std::uint32_t b) {
                        if (scores[li][a] != scores[li][b]) {
                          return scores[li][a] > scores[li][b];
                        }
                        return a < b;
                      });
    auto& entries = report.per_label[li];
    entries.reserve(take);
    for (std::size_t r = 0; r < take; ++r) {
      entries.push_back(
          {display_ngram(vocab.ngrams[order[r]]), scores[li][order[r]]});
    }
  }
  return report;
}

}  // namespace

FeatureReport top_features(const SvmModel& model, const NgramVocabulary& vocab,
                           std::size_t m) {
  if (vocab.size() != model.vocab_size) {
    fail(ErrorCode::invalid_argument,
         "vocabulary size does not match the model");
  }
  return report_from_scores(model.weights, vocab, m);
}

FeatureReport top_features(const NbModel& model, const NgramVocabulary& vocab,
                           std::size_t m) {
  if (vocab.size() != model.vocab_size) {
    fail(ErrorCode::invalid_argument,
         "vocabulary size does not match the model");
  }
  // How much more likely a feature is under this label than under the
  // closest competitor.
  std::array<std::vector<double>, 3> scores;
  for (std::size_t li = 0; li < 3; ++li) {
    scores[li].resize(vocab.size());
    for (std::size_t f = 0; f < vocab.size(); ++f) {
      double best_other = kNegInf;
      for (std::size_t lj = 0; lj < 3; ++lj) {
        if (lj != li) {
          best_other = std::max(best_other, model.log_likelihood[lj][f]);
        }
      }
      const double own = model.log_likelihood[li][f];
      if (own == kNegInf) {
        scores[li][f] = kNegInf;
      } else if (best_other == kNegInf) {
        scores[li][f] = std::numeric_limits<double>::infinity();
      } else {
        scores[li][f] = own - best_other;
      }
    }
  }
  return report_from_scores(scores, vocab, m);
}

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kModelFormatVersion = 1;

// Entries equal to `fill` are omitted and restored on load; -inf values are
// encoded as null (JSON has no infinities).
ordered_json sparse_weights_json(const std::vector<double>& dense,
                                 double fill) {
  ordered_json pairs = ordered_json::array();
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] == fill) continue;
    pairs.push_back(ordered_json::array(
        {i, std::isfinite(dense[i]) ? ordered_json(dense[i])
                                    : ordered_json(nullptr)}));
  }
  return pairs;
}

std::vector<double> dense_from_sparse_json(const json& pairs,
                                           std::size_t size,
                                           double fill = 0.0) {
  std::vector<double> dense(size, fill);
  for (const auto& pair : pairs) {
    const auto idx = pair.at(0).get<std::size_t>();
    if (idx >= size) {
      fail(ErrorCode::malformed_record, "model weight index out of range");
    }
    dense[idx] = pair.at(1).is_null() ? kNegInf : pair.at(1).get<double>();
  }
  return dense;
}

void write_json_file(const ordered_json& doc,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    fail(ErrorCode::missing_file,
         "cannot open model file for writing: " + path.string());
  }
  out << doc.dump(2) << '\n';
}

json read_model_file(const std::filesystem::path& path,
                     const char* expected_type) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::missing_file, "cannot open model file: " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(ErrorCode::malformed_record,
         path.string() + ": invalid model JSON: " + e.what());
  }
  if (doc.value("format", "") != "masknews-model" ||
      doc.value("version", 0) != kModelFormatVersion) {
    fail(ErrorCode::malformed_record,
         path.string() + ": not a masknews model file (version " +
             std::to_string(kModelFormatVersion) + ")");
  }
  if (doc.value("type", "") != expected_type) {
    fail(ErrorCode::malformed_record,
         path.string() + ": expected model type '" + expected_type + "'");
  }
  return doc;
}

ordered_json model_header(const char* type, std::size_t vocab_size) {
  ordered_json doc;
  doc["format"] = "masknews-model";
  doc["version"] = kModelFormatVersion;
  doc["type"] = type;
  doc["labels"] = {"left", "mainstream", "right"};
  doc["vocab_size"] = vocab_size;
  return doc;
}

}  // namespace

void save_model(const NbModel& model, const std::filesystem::path& path) {
  ordered_json doc = model_header("nb", model.vocab_size);
  doc["alpha"] = model.alpha;
  doc["log_prior"] = model.log_prior;
  ordered_json per_label = ordered_json::array();
  for (const auto& ll : model.log_likelihood) {
    per_label.push_back(sparse_weights_json(ll, kNegInf));
  }
  doc["log_likelihood"] = std::move(per_label);
  write_json_file(doc, path);
}

void save_model(const SvmModel& model, const std::filesystem::path& path) {
  ordered_json doc = model_header("svm", model.vocab_size);
  doc["hyper"] = {{"lambda", model.hyper.lambda},
                  {"epochs", model.hyper.epochs},
                  {"schedule", model.hyper.schedule},
                  {"seed", model.hyper.seed}};
  ordered_json per_label = ordered_json::array();
  for (std::size_t li = 0; li < 3; ++li) {
    ordered_json entry;
    entry["bias"] = model.bias[li];
    entry["w"] = sparse_weights_json(model.weights[li], 0.0);
    per_label.push_back(std::move(entry));
  }
  doc["weights"] = std::move(per_label);
  write_json_file(doc, path);
}

NbModel load_nb_model(const std::filesystem::path& path) {
  const json doc = read_model_file(path, "nb");
  NbModel model;
  try {
    model.vocab_size = doc.at("vocab_size").get<std::size_t>();
    model.alpha = doc.at("alpha").get<double>();
    const auto& priors = doc.at("log_prior");
    const auto& ll = doc.at("log_likelihood");
    for (std::size_t li = 0; li < 3; ++li) {
      model.log_prior[li] = priors.at(li).get<double>();
      // Absent indices are log(0) only when alpha is zero; otherwise every
      // stored likelihood is finite and present.
      model.log_likelihood[li] =
          dense_from_sparse_json(ll.at(li), model.vocab_size, kNegInf);
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::malformed_record,
         path.string() + ": malformed nb model: " + e.what());
  }
  return model;
}

SvmModel load_svm_model(const std::filesystem::path& path) {
  const json doc = read_model_file(path, "svm");
  SvmModel model;
  try {
    model.vocab_size = doc.at("vocab_size").get<std::size_t>();
    const auto& hyper = doc.at("hyper");
    model.hyper.lambda = hyper.at("lambda").get<double>();
    model.hyper.epochs = hyper.at("epochs").get<std::size_t>();
    model.hyper.schedule = hyper.at("schedule").get<std::string>();
    model.hyper.seed = hyper.at("seed").get<std::uint64_t>();
    const auto& weights = doc.at("weights");
    for (std::size_t li = 0; li < 3; ++li) {
      model.bias[li] = weights.at(li).at("bias").get<double>();
      model.weights[li] =
          dense_from_sparse_json(weights.at(li).at("w"), model.vocab_size);
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::malformed_record,
         path.string() + ": malformed svm model: " + e.what());
  }
  return model;
}

}  // namespace masknews
