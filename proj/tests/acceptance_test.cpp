// Acceptance suite. Runs every release criterion at its pinned tolerance
// and prints one PASS/FAIL line per criterion. Criteria 5 and 6 need the
// real corpus and an English frequency list; point MASKNEWS_CORPUS and
// MASKNEWS_LEXICON at them to enable those runs, otherwise they SKIP.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "masknews/corpus.hpp"
#include "masknews/eval.hpp"
#include "masknews/lexicon.hpp"
#include "masknews/masking.hpp"
#include "properties.hpp"
#include "synthetic.hpp"

using namespace masknews;
using namespace masknews::testsupport;

namespace {

struct Skip {
  std::string reason;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw PropertyViolation(message);
}

std::string collapse_spaces(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == ' ' && !out.empty() && out.back() == ' ') continue;
    out.push_back(c);
  }
  return out;
}

std::vector<std::string> whitespace_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream stream(text);
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

// ---- criterion 1: masking fidelity on the reference sentence ----
void criterion_masking_fidelity() {
  const FrequencyLexicon lexicon = load_lexicon(MASKNEWS_FIXTURES_DIR
                                                "/en_top500.txt");
  require(lexicon.size() == 500, "fixture lexicon must have 500 entries");
  const WordSet w500 = top_k(lexicon, 500);

  const std::string original =
      "Officers went after Christopher Few after watching an argument "
      "between him and his girlfriend outside a bar just before the 2015 "
      "shooting";
  const std::string expected_style =
      "* went after * Few after * an * between him and his * * a * just "
      "before the # *";
  const std::string expected_topic =
      "Officers * * Christopher * * watching * argument * * * * girlfriend "
      "outside * bar * * * 2015 shooting";

  const std::string style = mask_text(original, w500, MaskMode::style).text;
  const std::string topic = mask_text(original, w500, MaskMode::topic).text;

  // token-by-token, and byte equality up to runs of internal spaces
  require(whitespace_tokens(style) == whitespace_tokens(expected_style),
          "style-mode token sequence mismatch:\n  got      " + style +
              "\n  expected " + expected_style);
  require(whitespace_tokens(topic) == whitespace_tokens(expected_topic),
          "topic-mode token sequence mismatch:\n  got      " + topic +
              "\n  expected " + expected_topic);
  require(collapse_spaces(style) == collapse_spaces(expected_style),
          "style-mode text mismatch beyond spacing");
  require(collapse_spaces(topic) == collapse_spaces(expected_topic),
          "topic-mode text mismatch beyond spacing");
}

// ---- criterion 2: property suite, no external data ----
void criterion_property_suite() {
  verify_masking_properties(909, 300);
  verify_vocabulary_no_leakage(910);
  verify_fold_disjointness(911);
  verify_oversampling(912, 100);
  verify_macro_f1_bruteforce(913, 1000, 1e-12);
  verify_nb_oracle(914, 50, 1e-9);
}

struct SyntheticScores {
  double topic;
  double style;
  double identity;
};

SyntheticScores synthetic_scores() {
  SyntheticSpec spec;
  spec.seed = 1234;
  spec.articles_per_publisher = 24;
  const Corpus corpus = make_synthetic_corpus(spec);
  const FrequencyLexicon lexicon = synthetic_function_lexicon();

  ExperimentConfig config;
  config.k = lexicon.size();
  config.n = 4;
  config.classifier = ClassifierKind::svm;
  config.seed = 99;

  SyntheticScores scores{};
  config.mode = MaskMode::topic;
  scores.topic = run_experiment(corpus, lexicon, config).aggregate.macro_f1;
  config.mode = MaskMode::style;
  scores.style = run_experiment(corpus, lexicon, config).aggregate.macro_f1;
  config.mode = MaskMode::identity;
  scores.identity =
      run_experiment(corpus, lexicon, config).aggregate.macro_f1;
  return scores;
}

// ---- criterion 3: synthetic end-to-end separation ----
void criterion_synthetic_separation() {
  const SyntheticScores scores = synthetic_scores();
  std::ostringstream detail;
  detail << "topic=" << scores.topic << " style=" << scores.style
         << " identity=" << scores.identity;
  require(scores.topic >= scores.style + 0.15,
          "topic must beat style by >= 0.15: " + detail.str());
  require(scores.identity >= scores.topic - 0.05,
          "identity must stay within 0.05 of topic: " + detail.str());
  std::cout << "    (" << detail.str() << ")\n";
}

// ---- criterion 4: saturation equivalence ----
void criterion_saturation_equivalence() {
  SyntheticSpec spec;
  spec.seed = 5678;
  spec.articles_per_publisher = 12;
  const Corpus corpus = make_synthetic_corpus(spec);
  const FrequencyLexicon lexicon = saturated_lexicon(corpus);

  ExperimentConfig style;
  style.mode = MaskMode::style;
  style.k = lexicon.size();
  style.n = 4;
  style.seed = 17;
  ExperimentConfig identity = style;
  identity.mode = MaskMode::identity;

  const ExperimentResult a = run_experiment(corpus, lexicon, style);
  const ExperimentResult b = run_experiment(corpus, lexicon, identity);

  require(a.pooled_predicted == b.pooled_predicted,
          "prediction vectors differ between saturated style and identity");
  ExperimentConfig b_echoing_style = identity;
  b_echoing_style.mode = MaskMode::style;
  require(experiment_report_json(a, style) ==
              experiment_report_json(b, b_echoing_style),
          "reports differ between saturated style and identity");
}

// ---- criteria 5 and 6: the real corpus, when supplied ----
struct RealData {
  Corpus cleaned;
  FrequencyLexicon lexicon;
};

RealData load_real_data() {
  const char* corpus_path = std::getenv("MASKNEWS_CORPUS");
  const char* lexicon_path = std::getenv("MASKNEWS_LEXICON");
  if (corpus_path == nullptr || lexicon_path == nullptr) {
    throw Skip{"set MASKNEWS_CORPUS and MASKNEWS_LEXICON to run"};
  }
  RealData data;
  const Corpus raw = load_corpus(corpus_path);
  auto [cleaned, report] = clean_corpus(raw);

  std::ostringstream counts;
  const CorpusStats stats = corpus_stats(cleaned);
  counts << "cleaned=" << report.retained << " left="
         << stats.by_orientation[orientation_index(Orientation::left)]
         << " mainstream="
         << stats.by_orientation[orientation_index(Orientation::mainstream)]
         << " right="
         << stats.by_orientation[orientation_index(Orientation::right)];
  std::cout << "    (" << counts.str() << ")\n";

  require(report.retained == 1555,
          "cleaning must retain exactly 1555 articles, got " +
              std::to_string(report.retained));
  require(stats.by_orientation[orientation_index(Orientation::left)] == 252,
          "left count must be 252");
  require(stats.by_orientation[orientation_index(Orientation::mainstream)] ==
              787,
          "mainstream count must be 787");
  require(stats.by_orientation[orientation_index(Orientation::right)] == 516,
          "right count must be 516");

  data.cleaned = std::move(cleaned);
  data.lexicon = load_lexicon(lexicon_path);
  return data;
}

void criterion_reproduction() {
  const RealData data = load_real_data();

  ExperimentConfig config;
  config.k = 500;
  config.n = 5;
  config.classifier = ClassifierKind::svm;
  config.seed = 2016;

  config.mode = MaskMode::identity;
  const double baseline =
      run_experiment(data.cleaned, data.lexicon, config).aggregate.macro_f1;
  config.mode = MaskMode::topic;
  const double topic =
      run_experiment(data.cleaned, data.lexicon, config).aggregate.macro_f1;
  config.mode = MaskMode::style;
  const double style =
      run_experiment(data.cleaned, data.lexicon, config).aggregate.macro_f1;

  std::ostringstream detail;
  detail << "baseline=" << baseline << " topic=" << topic
         << " style=" << style;
  std::cout << "    (" << detail.str() << ")\n";

  require(std::abs(baseline - 0.70) <= 0.05,
          "baseline macro F1 must be 0.70 +- 0.05: " + detail.str());
  require(std::abs(topic - 0.66) <= 0.05,
          "topic macro F1 must be 0.66 +- 0.05: " + detail.str());
  require(std::abs(style - 0.57) <= 0.05,
          "style macro F1 must be 0.57 +- 0.05: " + detail.str());
  require(baseline > topic && topic > style,
          "strict ordering baseline > topic > style must hold: " +
              detail.str());
}

void criterion_n_sweep_shape() {
  const RealData data = load_real_data();

  std::vector<ExperimentConfig> grid;
  for (std::size_t n = 1; n <= 5; ++n) {
    ExperimentConfig config;
    config.mode = MaskMode::identity;  // the baseline configuration
    config.k = 500;
    config.n = n;
    config.classifier = ClassifierKind::svm;
    config.seed = 2016;
    grid.push_back(config);
  }
  const std::vector<SweepRow> rows = sweep(data.cleaned, data.lexicon, grid);

  std::ostringstream detail;
  std::size_t best = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    detail << "n=" << rows[i].n << ":" << rows[i].mean_macro_f1 << " ";
    if (rows[i].mean_macro_f1 > rows[best].mean_macro_f1) best = i;
  }
  std::cout << "    (" << detail.str() << ")\n";
  require(rows[best].n == 5,
          "n=5 must attain the maximum mean macro F1: " + detail.str());
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<void()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "masking fidelity on the reference sentence", 1.0,
       criterion_masking_fidelity},
      {2, "property suite", 60.0, criterion_property_suite},
      {3, "synthetic end-to-end separation", 120.0,
       criterion_synthetic_separation},
      {4, "saturation equivalence", 120.0, criterion_saturation_equivalence},
      {5, "reproduction on the published corpus", 600.0,
       criterion_reproduction},
      {6, "n-sweep shape on the published corpus", 600.0,
       criterion_n_sweep_shape},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string status = "PASS";
    std::string detail;
    try {
      criterion.run();
    } catch (const Skip& skip) {
      status = "SKIP";
      detail = skip.reason;
    } catch (const std::exception& e) {
      status = "FAIL";
      detail = e.what();
      ++failures;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (status == "PASS" && elapsed > criterion.budget_seconds) {
      status = "FAIL";
      detail = "exceeded the " + std::to_string(criterion.budget_seconds) +
               "s runtime budget";
      ++failures;
    }
    std::ostringstream line;
    line << "[" << status << "] criterion " << criterion.id << ": "
         << criterion.name << " (" << elapsed << "s)";
    if (!detail.empty()) line << " -- " << detail;
    std::cout << line.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
