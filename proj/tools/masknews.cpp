// Command line driver: clean | mask | cv | sweep | features.
//
// Every run writes a config-echo.json next to its primary output; a run can
// be reproduced byte-for-byte with --from-echo <file>.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "masknews/corpus.hpp"
#include "masknews/errors.hpp"
#include "masknews/eval.hpp"
#include "masknews/features.hpp"
#include "masknews/lexicon.hpp"
#include "masknews/masking.hpp"
#include "masknews/models.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct CommonOptions {
  std::string corpus_path;
  std::string lexicon_path;
  std::string out_path;
  std::string from_echo;
  std::string mode = "topic";
  std::string classifier = "svm";
  std::string oversample = "on";
  std::string fold_plan_path;
  std::string bogus_patterns_path;
  std::size_t k = 500;
  std::size_t n = 5;
  std::uint64_t seed = 0;
  bool paper_pruning = false;
  std::uint64_t min_ngram_freq = 0;
  std::uint64_t max_ngram_freq = 0;
  bool l2_normalize = false;
  std::size_t top_m = 15;
  bool all_folds = false;
  // grids (sweep only)
  std::string k_grid;
  std::string n_grid;
  std::string modes = "topic,style";
  std::string classifiers = "svm";
};

masknews::MaskMode parse_mode(const std::string& mode) {
  const auto parsed = masknews::mask_mode_from_string(mode);
  if (!parsed) {
    masknews::fail(masknews::ErrorCode::invalid_argument,
                   "unknown mode '" + mode +
                       "' (expected topic, style or identity)");
  }
  return *parsed;
}

masknews::ClassifierKind parse_classifier(const std::string& name) {
  const auto parsed = masknews::classifier_from_string(name);
  if (!parsed) {
    masknews::fail(masknews::ErrorCode::invalid_argument,
                   "unknown classifier '" + name + "' (expected nb or svm)");
  }
  return *parsed;
}

bool parse_on_off(const std::string& value, const char* flag) {
  if (value == "on") return true;
  if (value == "off") return false;
  masknews::fail(masknews::ErrorCode::invalid_argument,
                 std::string(flag) + " expects 'on' or 'off'");
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<std::size_t> split_csv_sizes(const std::string& text,
                                         const char* flag) {
  std::vector<std::size_t> values;
  for (const std::string& item : split_csv(text)) {
    try {
      values.push_back(std::stoull(item));
    } catch (const std::exception&) {
      masknews::fail(masknews::ErrorCode::invalid_argument,
                     std::string(flag) + ": not a number: '" + item + "'");
    }
  }
  return values;
}

masknews::ExperimentConfig experiment_config(const CommonOptions& opt) {
  masknews::ExperimentConfig config;
  config.mode = parse_mode(opt.mode);
  config.k = opt.k;
  config.n = opt.n;
  config.classifier = parse_classifier(opt.classifier);
  if (opt.paper_pruning) config.pruning.max_total = 50;
  if (opt.min_ngram_freq > 0) config.pruning.min_total = opt.min_ngram_freq;
  if (opt.max_ngram_freq > 0) config.pruning.max_total = opt.max_ngram_freq;
  config.oversample = parse_on_off(opt.oversample, "--oversample");
  config.l2_normalize = opt.l2_normalize;
  config.seed = opt.seed;
  config.feature_top_m = opt.top_m;
  config.features_all_folds = opt.all_folds;
  return config;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    masknews::fail(masknews::ErrorCode::missing_file,
                   "cannot write file: " + path.string());
  }
  out << content;
}

fs::path sibling(const fs::path& out_path, const char* name) {
  fs::path dir = out_path.parent_path();
  return dir.empty() ? fs::path(name) : dir / name;
}

// The echo captures every effective parameter; --from-echo replays it.
void write_config_echo(const std::string& command, const CommonOptions& opt,
                       const fs::path& out_path) {
  ordered_json echo;
  echo["command"] = command;
  echo["corpus"] = opt.corpus_path;
  echo["lexicon"] = opt.lexicon_path;
  echo["out"] = opt.out_path;
  echo["bogus_patterns"] = opt.bogus_patterns_path;
  echo["fold_plan"] = opt.fold_plan_path;
  echo["mode"] = opt.mode;
  echo["k"] = opt.k;
  echo["n"] = opt.n;
  echo["classifier"] = opt.classifier;
  echo["paper_pruning"] = opt.paper_pruning;
  echo["min_ngram_freq"] = opt.min_ngram_freq;
  echo["max_ngram_freq"] = opt.max_ngram_freq;
  echo["oversample"] = opt.oversample;
  echo["l2_normalize"] = opt.l2_normalize;
  echo["seed"] = opt.seed;
  echo["top"] = opt.top_m;
  echo["all_folds"] = opt.all_folds;
  echo["k_grid"] = opt.k_grid;
  echo["n_grid"] = opt.n_grid;
  echo["modes"] = opt.modes;
  echo["classifiers"] = opt.classifiers;
  write_text_file(sibling(out_path, "config-echo.json"),
                  echo.dump(2) + "\n");
}

void apply_echo(CommonOptions& opt, const std::string& echo_path,
                const std::string& explicit_out) {
  std::ifstream in(echo_path, std::ios::binary);
  if (!in) {
    masknews::fail(masknews::ErrorCode::missing_file,
                   "cannot open echo file: " + echo_path);
  }
  json echo;
  try {
    in >> echo;
  } catch (const json::exception& e) {
    masknews::fail(masknews::ErrorCode::malformed_record,
                   echo_path + ": invalid JSON: " + e.what());
  }
  try {
    opt.corpus_path = echo.at("corpus").get<std::string>();
    opt.lexicon_path = echo.at("lexicon").get<std::string>();
    opt.out_path = echo.at("out").get<std::string>();
    opt.bogus_patterns_path = echo.at("bogus_patterns").get<std::string>();
    opt.fold_plan_path = echo.at("fold_plan").get<std::string>();
    opt.mode = echo.at("mode").get<std::string>();
    opt.k = echo.at("k").get<std::size_t>();
    opt.n = echo.at("n").get<std::size_t>();
    opt.classifier = echo.at("classifier").get<std::string>();
    opt.paper_pruning = echo.at("paper_pruning").get<bool>();
    opt.min_ngram_freq = echo.at("min_ngram_freq").get<std::uint64_t>();
    opt.max_ngram_freq = echo.at("max_ngram_freq").get<std::uint64_t>();
    opt.oversample = echo.at("oversample").get<std::string>();
    opt.l2_normalize = echo.at("l2_normalize").get<bool>();
    opt.seed = echo.at("seed").get<std::uint64_t>();
    opt.top_m = echo.at("top").get<std::size_t>();
    opt.all_folds = echo.at("all_folds").get<bool>();
    opt.k_grid = echo.at("k_grid").get<std::string>();
    opt.n_grid = echo.at("n_grid").get<std::string>();
    opt.modes = echo.at("modes").get<std::string>();
    opt.classifiers = echo.at("classifiers").get<std::string>();
  } catch (const json::exception& e) {
    masknews::fail(masknews::ErrorCode::malformed_record,
                   echo_path + ": malformed echo: " + e.what());
  }
  if (!explicit_out.empty()) opt.out_path = explicit_out;
}

std::optional<masknews::FoldPlan> load_plan_if_set(const CommonOptions& opt) {
  if (opt.fold_plan_path.empty()) return std::nullopt;
  return masknews::load_fold_plan(opt.fold_plan_path);
}

std::vector<std::string> load_patterns(const CommonOptions& opt) {
  if (opt.bogus_patterns_path.empty()) {
    return masknews::default_bogus_patterns();
  }
  return masknews::load_bogus_patterns(opt.bogus_patterns_path);
}

int run_clean(const CommonOptions& opt) {
  const masknews::Corpus corpus = masknews::load_corpus(opt.corpus_path);
  auto [cleaned, report] = masknews::clean_corpus(corpus, load_patterns(opt));
  masknews::save_corpus(cleaned, opt.out_path);
  const std::string report_text = masknews::cleaning_report_json(report);
  write_text_file(sibling(opt.out_path, "cleaning-report.json"), report_text);
  write_config_echo("clean", opt, opt.out_path);
  std::cout << report_text;
  return 0;
}

int run_mask(const CommonOptions& opt) {
  const masknews::Corpus corpus = masknews::load_corpus(opt.corpus_path);
  const masknews::MaskMode mode = parse_mode(opt.mode);
  masknews::WordSet wordset;
  if (mode != masknews::MaskMode::identity) {
    const masknews::FrequencyLexicon lexicon =
        masknews::load_lexicon(opt.lexicon_path);
    wordset = masknews::top_k(lexicon, opt.k);
  }
  const masknews::Corpus masked =
      masknews::mask_corpus(corpus, wordset, mode);
  masknews::save_corpus(masked, opt.out_path);
  write_config_echo("mask", opt, opt.out_path);
  return 0;
}

int run_cv(const CommonOptions& opt) {
  const masknews::Corpus corpus = masknews::load_corpus(opt.corpus_path);
  const masknews::FrequencyLexicon lexicon =
      masknews::load_lexicon(opt.lexicon_path);
  const masknews::ExperimentConfig config = experiment_config(opt);
  const masknews::ExperimentResult result =
      masknews::run_experiment(corpus, lexicon, config, load_plan_if_set(opt));
  write_text_file(opt.out_path,
                  masknews::experiment_report_json(result, config));
  write_config_echo("cv", opt, opt.out_path);
  std::cout << "macro_f1 (pooled): " << result.aggregate.macro_f1 << "\n";
  return 0;
}

int run_sweep(const CommonOptions& opt) {
  const masknews::Corpus corpus = masknews::load_corpus(opt.corpus_path);
  const masknews::FrequencyLexicon lexicon =
      masknews::load_lexicon(opt.lexicon_path);

  const std::vector<std::size_t> ks =
      opt.k_grid.empty() ? std::vector<std::size_t>{opt.k}
                         : split_csv_sizes(opt.k_grid, "--k-grid");
  const std::vector<std::size_t> ns =
      opt.n_grid.empty() ? std::vector<std::size_t>{opt.n}
                         : split_csv_sizes(opt.n_grid, "--n-grid");
  const std::vector<std::string> modes = split_csv(opt.modes);
  const std::vector<std::string> classifiers = split_csv(opt.classifiers);
  if (modes.empty() || classifiers.empty()) {
    masknews::fail(masknews::ErrorCode::invalid_argument,
                   "--modes and --classifiers must be non-empty");
  }

  std::vector<masknews::ExperimentConfig> grid;
  for (const std::string& mode : modes) {
    for (const std::size_t k : ks) {
      for (const std::size_t n : ns) {
        for (const std::string& classifier : classifiers) {
          CommonOptions cell = opt;
          cell.mode = mode;
          cell.k = k;
          cell.n = n;
          cell.classifier = classifier;
          grid.push_back(experiment_config(cell));
        }
      }
    }
  }

  const std::vector<masknews::SweepRow> rows =
      masknews::sweep(corpus, lexicon, grid);
  std::ostringstream csv;
  masknews::write_sweep_csv(rows, csv);
  write_text_file(opt.out_path, csv.str());
  write_config_echo("sweep", opt, opt.out_path);
  return 0;
}

int run_features(const CommonOptions& opt) {
  const masknews::Corpus corpus = masknews::load_corpus(opt.corpus_path);
  const masknews::FrequencyLexicon lexicon =
      masknews::load_lexicon(opt.lexicon_path);
  const masknews::ExperimentConfig config = experiment_config(opt);
  const masknews::ExperimentResult result =
      masknews::run_experiment(corpus, lexicon, config, load_plan_if_set(opt));

  std::ostringstream tsv;
  tsv << "label\trank\tngram\tweight\n";
  auto emit = [&tsv](const masknews::FeatureReport& report,
                     std::optional<std::size_t> fold) {
    for (masknews::Orientation o : masknews::kOrientations) {
      const auto& entries =
          report.per_label[masknews::orientation_index(o)];
      for (std::size_t rank = 0; rank < entries.size(); ++rank) {
        tsv << masknews::to_string(o);
        if (fold) tsv << "/fold" << *fold;
        tsv << '\t' << rank + 1 << '\t' << entries[rank].display << '\t'
            << entries[rank].weight << '\n';
      }
    }
  };
  if (config.features_all_folds) {
    for (std::size_t fold = 0; fold < result.per_fold_features.size();
         ++fold) {
      emit(result.per_fold_features[fold], fold);
    }
  } else {
    emit(result.features, std::nullopt);
  }
  write_text_file(opt.out_path, tsv.str());
  write_config_echo("features", opt, opt.out_path);
  return 0;
}

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool needs_lexicon) {
  cmd->add_option("--corpus", opt.corpus_path, "Input corpus JSONL");
  if (needs_lexicon) {
    cmd->add_option("--lexicon", opt.lexicon_path,
                    "Ranked frequency word list, one word per line");
  }
  cmd->add_option("--out", opt.out_path, "Output path");
  cmd->add_option("--from-echo", opt.from_echo,
                  "Replay a previous run from its config-echo.json");
  cmd->add_option("--seed", opt.seed, "Random seed");
}

void add_experiment_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--mode", opt.mode, "topic | style | identity");
  cmd->add_option("--k", opt.k, "Frequent-word prefix length");
  cmd->add_option("--n", opt.n, "Character n-gram length");
  cmd->add_option("--classifier", opt.classifier, "nb | svm");
  cmd->add_flag("--paper-pruning", opt.paper_pruning,
                "Keep only n-grams with total training frequency < 50");
  cmd->add_option("--min-ngram-freq", opt.min_ngram_freq,
                  "Keep n-grams with total frequency >= this");
  cmd->add_option("--max-ngram-freq", opt.max_ngram_freq,
                  "Keep n-grams with total frequency < this");
  cmd->add_option("--oversample", opt.oversample,
                  "on | off: balance training labels by duplicate sampling");
  cmd->add_flag("--l2-normalize", opt.l2_normalize,
                "L2-normalize tf vectors");
  cmd->add_option("--fold-plan", opt.fold_plan_path,
                  "Explicit publisher-to-fold plan (JSON)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"masknews: word-masked character n-gram pipeline for "
               "political-orientation classification of news"};
  app.require_subcommand(1);

  CommonOptions opt;

  CLI::App* clean = app.add_subcommand(
      "clean", "Validate and clean a corpus, writing cleaned JSONL");
  add_common_flags(clean, opt, false);
  clean->add_option("--bogus-patterns", opt.bogus_patterns_path,
                    "File of exact bogus text patterns, one per line");

  CLI::App* mask = app.add_subcommand(
      "mask", "Apply the masking transform and write masked JSONL");
  add_common_flags(mask, opt, true);
  mask->add_option("--mode", opt.mode, "topic | style | identity");
  mask->add_option("--k", opt.k, "Frequent-word prefix length");

  CLI::App* cv = app.add_subcommand(
      "cv", "Publisher-grouped 3-fold cross-validation, JSON report");
  add_common_flags(cv, opt, true);
  add_experiment_flags(cv, opt);

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Grid of experiments over modes, k, n and classifiers; CSV");
  add_common_flags(sweep_cmd, opt, true);
  add_experiment_flags(sweep_cmd, opt);
  sweep_cmd->add_option("--k-grid", opt.k_grid, "Comma-separated k values");
  sweep_cmd->add_option("--n-grid", opt.n_grid, "Comma-separated n values");
  sweep_cmd->add_option("--modes", opt.modes, "Comma-separated mask modes");
  sweep_cmd->add_option("--classifiers", opt.classifiers,
                        "Comma-separated classifiers");

  CLI::App* features = app.add_subcommand(
      "features", "Train and report the strongest per-label features, TSV");
  add_common_flags(features, opt, true);
  add_experiment_flags(features, opt);
  features->add_option("--top", opt.top_m, "Features per label");
  features->add_flag("--all-folds", opt.all_folds,
                     "Report features from every fold, not just the last");

  std::string explicit_out;
  try {
    app.parse(argc, argv);
    // Remember whether --out was given explicitly before an echo replay.
    explicit_out = opt.out_path;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 1;
  }

  try {
    if (!opt.from_echo.empty()) {
      apply_echo(opt, opt.from_echo, explicit_out);
    }
    auto require = [](const std::string& value, const char* flag) {
      if (value.empty()) {
        masknews::fail(masknews::ErrorCode::invalid_argument,
                       std::string("missing required option ") + flag);
      }
    };
    if (app.got_subcommand(clean)) {
      require(opt.corpus_path, "--corpus");
      require(opt.out_path, "--out");
      return run_clean(opt);
    }
    if (app.got_subcommand(mask)) {
      require(opt.corpus_path, "--corpus");
      require(opt.out_path, "--out");
      if (opt.mode != "identity") require(opt.lexicon_path, "--lexicon");
      return run_mask(opt);
    }
    require(opt.corpus_path, "--corpus");
    require(opt.lexicon_path, "--lexicon");
    require(opt.out_path, "--out");
    if (app.got_subcommand(cv)) return run_cv(opt);
    if (app.got_subcommand(sweep_cmd)) return run_sweep(opt);
    if (app.got_subcommand(features)) return run_features(opt);
    return 1;
  } catch (const masknews::Error& e) {
    std::cerr << "error (" << masknews::error_code_name(e.code())
              << "): " << e.what() << std::endl;
    return e.code() == masknews::ErrorCode::invalid_argument ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
}
