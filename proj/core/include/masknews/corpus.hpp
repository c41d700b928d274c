#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace masknews {

enum class Orientation { left = 0, mainstream = 1, right = 2 };

inline constexpr std::array<Orientation, 3> kOrientations = {
    Orientation::left, Orientation::mainstream, Orientation::right};

constexpr std::size_t orientation_index(Orientation o) {
  return static_cast<std::size_t>(o);
}

std::string_view to_string(Orientation o) noexcept;
std::optional<Orientation> orientation_from_string(std::string_view s) noexcept;

struct Article {
  std::string id;
  std::string publisher;
  Orientation orientation = Orientation::mainstream;
  std::optional<std::string> title;
  std::string text;
};

// Labeled documents in stable insertion order.
struct Corpus {
  std::vector<Article> articles;

  std::size_t size() const noexcept { return articles.size(); }
  bool empty() const noexcept { return articles.empty(); }
};

struct CleaningReport {
  std::size_t empty_removed = 0;
  std::size_t bogus_removed = 0;
  std::size_t duplicates_removed = 0;
  std::size_t label_conflict_removed = 0;
  std::size_t retained = 0;
};

// JSONL, one object per line with fields id, publisher, orientation,
// optional title, text.
Corpus load_corpus(const std::filesystem::path& path);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

// The built-in bogus pattern list holds the one placeholder string that
// scraped article bodies are known to collapse to.
const std::vector<std::string>& default_bogus_patterns();

// One exact pattern per line.
std::vector<std::string> load_bogus_patterns(const std::filesystem::path& path);

// Removes, in order: whitespace-only texts, texts exactly matching a bogus
// pattern after trimming, exact duplicate (text, label) pairs keeping the
// first occurrence, and finally every member of any group of articles that
// share a text but disagree on the label.
std::pair<Corpus, CleaningReport> clean_corpus(
    const Corpus& corpus,
    const std::vector<std::string>& bogus_patterns = default_bogus_patterns());

std::string cleaning_report_json(const CleaningReport& report);

struct CorpusStats {
  std::array<std::size_t, 3> by_orientation{};
  std::map<std::string, std::size_t> by_publisher;
  std::size_t total = 0;
};

CorpusStats corpus_stats(const Corpus& corpus);

}  // namespace masknews
