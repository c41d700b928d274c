#include "masknews/corpus.hpp"

#include <fstream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "masknews/errors.hpp"
#include "masknews/text.hpp"

namespace masknews {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string location(const std::filesystem::path& path, std::size_t line_no) {
  return path.string() + ":" + std::to_string(line_no);
}

std::string require_string(const json& record, const char* field,
                           const std::filesystem::path& path,
                           std::size_t line_no) {
  auto it = record.find(field);
  if (it == record.end() || !it->is_string()) {
    fail(ErrorCode::malformed_record,
         location(path, line_no) + ": missing or non-string field '" +
             field + "'");
  }
  return it->get<std::string>();
}

}  // namespace

std::string_view to_string(Orientation o) noexcept {
  switch (o) {
    case Orientation::left: return "left";
    case Orientation::mainstream: return "mainstream";
    case Orientation::right: return "right";
  }
  return "mainstream";
}

std::optional<Orientation> orientation_from_string(std::string_view s) noexcept {
  if (s == "left") return Orientation::left;
  if (s == "mainstream") return Orientation::mainstream;
  if (s == "right") return Orientation::right;
  return std::nullopt;
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::missing_file, "cannot open corpus file: " + path.string());
  }

  Corpus corpus;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;

    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      fail(ErrorCode::malformed_record,
           location(path, line_no) + ": invalid JSON: " + e.what());
    }
    if (!record.is_object()) {
      fail(ErrorCode::malformed_record,
           location(path, line_no) + ": record is not a JSON object");
    }

    Article article;
    article.id = require_string(record, "id", path, line_no);
    article.publisher = require_string(record, "publisher", path, line_no);
    const std::string orientation =
        require_string(record, "orientation", path, line_no);
    const auto parsed = orientation_from_string(orientation);
    if (!parsed) {
      fail(ErrorCode::invalid_orientation,
           location(path, line_no) + ": invalid orientation '" + orientation +
               "' (expected left, mainstream or right)");
    }
    article.orientation = *parsed;
    if (auto it = record.find("title"); it != record.end() && !it->is_null()) {
      if (!it->is_string()) {
        fail(ErrorCode::malformed_record,
             location(path, line_no) + ": non-string field 'title'");
      }
      article.title = it->get<std::string>();
    }
    article.text = require_string(record, "text", path, line_no);

    if (article.id.empty()) {
      fail(ErrorCode::malformed_record,
           location(path, line_no) + ": empty article id");
    }
    if (!ids.insert(article.id).second) {
      fail(ErrorCode::duplicate_id, location(path, line_no) +
                                        ": duplicate article id '" +
                                        article.id + "'");
    }
    corpus.articles.push_back(std::move(article));
  }
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    fail(ErrorCode::missing_file,
         "cannot open output file for writing: " + path.string());
  }
  for (const Article& article : corpus.articles) {
    ordered_json record;
    record["id"] = article.id;
    record["publisher"] = article.publisher;
    record["orientation"] = to_string(article.orientation);
    if (article.title) record["title"] = *article.title;
    record["text"] = article.text;
    out << record.dump() << '\n';
  }
}

const std::vector<std::string>& default_bogus_patterns() {
  static const std::vector<std::string> patterns = {
      "The document has moved here"};
  return patterns;
}

std::vector<std::string> load_bogus_patterns(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::missing_file,
         "cannot open bogus-pattern file: " + path.string());
  }
  std::vector<std::string> patterns;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) patterns.push_back(line);
  }
  return patterns;
}

std::pair<Corpus, CleaningReport> clean_corpus(
    const Corpus& corpus, const std::vector<std::string>& bogus_patterns) {
  CleaningReport report;

  struct Entry {
    const Article* article;
    std::string_view trimmed;
  };
  std::vector<Entry> alive;
  alive.reserve(corpus.size());

  // 1. empty or whitespace-only texts
  for (const Article& article : corpus.articles) {
    const std::string_view trimmed = trim(article.text);
    if (trimmed.empty()) {
      ++report.empty_removed;
    } else {
      alive.push_back({&article, trimmed});
    }
  }

  // 2. exact match against a bogus pattern
  {
    std::unordered_set<std::string_view> bogus(bogus_patterns.begin(),
                                               bogus_patterns.end());
    std::vector<Entry> kept;
    kept.reserve(alive.size());
    for (const Entry& entry : alive) {
      if (bogus.contains(entry.trimmed)) {
        ++report.bogus_removed;
      } else {
        kept.push_back(entry);
      }
    }
    alive.swap(kept);
  }

  // 3. exact duplicate (text, label) pairs; first occurrence retained
  {
    std::unordered_map<std::string_view, std::array<bool, 3>> seen;
    std::vector<Entry> kept;
    kept.reserve(alive.size());
    for (const Entry& entry : alive) {
      auto& flags = seen[entry.trimmed];
      const std::size_t li = orientation_index(entry.article->orientation);
      if (flags[li]) {
        ++report.duplicates_removed;
      } else {
        flags[li] = true;
        kept.push_back(entry);
      }
    }
    alive.swap(kept);
  }

  // 4. shared text with disagreeing labels: drop the whole group
  {
    std::unordered_map<std::string_view, std::array<std::size_t, 3>> labels;
    for (const Entry& entry : alive) {
      ++labels[entry.trimmed][orientation_index(entry.article->orientation)];
    }
    std::vector<Entry> kept;
    kept.reserve(alive.size());
    for (const Entry& entry : alive) {
      const auto& counts = labels[entry.trimmed];
      int distinct = 0;
      for (std::size_t c : counts) distinct += c > 0 ? 1 : 0;
      if (distinct >= 2) {
        ++report.label_conflict_removed;
      } else {
        kept.push_back(entry);
      }
    }
    alive.swap(kept);
  }

  report.retained = alive.size();
  Corpus cleaned;
  cleaned.articles.reserve(alive.size());
  for (const Entry& entry : alive) cleaned.articles.push_back(*entry.article);
  return {std::move(cleaned), report};
}

std::string cleaning_report_json(const CleaningReport& report) {
  ordered_json doc;
  doc["empty_removed"] = report.empty_removed;
  doc["bogus_removed"] = report.bogus_removed;
  doc["duplicates_removed"] = report.duplicates_removed;
  doc["label_conflict_removed"] = report.label_conflict_removed;
  doc["retained"] = report.retained;
  return doc.dump(2) + "\n";
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  stats.total = corpus.size();
  for (const Article& article : corpus.articles) {
    ++stats.by_orientation[orientation_index(article.orientation)];
    ++stats.by_publisher[article.publisher];
  }
  return stats;
}

}  // namespace masknews
