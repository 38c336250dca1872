#pragma once

#include <algorithm>
#include <filesystem>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "pubrank/analysis.hpp"
#include "pubrank/corpus.hpp"
#include "pubrank/indicators.hpp"
#include "pubrank/ranking.hpp"
#include "pubrank/registry.hpp"
#include "pubrank/taxonomy.hpp"

namespace pubrank::test {

inline std::filesystem::path data_dir() { return PUBRANK_TEST_DATA_DIR; }
inline std::filesystem::path sample_registry_dir() { return data_dir() / "sample" / "registry"; }

/// Bodies without headers; the helper adds them.
inline PublisherRegistry make_registry(const std::string& publishers, const std::string& variants = "",
                                       const std::string& acquisitions = "") {
  std::istringstream p("id,name,type,website\n" + publishers);
  std::istringstream v("raw,canonical_id,city,address\n" + variants);
  std::istringstream a("acquired_id,acquirer_id,year\n" + acquisitions);
  return load_registry(v, p, a);
}

inline TaxonomyMap make_taxonomy(const std::string& rows) {
  std::istringstream in("category,discipline,field\n" + rows);
  return load_taxonomy(in);
}

inline ItemRecord book(std::string id, std::string publisher, std::vector<std::string> categories,
                       std::uint64_t citations, int year = 2010, std::optional<bool> edited = false) {
  ItemRecord r;
  r.id = std::move(id);
  r.doc_type = DocType::Book;
  r.doc_label = "book";
  r.raw_publisher = std::move(publisher);
  r.year = year;
  std::sort(categories.begin(), categories.end());
  categories.erase(std::unique(categories.begin(), categories.end()), categories.end());
  r.categories = std::move(categories);
  r.citations = citations;
  r.edited = edited;
  return r;
}

inline ItemRecord chapter(std::string id, std::string publisher, std::string parent,
                          std::vector<std::string> categories, std::uint64_t citations, int year = 2010) {
  ItemRecord r = book(std::move(id), std::move(publisher), std::move(categories), citations, year, std::nullopt);
  r.doc_type = DocType::BookChapter;
  r.doc_label = "chapter";
  r.parent_book_id = std::move(parent);
  return r;
}

/// Filter, resolve and baseline in one go.
struct Built {
  Built(PublisherRegistry r, TaxonomyMap t, const std::vector<ItemRecord>& items,
        ResolutionMode mode = ResolutionMode::Lenient)
      : registry(std::move(r)),
        taxonomy(std::move(t)),
        filtered(filter_corpus(items, registry)),
        corpus(AnalysisCorpus::build(filtered, registry, taxonomy, mode)),
        baselines(compute_baselines(corpus)) {}

  Scope scope(ScopeKind kind, std::string_view name) const { return *taxonomy.find_scope(kind, name); }
  RankingEngine engine() const { return RankingEngine(corpus, registry, taxonomy, baselines); }

  PublisherRegistry registry;
  TaxonomyMap taxonomy;
  std::vector<ItemRecord> filtered;
  AnalysisCorpus corpus;
  BaselineTable baselines;
};

inline std::string corpus_text(const std::vector<ItemRecord>& items) {
  std::string out;
  for (const auto& item : items) {
    out += to_corpus_line(item);
    out += '\n';
  }
  return out;
}

/// Shuffles the lines of a JSON-lines text.
inline std::string shuffle_lines(const std::string& text, std::uint64_t seed) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    lines.push_back(line);
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = lines.size(); i > 1; --i) {
    std::swap(lines[i - 1], lines[rng() % i]);
  }
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("pubrank-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ignored;
    std::filesystem::remove_all(path_, ignored);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace pubrank::test
