#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pubrank/analysis.hpp"

namespace pubrank {

/// Output and raw impact of one publisher in one scope.
struct IndicatorCounts {
  std::uint64_t pbk = 0;  // books
  std::uint64_t pch = 0;  // chapters
  std::uint64_t cit = 0;  // citations to both, each item counted on its own

  bool operator==(const IndicatorCounts&) const = default;
};

struct BaselineKey {
  std::uint32_t discipline = 0;
  DocType doc_type = DocType::Book;
  int year = 0;

  auto operator<=>(const BaselineKey&) const = default;
};

/// Citation reference value for one (discipline, document type, year) cell.
struct BaselineCell {
  BaselineKey key;
  std::uint64_t item_count = 0;
  std::uint64_t citation_sum = 0;

  double mean() const noexcept {
    return static_cast<double>(citation_sum) / static_cast<double>(item_count);
  }
};

/// Expected-citation cells built from every item of a corpus, eligible publishers or not.
/// Only occupied cells exist.
class BaselineTable {
 public:
  BaselineTable() = default;
  BaselineTable(std::uint64_t corpus_fingerprint, std::vector<BaselineCell> cells, int min_year,
                int max_year, std::size_t discipline_count);

  std::span<const BaselineCell> cells() const noexcept { return cells_; }
  const BaselineCell* find(const BaselineKey& key) const noexcept;
  /// Index into cells(), or -1.
  std::int64_t cell_index(const BaselineKey& key) const noexcept;

  std::uint64_t corpus_fingerprint() const noexcept { return corpus_fingerprint_; }

 private:
  std::uint64_t corpus_fingerprint_ = 0;
  std::vector<BaselineCell> cells_;  // sorted by key
  std::vector<std::int32_t> dense_;  // (discipline, type, year) -> cell index
  int min_year_ = 0;
  int year_span_ = 0;
};

/// Whole counting: an item in k disciplines contributes to k cells.
BaselineTable compute_baselines(const AnalysisCorpus& corpus);

/// The six indicators of one publisher in one scope.
struct IndicatorRow {
  std::string publisher_id;
  Scope scope;
  std::uint64_t pbk = 0;
  std::uint64_t pch = 0;
  std::uint64_t cit = 0;
  double fncs = 0.0;
  double ai = 0.0;
  double ed = 0.0;  // percent, [0, 100]

  IndicatorCounts counts() const noexcept { return {pbk, pch, cit}; }
  bool operator==(const IndicatorRow&) const = default;
};

// Single (publisher, scope) computations. Each scans the corpus once; a publisher id with no
// items in the corpus yields zeros.

IndicatorCounts compute_counts(std::string_view publisher_id, Scope scope, const AnalysisCorpus& corpus);

/// Σ citations / Σ expected over the publisher's items in scope. An item's expected value is its
/// cell mean; in a field scope, the average of its cell means over the field's disciplines it
/// belongs to. 0 when there are no items or Σ expected is 0.
/// Throws ConsistencyError if `baselines` were built from another corpus.
double compute_fncs(std::string_view publisher_id, Scope scope, const AnalysisCorpus& corpus,
                    const BaselineTable& baselines);

/// (publisher books in scope / publisher books) / (corpus books in scope / corpus books).
/// Books only; 0 when either denominator is empty.
double compute_ai(std::string_view publisher_id, Scope scope, const AnalysisCorpus& corpus);

/// Percentage of the publisher's chapters in scope whose parent book is edited; 0 without chapters.
double compute_ed(std::string_view publisher_id, Scope scope, const AnalysisCorpus& corpus);

IndicatorRow compute_row(std::string_view publisher_id, Scope scope, const AnalysisCorpus& corpus,
                         const BaselineTable& baselines);

/// Rows for every (publisher, scope) pair with at least one item, computed in one pass.
class IndicatorSet {
 public:
  const IndicatorRow* find(std::uint32_t publisher, Scope scope) const noexcept;
  /// Rows of one scope, by publisher index.
  std::vector<const IndicatorRow*> rows_in(Scope scope) const;
  /// Corpus-wide books/chapters/citations of a publisher.
  const IndicatorCounts& publisher_totals(std::uint32_t publisher) const { return totals_.at(publisher); }

  std::uint64_t corpus_fingerprint() const noexcept { return corpus_fingerprint_; }

 private:
  friend IndicatorSet compute_all_indicators(const AnalysisCorpus&, const BaselineTable&);

  std::size_t scope_count_ = 0;
  std::size_t field_count_ = 0;
  std::vector<std::int32_t> slot_;  // publisher * scope_count + scope slot -> row index or -1
  std::vector<IndicatorRow> rows_;
  std::vector<IndicatorCounts> totals_;
  std::uint64_t corpus_fingerprint_ = 0;
};

IndicatorSet compute_all_indicators(const AnalysisCorpus& corpus, const BaselineTable& baselines);

}  // namespace pubrank
