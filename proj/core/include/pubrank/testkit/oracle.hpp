#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "pubrank/corpus.hpp"
#include "pubrank/registry.hpp"
#include "pubrank/taxonomy.hpp"

namespace pubrank::testkit {

struct OracleIndicators {
  std::uint64_t pbk = 0;
  std::uint64_t pch = 0;
  std::uint64_t cit = 0;
  double fncs = 0.0;
  double ai = 0.0;
  double ed = 0.0;
};

/// Brute-force restatement of the six indicators. Works on names and raw records with nested
/// loops; it deliberately shares no aggregation code with the engine.
class IndicatorOracle {
 public:
  IndicatorOracle(std::span<const ItemRecord> filtered, const PublisherRegistry& registry,
                  const TaxonomyMap& taxonomy);

  OracleIndicators compute(std::string_view publisher_id, ScopeKind kind, std::string_view scope) const;

  /// Publishers a ranking of `scope` must list under the OR-of-thresholds rule.
  std::set<std::string> eligible_publishers(ScopeKind kind, std::string_view scope, std::uint64_t min_books,
                                            std::uint64_t min_chapters, bool global_basis) const;

  /// Terminal publisher ids that own at least one usable item.
  std::set<std::string> publishers() const;

 private:
  struct Entry {
    std::string id;
    std::string publisher;
    DocType doc_type = DocType::Book;
    int year = 0;
    std::uint64_t citations = 0;
    std::optional<std::string> parent;
    std::set<std::string> disciplines;
    std::set<std::string> fields;
  };

  bool belongs(const Entry& entry, ScopeKind kind, std::string_view scope) const;
  double cell_mean(std::string_view discipline, DocType type, int year) const;
  std::string field_of(std::string_view discipline) const;

  const TaxonomyMap& taxonomy_;
  std::vector<Entry> entries_;
  std::vector<std::pair<std::string, bool>> books_;
  mutable std::map<std::tuple<std::string, DocType, int>, double> means_;  // memoized scans  // every filtered book: id, edited
};

OracleIndicators oracle_indicators(std::string_view publisher_id, ScopeKind kind, std::string_view scope,
                                   std::span<const ItemRecord> filtered, const PublisherRegistry& registry,
                                   const TaxonomyMap& taxonomy);

/// Literal OR-of-thresholds rule.
bool oracle_eligible(std::uint64_t pbk, std::uint64_t pch, std::uint64_t min_books, std::uint64_t min_chapters);

}  // namespace pubrank::testkit
