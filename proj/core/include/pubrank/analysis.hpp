#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pubrank/corpus.hpp"
#include "pubrank/registry.hpp"
#include "pubrank/taxonomy.hpp"

namespace pubrank {

enum class ResolutionMode : std::uint8_t {
  Strict,   // an unresolved publisher is fatal
  Lenient,  // unresolved items are reported and excluded
};

/// A filtered item bound to its terminal publisher and its scopes.
struct AnalysisItem {
  std::uint32_t publisher = 0;  // index into AnalysisCorpus::publisher_ids()
  DocType doc_type = DocType::Book;
  int year = 0;
  std::uint64_t citations = 0;
  bool in_edited_book = false;  // chapters: parent book is present and flagged edited
  std::uint32_t scope_offset = 0;
  std::uint16_t discipline_count = 0;
  std::uint16_t field_count = 0;
};

/// What happened while binding records to publishers and scopes.
struct ResolutionReport {
  std::vector<std::string> unresolved;          // distinct folded strings, sorted
  std::size_t unresolved_items = 0;
  std::vector<std::string> unknown_categories;  // distinct, sorted
  std::size_t uncategorized_items = 0;          // no known category, excluded
  std::size_t orphan_chapters = 0;              // parent book not in the corpus

  std::vector<Diagnostic> diagnostics() const;
};

/// The resolved, immutable input of every indicator computation.
///
/// Items with an unresolved publisher (lenient mode) or with no known category are excluded.
/// The fingerprint is independent of record order.
class AnalysisCorpus {
 public:
  static AnalysisCorpus build(std::span<const ItemRecord> filtered, const PublisherRegistry& registry,
                              const TaxonomyMap& taxonomy, ResolutionMode mode = ResolutionMode::Lenient);

  std::span<const AnalysisItem> items() const noexcept { return items_; }
  std::span<const std::uint32_t> disciplines_of(const AnalysisItem& item) const noexcept {
    return {scope_pool_.data() + item.scope_offset, item.discipline_count};
  }
  std::span<const std::uint32_t> fields_of(const AnalysisItem& item) const noexcept {
    return {scope_pool_.data() + item.scope_offset + item.discipline_count, item.field_count};
  }
  bool in_scope(const AnalysisItem& item, Scope scope) const noexcept;

  /// Publisher ids by dense index: every registry publisher, sorted by id.
  const std::vector<std::string>& publisher_ids() const noexcept { return publisher_ids_; }
  std::optional<std::uint32_t> publisher_index(std::string_view publisher_id) const;

  std::uint32_t field_of_discipline(std::uint32_t discipline) const { return discipline_field_.at(discipline); }
  std::size_t field_count() const noexcept { return field_count_; }
  std::size_t discipline_count() const noexcept { return discipline_field_.size(); }
  std::size_t scope_count() const noexcept { return field_count_ + discipline_field_.size(); }
  /// Dense scope index: fields first, then disciplines.
  std::size_t scope_slot(Scope scope) const noexcept {
    return scope.kind == ScopeKind::Field ? scope.index : field_count_ + scope.index;
  }

  int min_year() const noexcept { return min_year_; }
  int max_year() const noexcept { return max_year_; }

  std::uint64_t fingerprint() const noexcept { return fingerprint_; }
  std::uint64_t registry_fingerprint() const noexcept { return registry_fingerprint_; }
  std::uint64_t taxonomy_fingerprint() const noexcept { return taxonomy_fingerprint_; }

  const ResolutionReport& report() const noexcept { return report_; }

 private:
  std::vector<AnalysisItem> items_;
  std::vector<std::uint32_t> scope_pool_;
  std::vector<std::string> publisher_ids_;
  std::unordered_map<std::string, std::uint32_t> publisher_index_;
  std::vector<std::uint32_t> discipline_field_;
  std::size_t field_count_ = 0;
  int min_year_ = 0;
  int max_year_ = -1;
  std::uint64_t fingerprint_ = 0;
  std::uint64_t registry_fingerprint_ = 0;
  std::uint64_t taxonomy_fingerprint_ = 0;
  ResolutionReport report_;
};

/// Hex rendering used in exports and metadata.
std::string fingerprint_hex(std::uint64_t fingerprint);

}  // namespace pubrank
