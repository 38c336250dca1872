#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pubrank {

struct ItemRecord;

struct TaxonomyRow {
  std::string category;
  std::string discipline;
  std::string field;
};

enum class ScopeKind : std::uint8_t { Field, Discipline };

/// A field or a discipline, identified by its index in the taxonomy's sorted lists.
struct Scope {
  ScopeKind kind = ScopeKind::Field;
  std::uint32_t index = 0;

  auto operator<=>(const Scope&) const = default;
};

/// Category -> discipline -> field aggregation. Both maps are many-to-one.
/// Fields and disciplines are kept sorted by name so the result does not depend on row order.
class TaxonomyMap {
 public:
  /// Validates: non-empty, no category listed twice, no discipline under two fields.
  explicit TaxonomyMap(std::vector<TaxonomyRow> rows);

  std::size_t field_count() const noexcept { return fields_.size(); }
  std::size_t discipline_count() const noexcept { return disciplines_.size(); }
  std::size_t category_count() const noexcept { return rows_.size(); }

  const std::vector<std::string>& fields() const noexcept { return fields_; }
  const std::vector<std::string>& disciplines() const noexcept { return disciplines_; }
  const std::vector<TaxonomyRow>& rows() const noexcept { return rows_; }  // sorted by category

  std::uint32_t field_of_discipline(std::uint32_t discipline) const { return discipline_field_.at(discipline); }
  std::vector<std::uint32_t> disciplines_in_field(std::uint32_t field) const;

  std::optional<std::uint32_t> discipline_of_category(std::string_view category) const;
  std::optional<std::uint32_t> field_index(std::string_view name) const;
  std::optional<std::uint32_t> discipline_index(std::string_view name) const;

  /// Every scope: all fields, then all disciplines.
  std::vector<Scope> scopes() const;
  const std::string& scope_name(Scope scope) const;
  std::optional<Scope> find_scope(ScopeKind kind, std::string_view name) const;

  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

 private:
  std::vector<TaxonomyRow> rows_;
  std::vector<std::string> fields_;
  std::vector<std::string> disciplines_;
  std::vector<std::uint32_t> discipline_field_;
  std::unordered_map<std::string, std::uint32_t> category_discipline_;
  std::uint64_t fingerprint_ = 0;
};

/// Reads taxonomy.csv (header: category,discipline,field).
TaxonomyMap load_taxonomy(std::istream& source);
TaxonomyMap load_taxonomy_file(const std::filesystem::path& path);

/// The shipped 4-field / 38-discipline sample taxonomy, as CSV text.
std::string_view sample_taxonomy_csv();
TaxonomyMap sample_taxonomy();

/// The scopes an item belongs to. Sets: each scope appears once, sorted by index.
struct ItemScopes {
  std::vector<std::uint32_t> disciplines;
  std::vector<std::uint32_t> fields;
  std::vector<std::string> unknown_categories;
};

ItemScopes scopes_of_item(const ItemRecord& item, const TaxonomyMap& taxonomy);

}  // namespace pubrank
