#include "pubrank/taxonomy.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "hash.hpp"
#include "pubrank/corpus.hpp"
#include "pubrank/csv.hpp"
#include "pubrank/error.hpp"

namespace pubrank {

TaxonomyMap::TaxonomyMap(std::vector<TaxonomyRow> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) {
    throw ValidationError("taxonomy is empty");
  }
  std::sort(rows_.begin(), rows_.end(),
            [](const TaxonomyRow& a, const TaxonomyRow& b) { return a.category < b.category; });

  std::map<std::string, std::string> discipline_to_field;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& row = rows_[i];
    if (row.category.empty() || row.discipline.empty() || row.field.empty()) {
      throw ValidationError("taxonomy row with an empty column (category \"" + row.category + "\")");
    }
    if (i > 0 && rows_[i - 1].category == row.category) {
      throw ValidationError("category \"" + row.category + "\" is mapped more than once");
    }
    auto [it, inserted] = discipline_to_field.emplace(row.discipline, row.field);
    if (!inserted && it->second != row.field) {
      throw ValidationError("discipline \"" + row.discipline + "\" belongs to two fields: \"" + it->second +
                            "\" and \"" + row.field + "\"");
    }
  }

  for (const auto& [discipline, field] : discipline_to_field) {
    disciplines_.push_back(discipline);
    fields_.push_back(field);
  }
  std::sort(fields_.begin(), fields_.end());
  fields_.erase(std::unique(fields_.begin(), fields_.end()), fields_.end());
  for (const auto& [discipline, field] : discipline_to_field) {
    discipline_field_.push_back(*field_index(field));
  }
  for (const auto& row : rows_) {
    category_discipline_.emplace(row.category, *discipline_index(row.discipline));
  }

  std::uint64_t hash = detail::kFnvOffset;
  for (const auto& row : rows_) {
    hash = detail::fnv1a(row.category + '\x1f' + row.discipline + '\x1f' + row.field + '\n', hash);
  }
  fingerprint_ = hash;
}

std::vector<std::uint32_t> TaxonomyMap::disciplines_in_field(std::uint32_t field) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 0; d < discipline_field_.size(); ++d) {
    if (discipline_field_[d] == field) {
      out.push_back(d);
    }
  }
  return out;
}

std::optional<std::uint32_t> TaxonomyMap::discipline_of_category(std::string_view category) const {
  auto it = category_discipline_.find(std::string(category));
  if (it == category_discipline_.end()) {
    return std::nullopt;
  }
  return it->second;
}

namespace {

std::optional<std::uint32_t> sorted_index(const std::vector<std::string>& names, std::string_view name) {
  auto it = std::lower_bound(names.begin(), names.end(), name);
  if (it == names.end() || *it != name) {
    return std::nullopt;
  }
  return static_cast<std::uint32_t>(it - names.begin());
}

}  // namespace

std::optional<std::uint32_t> TaxonomyMap::field_index(std::string_view name) const {
  return sorted_index(fields_, name);
}

std::optional<std::uint32_t> TaxonomyMap::discipline_index(std::string_view name) const {
  return sorted_index(disciplines_, name);
}

std::vector<Scope> TaxonomyMap::scopes() const {
  std::vector<Scope> out;
  out.reserve(fields_.size() + disciplines_.size());
  for (std::uint32_t f = 0; f < fields_.size(); ++f) {
    out.push_back({ScopeKind::Field, f});
  }
  for (std::uint32_t d = 0; d < disciplines_.size(); ++d) {
    out.push_back({ScopeKind::Discipline, d});
  }
  return out;
}

const std::string& TaxonomyMap::scope_name(Scope scope) const {
  return scope.kind == ScopeKind::Field ? fields_.at(scope.index) : disciplines_.at(scope.index);
}

std::optional<Scope> TaxonomyMap::find_scope(ScopeKind kind, std::string_view name) const {
  auto index = kind == ScopeKind::Field ? field_index(name) : discipline_index(name);
  if (!index) {
    return std::nullopt;
  }
  return Scope{kind, *index};
}

TaxonomyMap load_taxonomy(std::istream& source) {
  std::vector<TaxonomyRow> rows;
  for (auto& record : csv::read_table(source, {"category", "discipline", "field"}, "taxonomy.csv")) {
    rows.push_back({std::move(record.fields[0]), std::move(record.fields[1]), std::move(record.fields[2])});
  }
  return TaxonomyMap(std::move(rows));
}

TaxonomyMap load_taxonomy_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open taxonomy file " + path.string());
  }
  return load_taxonomy(in);
}

TaxonomyMap sample_taxonomy() {
  std::istringstream in{std::string(sample_taxonomy_csv())};
  return load_taxonomy(in);
}

ItemScopes scopes_of_item(const ItemRecord& item, const TaxonomyMap& taxonomy) {
  ItemScopes scopes;
  for (const auto& category : item.categories) {
    if (auto discipline = taxonomy.discipline_of_category(category)) {
      scopes.disciplines.push_back(*discipline);
    } else {
      scopes.unknown_categories.push_back(category);
    }
  }
  std::sort(scopes.disciplines.begin(), scopes.disciplines.end());
  scopes.disciplines.erase(std::unique(scopes.disciplines.begin(), scopes.disciplines.end()),
                           scopes.disciplines.end());
  for (auto discipline : scopes.disciplines) {
    scopes.fields.push_back(taxonomy.field_of_discipline(discipline));
  }
  std::sort(scopes.fields.begin(), scopes.fields.end());
  scopes.fields.erase(std::unique(scopes.fields.begin(), scopes.fields.end()), scopes.fields.end());
  return scopes;
}

}  // namespace pubrank
