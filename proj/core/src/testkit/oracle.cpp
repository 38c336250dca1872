#include "pubrank/testkit/oracle.hpp"

#include <tuple>

namespace pubrank::testkit {

IndicatorOracle::IndicatorOracle(std::span<const ItemRecord> filtered, const PublisherRegistry& registry,
                                 const TaxonomyMap& taxonomy)
    : taxonomy_(taxonomy) {
  for (const auto& record : filtered) {
    if (record.doc_type != DocType::Book && record.doc_type != DocType::BookChapter) {
      continue;
    }
    if (record.doc_type == DocType::Book) {
      books_.emplace_back(record.id, record.edited.value_or(false));
    }
    const std::string* publisher = registry.try_resolve(record.raw_publisher);
    if (publisher == nullptr) {
      continue;
    }
    Entry entry;
    entry.id = record.id;
    entry.publisher = *publisher;
    entry.doc_type = record.doc_type;
    entry.year = record.year;
    entry.citations = record.citations;
    entry.parent = record.parent_book_id;
    for (const auto& category : record.categories) {
      for (const auto& row : taxonomy.rows()) {
        if (row.category == category) {
          entry.disciplines.insert(row.discipline);
          entry.fields.insert(row.field);
        }
      }
    }
    if (entry.disciplines.empty()) {
      continue;
    }
    entries_.push_back(std::move(entry));
  }
}

bool IndicatorOracle::belongs(const Entry& entry, ScopeKind kind, std::string_view scope) const {
  const auto& names = kind == ScopeKind::Field ? entry.fields : entry.disciplines;
  for (const auto& name : names) {
    if (name == scope) {
      return true;
    }
  }
  return false;
}

std::string IndicatorOracle::field_of(std::string_view discipline) const {
  for (const auto& row : taxonomy_.rows()) {
    if (row.discipline == discipline) {
      return row.field;
    }
  }
  return {};
}

double IndicatorOracle::cell_mean(std::string_view discipline, DocType type, int year) const {
  double citations = 0.0;
  double items = 0.0;
  for (const auto& other : entries_) {
    if (other.doc_type == type && other.year == year && belongs(other, ScopeKind::Discipline, discipline)) {
      citations += static_cast<double>(other.citations);
      items += 1.0;
    }
  }
  return citations / items;
}

OracleIndicators IndicatorOracle::compute(std::string_view publisher_id, ScopeKind kind,
                                          std::string_view scope) const {
  OracleIndicators out;
  double actual = 0.0;
  double expected = 0.0;
  double edited_chapters = 0.0;

  for (const auto& entry : entries_) {
    if (entry.publisher != publisher_id || !belongs(entry, kind, scope)) {
      continue;
    }
    if (entry.doc_type == DocType::Book) {
      out.pbk += 1;
    } else {
      out.pch += 1;
      for (const auto& [book_id, edited] : books_) {
        if (entry.parent && book_id == *entry.parent) {
          edited_chapters += edited ? 1.0 : 0.0;
          break;
        }
      }
    }
    out.cit += entry.citations;
    actual += static_cast<double>(entry.citations);

    std::vector<std::string> disciplines;
    if (kind == ScopeKind::Discipline) {
      disciplines.emplace_back(scope);
    } else {
      for (const auto& d : entry.disciplines) {
        if (field_of(d) == scope) {
          disciplines.push_back(d);
        }
      }
    }
    double item_expected = 0.0;
    for (const auto& d : disciplines) {
      auto key = std::make_tuple(d, entry.doc_type, entry.year);
      auto it = means_.find(key);
      if (it == means_.end()) {
        it = means_.emplace(key, cell_mean(d, entry.doc_type, entry.year)).first;
      }
      item_expected += it->second;
    }
    expected += item_expected / static_cast<double>(disciplines.size());
  }

  out.fncs = expected > 0.0 ? actual / expected : 0.0;
  out.ed = out.pch > 0 ? 100.0 * edited_chapters / static_cast<double>(out.pch) : 0.0;

  double own_books = 0.0;
  double scope_books = 0.0;
  double all_books = 0.0;
  for (const auto& entry : entries_) {
    if (entry.doc_type != DocType::Book) {
      continue;
    }
    all_books += 1.0;
    own_books += entry.publisher == publisher_id ? 1.0 : 0.0;
    scope_books += belongs(entry, kind, scope) ? 1.0 : 0.0;
  }
  if (own_books > 0.0 && scope_books > 0.0) {
    out.ai = (static_cast<double>(out.pbk) / own_books) / (scope_books / all_books);
  }
  return out;
}

std::set<std::string> IndicatorOracle::eligible_publishers(ScopeKind kind, std::string_view scope,
                                                           std::uint64_t min_books, std::uint64_t min_chapters,
                                                           bool global_basis) const {
  std::set<std::string> out;
  for (const auto& publisher : publishers()) {
    std::uint64_t books = 0;
    std::uint64_t chapters = 0;
    bool present = false;
    for (const auto& entry : entries_) {
      if (entry.publisher != publisher) {
        continue;
      }
      const bool scoped = belongs(entry, kind, scope);
      present = present || scoped;
      if (global_basis || scoped) {
        books += entry.doc_type == DocType::Book ? 1 : 0;
        chapters += entry.doc_type == DocType::BookChapter ? 1 : 0;
      }
    }
    if (present && oracle_eligible(books, chapters, min_books, min_chapters)) {
      out.insert(publisher);
    }
  }
  return out;
}

std::set<std::string> IndicatorOracle::publishers() const {
  std::set<std::string> out;
  for (const auto& entry : entries_) {
    out.insert(entry.publisher);
  }
  return out;
}

OracleIndicators oracle_indicators(std::string_view publisher_id, ScopeKind kind, std::string_view scope,
                                   std::span<const ItemRecord> filtered, const PublisherRegistry& registry,
                                   const TaxonomyMap& taxonomy) {
  return IndicatorOracle(filtered, registry, taxonomy).compute(publisher_id, kind, scope);
}

bool oracle_eligible(std::uint64_t pbk, std::uint64_t pch, std::uint64_t min_books, std::uint64_t min_chapters) {
  if (pbk >= min_books) {
    return true;
  }
  if (pch >= min_chapters) {
    return true;
  }
  return false;
}

}  // namespace pubrank::testkit
