#include "pubrank/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "hash.hpp"
#include "pubrank/error.hpp"

namespace pubrank {

std::vector<Diagnostic> ResolutionReport::diagnostics() const {
  std::vector<Diagnostic> out;
  for (const auto& folded : unresolved) {
    out.push_back({0, Severity::Warning, "unresolved publisher \"" + folded + "\"; its items are excluded"});
  }
  for (const auto& category : unknown_categories) {
    out.push_back({0, Severity::Warning, "unknown category \"" + category + "\" skipped"});
  }
  if (uncategorized_items != 0) {
    out.push_back({0, Severity::Warning,
                   std::to_string(uncategorized_items) + " item(s) have no known category and are excluded"});
  }
  if (orphan_chapters != 0) {
    out.push_back({0, Severity::Warning,
                   std::to_string(orphan_chapters) +
                       " chapter(s) reference a parent book missing from the corpus; counted as not edited"});
  }
  return out;
}

bool AnalysisCorpus::in_scope(const AnalysisItem& item, Scope scope) const noexcept {
  auto members = scope.kind == ScopeKind::Field ? fields_of(item) : disciplines_of(item);
  return std::binary_search(members.begin(), members.end(), scope.index);
}

std::optional<std::uint32_t> AnalysisCorpus::publisher_index(std::string_view publisher_id) const {
  auto it = publisher_index_.find(std::string(publisher_id));
  if (it == publisher_index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

AnalysisCorpus AnalysisCorpus::build(std::span<const ItemRecord> filtered, const PublisherRegistry& registry,
                                     const TaxonomyMap& taxonomy, ResolutionMode mode) {
  AnalysisCorpus corpus;
  corpus.registry_fingerprint_ = registry.fingerprint();
  corpus.taxonomy_fingerprint_ = taxonomy.fingerprint();

  for (const auto& publisher : registry.publishers()) {
    corpus.publisher_ids_.push_back(publisher.id);
  }
  std::sort(corpus.publisher_ids_.begin(), corpus.publisher_ids_.end());
  for (std::uint32_t i = 0; i < corpus.publisher_ids_.size(); ++i) {
    corpus.publisher_index_.emplace(corpus.publisher_ids_[i], i);
  }

  corpus.field_count_ = taxonomy.field_count();
  for (std::uint32_t d = 0; d < taxonomy.discipline_count(); ++d) {
    corpus.discipline_field_.push_back(taxonomy.field_of_discipline(d));
  }

  std::unordered_map<std::string_view, bool> book_edited;
  for (const auto& item : filtered) {
    if (item.doc_type == DocType::Book) {
      book_edited.emplace(item.id, item.edited.value_or(false));
    }
  }

  std::set<std::string> unresolved;
  std::set<std::string> unknown;
  std::uint64_t fingerprint = 0;
  corpus.items_.reserve(filtered.size());

  for (const auto& record : filtered) {
    if (record.doc_type == DocType::Other) {
      continue;
    }
    const std::string* publisher_id = registry.try_resolve(record.raw_publisher);
    if (publisher_id == nullptr) {
      if (mode == ResolutionMode::Strict) {
        throw UnresolvedPublisherError(fold_name(record.raw_publisher));
      }
      unresolved.insert(fold_name(record.raw_publisher));
      ++corpus.report_.unresolved_items;
      continue;
    }

    ItemScopes scopes = scopes_of_item(record, taxonomy);
    unknown.insert(scopes.unknown_categories.begin(), scopes.unknown_categories.end());
    if (scopes.disciplines.empty()) {
      ++corpus.report_.uncategorized_items;
      continue;
    }

    AnalysisItem item;
    item.publisher = corpus.publisher_index_.at(*publisher_id);
    item.doc_type = record.doc_type;
    item.year = record.year;
    item.citations = record.citations;
    if (record.doc_type == DocType::BookChapter) {
      auto parent = book_edited.find(*record.parent_book_id);
      if (parent == book_edited.end()) {
        ++corpus.report_.orphan_chapters;
      } else {
        item.in_edited_book = parent->second;
      }
    }
    item.scope_offset = static_cast<std::uint32_t>(corpus.scope_pool_.size());
    item.discipline_count = static_cast<std::uint16_t>(scopes.disciplines.size());
    item.field_count = static_cast<std::uint16_t>(scopes.fields.size());
    corpus.scope_pool_.insert(corpus.scope_pool_.end(), scopes.disciplines.begin(), scopes.disciplines.end());
    corpus.scope_pool_.insert(corpus.scope_pool_.end(), scopes.fields.begin(), scopes.fields.end());

    if (corpus.items_.empty()) {
      corpus.min_year_ = corpus.max_year_ = item.year;
    } else {
      corpus.min_year_ = std::min(corpus.min_year_, item.year);
      corpus.max_year_ = std::max(corpus.max_year_, item.year);
    }

    // Summing per-item hashes keeps the fingerprint independent of record order.
    std::uint64_t h = detail::fnv1a(record.id);
    h = detail::fnv1a(*publisher_id, detail::fnv1a("\x1f", h));
    h = detail::fnv1a_u64(static_cast<std::uint64_t>(item.doc_type), h);
    h = detail::fnv1a_u64(static_cast<std::uint64_t>(item.year), h);
    h = detail::fnv1a_u64(item.citations, h);
    h = detail::fnv1a_u64(item.in_edited_book ? 1 : 0, h);
    for (auto d : scopes.disciplines) {
      h = detail::fnv1a_u64(d, h);
    }
    fingerprint += detail::mix64(h);

    corpus.items_.push_back(item);
  }

  corpus.fingerprint_ = detail::mix64(fingerprint ^ detail::mix64(corpus.items_.size()));
  corpus.report_.unresolved.assign(unresolved.begin(), unresolved.end());
  corpus.report_.unknown_categories.assign(unknown.begin(), unknown.end());
  return corpus;
}

std::string fingerprint_hex(std::uint64_t fingerprint) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(fingerprint));
  return buffer;
}

}  // namespace pubrank
