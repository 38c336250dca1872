#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pubrank/analysis.hpp"

namespace pubrank {

/// Aggregates for one field, or for the whole corpus.
struct ScopeStats {
  std::string name;
  std::size_t discipline_count = 0;
  std::uint64_t commercial_publishers = 0;
  std::uint64_t university_presses = 0;
  std::uint64_t books = 0;
  std::uint64_t chapters = 0;
  std::uint64_t book_citations = 0;
  std::uint64_t chapter_citations = 0;

  std::uint64_t publishers() const noexcept { return commercial_publishers + university_presses; }
  std::uint64_t items() const noexcept { return books + chapters; }
  std::uint64_t citations() const noexcept { return book_citations + chapter_citations; }

  /// Citations per item of the type; nullopt when there are no items of that type.
  std::optional<double> book_citation_average() const;
  std::optional<double> chapter_citation_average() const;

  bool operator==(const ScopeStats&) const = default;
};

/// Whole counting: an item in two fields is counted in both, so field totals may exceed `global`.
struct CorpusStats {
  std::vector<ScopeStats> fields;  // taxonomy field order
  ScopeStats global;

  bool operator==(const CorpusStats&) const = default;
};

CorpusStats corpus_stats(const AnalysisCorpus& corpus, const PublisherRegistry& registry,
                         const TaxonomyMap& taxonomy);

/// Resolves strictly first: an unresolved publisher is fatal.
CorpusStats corpus_stats(std::span<const ItemRecord> filtered, const PublisherRegistry& registry,
                         const TaxonomyMap& taxonomy);

}  // namespace pubrank
