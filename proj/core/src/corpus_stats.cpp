#include "pubrank/corpus_stats.hpp"

namespace pubrank {

namespace {

std::optional<double> average(std::uint64_t citations, std::uint64_t items) {
  if (items == 0) {
    return std::nullopt;
  }
  return static_cast<double>(citations) / static_cast<double>(items);
}

void add_item(ScopeStats& stats, const AnalysisItem& item) {
  if (item.doc_type == DocType::Book) {
    ++stats.books;
    stats.book_citations += item.citations;
  } else {
    ++stats.chapters;
    stats.chapter_citations += item.citations;
  }
}

void count_publishers(ScopeStats& stats, const std::vector<bool>& present, const AnalysisCorpus& corpus,
                      const PublisherRegistry& registry) {
  for (std::size_t p = 0; p < present.size(); ++p) {
    if (!present[p]) {
      continue;
    }
    if (registry.publisher(corpus.publisher_ids()[p]).type == PublisherType::UniversityPress) {
      ++stats.university_presses;
    } else {
      ++stats.commercial_publishers;
    }
  }
}

}  // namespace

std::optional<double> ScopeStats::book_citation_average() const { return average(book_citations, books); }

std::optional<double> ScopeStats::chapter_citation_average() const { return average(chapter_citations, chapters); }

CorpusStats corpus_stats(const AnalysisCorpus& corpus, const PublisherRegistry& registry,
                         const TaxonomyMap& taxonomy) {
  CorpusStats stats;
  const std::size_t publishers = corpus.publisher_ids().size();
  std::vector<std::vector<bool>> present(taxonomy.field_count(), std::vector<bool>(publishers, false));
  std::vector<bool> present_anywhere(publishers, false);

  stats.fields.resize(taxonomy.field_count());
  for (std::uint32_t f = 0; f < taxonomy.field_count(); ++f) {
    stats.fields[f].name = taxonomy.fields()[f];
    stats.fields[f].discipline_count = taxonomy.disciplines_in_field(f).size();
  }
  stats.global.name = "All fields";
  stats.global.discipline_count = taxonomy.discipline_count();

  for (const auto& item : corpus.items()) {
    add_item(stats.global, item);
    present_anywhere[item.publisher] = true;
    for (auto f : corpus.fields_of(item)) {
      add_item(stats.fields[f], item);
      present[f][item.publisher] = true;
    }
  }
  for (std::uint32_t f = 0; f < taxonomy.field_count(); ++f) {
    count_publishers(stats.fields[f], present[f], corpus, registry);
  }
  count_publishers(stats.global, present_anywhere, corpus, registry);
  return stats;
}

CorpusStats corpus_stats(std::span<const ItemRecord> filtered, const PublisherRegistry& registry,
                         const TaxonomyMap& taxonomy) {
  auto corpus = AnalysisCorpus::build(filtered, registry, taxonomy, ResolutionMode::Strict);
  return corpus_stats(corpus, registry, taxonomy);
}

}  // namespace pubrank
