#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "pubrank/corpus.hpp"
#include "pubrank/registry.hpp"
#include "pubrank/taxonomy.hpp"

namespace pubrank::testkit {

/// Zero-inflated geometric citation counts: 0 with `zero_probability`, otherwise geometric on
/// {0, 1, ...} scaled so the overall mean is `mean`.
struct CitationModel {
  double mean = 1.0;
  double zero_probability = 0.0;
};

enum class CategorySpread : std::uint8_t {
  Anywhere,   // extra categories drawn from the whole taxonomy
  SameField,  // extra categories stay inside the first category's field
};

struct SynthParams {
  std::uint64_t seed = 1;
  std::size_t publisher_count = 10;
  std::size_t min_items_per_publisher = 40;
  std::size_t max_items_per_publisher = 60;
  double chapter_fraction = 0.6;
  double edited_fraction = 0.4;
  /// Weight of drawing 1, 2, 3, ... categories for an item.
  std::vector<double> category_multiplicity{0.9, 0.1};
  CategorySpread spread = CategorySpread::Anywhere;
  /// Restricts categories to the first N fields of the taxonomy (0 = all).
  std::size_t field_limit = 0;
  CitationModel book_citations{4.5, 0.25};
  CitationModel chapter_citations{0.2, 0.8};
  YearWindow years{2009, 2013};
  double university_press_fraction = 0.35;
  double acquired_fraction = 0.1;
  /// Share of records whose raw publisher string is a case/whitespace-perturbed variant.
  double variant_noise = 0.3;
  /// Extra records the filter must drop (serials, other document types, out-of-window years,
  /// serial publisher). Never part of the ledger.
  double excluded_fraction = 0.05;
  /// Share of chapters whose parent book is absent from the corpus.
  double orphan_chapter_fraction = 0.02;

  /// Throws ValidationError when a fraction is outside [0,1] or a count is not positive.
  void validate() const;
};

struct LedgerCounts {
  std::uint64_t pbk = 0;
  std::uint64_t pch = 0;
  std::uint64_t cit = 0;
  std::uint64_t edited_chapters = 0;

  bool operator==(const LedgerCounts&) const = default;
};

struct LedgerCell {
  std::uint64_t item_count = 0;
  std::uint64_t citation_sum = 0;

  bool operator==(const LedgerCell&) const = default;
};

/// Aggregates recorded while emitting records, over the records that survive filtering.
/// Publishers are terminal (post-acquisition) ids; scopes are names.
struct GroundTruthLedger {
  using ScopeKey = std::tuple<std::string, ScopeKind, std::string>;     // publisher, kind, scope
  using CellKey = std::tuple<std::string, DocType, int>;                // discipline, type, year

  std::map<ScopeKey, LedgerCounts> scope_counts;
  std::map<std::string, LedgerCounts> publisher_totals;
  std::map<CellKey, LedgerCell> cells;
  LedgerCounts totals;
  std::uint64_t emitted_records = 0;
  std::uint64_t retained_records = 0;
};

/// Everything `synth` writes, in the standard file formats.
struct SynthOutput {
  std::string corpus_jsonl;
  std::string publishers_csv;
  std::string variants_csv;
  std::string acquisitions_csv;
  std::string taxonomy_csv;
  GroundTruthLedger ledger;

  PublisherRegistry registry() const;
  IngestResult ingest() const;

  /// corpus.jsonl, taxonomy.csv, ledger.json and registry/{publishers,variants,acquisitions}.csv
  void write(const std::filesystem::path& directory) const;
};

/// Deterministic: the same params and taxonomy give byte-identical output.
SynthOutput generate_corpus(const SynthParams& params, const TaxonomyMap& taxonomy);

std::string ledger_to_json(const GroundTruthLedger& ledger);

}  // namespace pubrank::testkit
