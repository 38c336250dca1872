#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pubrank/indicators.hpp"

namespace pubrank {

enum class ThresholdBasis : std::uint8_t {
  PerScope,  // counts inside the ranking's own scope
  Global,    // corpus-wide counts of the publisher
};

/// A publisher enters a ranking with at least `min_books` books or `min_chapters` chapters.
struct ThresholdPolicy {
  std::uint64_t min_books = 5;
  std::uint64_t min_chapters = 50;
  ThresholdBasis basis = ThresholdBasis::PerScope;

  bool operator==(const ThresholdPolicy&) const = default;
};

bool check_eligibility(const IndicatorCounts& counts, const ThresholdPolicy& policy) noexcept;

enum class SortKey : std::uint8_t { Pbk, Pch, Cit, Fncs, Ai, Ed };

std::string_view to_string(SortKey key);
std::string_view to_string(ThresholdBasis basis);

struct RankedRow {
  IndicatorRow indicators;
  std::string name;
  PublisherType type = PublisherType::CommercialAcademic;

  bool operator==(const RankedRow&) const = default;
};

struct RankingMetadata {
  std::uint64_t corpus_fingerprint = 0;
  YearWindow window;
  ThresholdPolicy policy;
  std::optional<PublisherType> type_filter;

  bool operator==(const RankingMetadata&) const = default;
};

struct RankingTable {
  Scope scope;
  std::string scope_name;
  std::vector<RankedRow> rows;
  SortKey sort_key = SortKey::Pbk;
  RankingMetadata metadata;
};

/// Orders rows by `key` descending, ties by name ascending (case-insensitive), then by id.
void sort_rows(RankingTable& table, SortKey key);

struct RankingOptions {
  ThresholdPolicy policy;
  YearWindow window;  // recorded in metadata
  std::optional<PublisherType> type_filter;
};

/// Builds ranking tables from one consistent set of upstream artifacts. Construction checks that
/// corpus, baselines, registry, and taxonomy belong together (ConsistencyError otherwise) and
/// computes every indicator once.
class RankingEngine {
 public:
  RankingEngine(const AnalysisCorpus& corpus, const PublisherRegistry& registry,
                const TaxonomyMap& taxonomy, const BaselineTable& baselines);

  RankingTable build_ranking(Scope scope, const RankingOptions& options) const;
  /// One table per field, then one per discipline, in taxonomy order.
  std::vector<RankingTable> build_all_rankings(const RankingOptions& options) const;

  const IndicatorSet& indicators() const noexcept { return indicators_; }

 private:
  const AnalysisCorpus& corpus_;
  const PublisherRegistry& registry_;
  const TaxonomyMap& taxonomy_;
  IndicatorSet indicators_;
};

RankingTable build_ranking(Scope scope, const AnalysisCorpus& corpus, const PublisherRegistry& registry,
                           const TaxonomyMap& taxonomy, const BaselineTable& baselines,
                           const RankingOptions& options);

std::vector<RankingTable> build_all_rankings(const AnalysisCorpus& corpus, const PublisherRegistry& registry,
                                             const TaxonomyMap& taxonomy, const BaselineTable& baselines,
                                             const RankingOptions& options);

struct ProfileRow {
  std::string scope_name;
  RankedRow row;
};

struct PublisherProfile {
  CanonicalPublisher publisher;
  std::vector<NameVariant> variants;
  std::vector<ProfileRow> rows;  // PBK descending, ties by scope order
};

/// Collects the publisher's row from every table it appears in. NotFoundError for unknown ids.
PublisherProfile build_profile(std::string_view publisher_id, std::span<const RankingTable> rankings,
                               const PublisherRegistry& registry);

}  // namespace pubrank
