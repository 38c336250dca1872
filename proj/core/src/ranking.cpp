#include "pubrank/ranking.hpp"

#include <algorithm>

#include "pubrank/error.hpp"

namespace pubrank {

namespace {

int compare_names(std::string_view a, std::string_view b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto lower = [](char c) { return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c; };
    const auto ca = static_cast<unsigned char>(lower(a[i]));
    const auto cb = static_cast<unsigned char>(lower(b[i]));
    if (ca != cb) {
      return ca < cb ? -1 : 1;
    }
  }
  if (a.size() != b.size()) {
    return a.size() < b.size() ? -1 : 1;
  }
  return a.compare(b) < 0 ? -1 : (a == b ? 0 : 1);
}

double key_value(const IndicatorRow& row, SortKey key) {
  switch (key) {
    case SortKey::Pbk:
      return static_cast<double>(row.pbk);
    case SortKey::Pch:
      return static_cast<double>(row.pch);
    case SortKey::Cit:
      return static_cast<double>(row.cit);
    case SortKey::Fncs:
      return row.fncs;
    case SortKey::Ai:
      return row.ai;
    case SortKey::Ed:
      return row.ed;
  }
  return 0.0;
}

bool ranks_before(const RankedRow& a, const RankedRow& b, SortKey key) {
  if (key == SortKey::Pbk || key == SortKey::Pch || key == SortKey::Cit) {
    // integer columns compare exactly, independent of double conversion
    auto value = [key](const IndicatorRow& r) {
      return key == SortKey::Pbk ? r.pbk : key == SortKey::Pch ? r.pch : r.cit;
    };
    if (value(a.indicators) != value(b.indicators)) {
      return value(a.indicators) > value(b.indicators);
    }
  } else {
    const double va = key_value(a.indicators, key);
    const double vb = key_value(b.indicators, key);
    if (va != vb) {
      return va > vb;
    }
  }
  if (int c = compare_names(a.name, b.name); c != 0) {
    return c < 0;
  }
  return a.indicators.publisher_id < b.indicators.publisher_id;
}

}  // namespace

bool check_eligibility(const IndicatorCounts& counts, const ThresholdPolicy& policy) noexcept {
  return counts.pbk >= policy.min_books || counts.pch >= policy.min_chapters;
}

std::string_view to_string(SortKey key) {
  switch (key) {
    case SortKey::Pbk:
      return "pbk";
    case SortKey::Pch:
      return "pch";
    case SortKey::Cit:
      return "cit";
    case SortKey::Fncs:
      return "fncs";
    case SortKey::Ai:
      return "ai";
    case SortKey::Ed:
      return "ed";
  }
  return "pbk";
}

std::string_view to_string(ThresholdBasis basis) {
  return basis == ThresholdBasis::Global ? "global" : "scope";
}

void sort_rows(RankingTable& table, SortKey key) {
  std::sort(table.rows.begin(), table.rows.end(),
            [key](const RankedRow& a, const RankedRow& b) { return ranks_before(a, b, key); });
  table.sort_key = key;
}

RankingEngine::RankingEngine(const AnalysisCorpus& corpus, const PublisherRegistry& registry,
                             const TaxonomyMap& taxonomy, const BaselineTable& baselines)
    : corpus_(corpus), registry_(registry), taxonomy_(taxonomy) {
  if (corpus.registry_fingerprint() != registry.fingerprint()) {
    throw ConsistencyError("corpus was resolved against a different publisher registry");
  }
  if (corpus.taxonomy_fingerprint() != taxonomy.fingerprint()) {
    throw ConsistencyError("corpus was resolved against a different taxonomy");
  }
  indicators_ = compute_all_indicators(corpus, baselines);
}

RankingTable RankingEngine::build_ranking(Scope scope, const RankingOptions& options) const {
  RankingTable table;
  table.scope = scope;
  table.scope_name = taxonomy_.scope_name(scope);
  table.metadata = {corpus_.fingerprint(), options.window, options.policy, options.type_filter};

  for (const IndicatorRow* row : indicators_.rows_in(scope)) {
    const auto publisher = *corpus_.publisher_index(row->publisher_id);
    const IndicatorCounts& basis = options.policy.basis == ThresholdBasis::Global
                                       ? indicators_.publisher_totals(publisher)
                                       : row->counts();
    if (!check_eligibility(basis, options.policy)) {
      continue;
    }
    const auto& info = registry_.publisher(row->publisher_id);
    if (options.type_filter && info.type != *options.type_filter) {
      continue;
    }
    table.rows.push_back({*row, info.name, info.type});
  }
  sort_rows(table, SortKey::Pbk);
  return table;
}

std::vector<RankingTable> RankingEngine::build_all_rankings(const RankingOptions& options) const {
  std::vector<RankingTable> tables;
  for (const auto& scope : taxonomy_.scopes()) {
    tables.push_back(build_ranking(scope, options));
  }
  return tables;
}

RankingTable build_ranking(Scope scope, const AnalysisCorpus& corpus, const PublisherRegistry& registry,
                           const TaxonomyMap& taxonomy, const BaselineTable& baselines,
                           const RankingOptions& options) {
  return RankingEngine(corpus, registry, taxonomy, baselines).build_ranking(scope, options);
}

std::vector<RankingTable> build_all_rankings(const AnalysisCorpus& corpus, const PublisherRegistry& registry,
                                             const TaxonomyMap& taxonomy, const BaselineTable& baselines,
                                             const RankingOptions& options) {
  return RankingEngine(corpus, registry, taxonomy, baselines).build_all_rankings(options);
}

PublisherProfile build_profile(std::string_view publisher_id, std::span<const RankingTable> rankings,
                               const PublisherRegistry& registry) {
  PublisherProfile profile;
  profile.publisher = registry.publisher(publisher_id);
  for (const NameVariant* variant : registry.variants_resolving_to(publisher_id)) {
    profile.variants.push_back(*variant);
  }
  for (const auto& table : rankings) {
    for (const auto& row : table.rows) {
      if (row.indicators.publisher_id == publisher_id) {
        profile.rows.push_back({table.scope_name, row});
        break;
      }
    }
  }
  std::stable_sort(profile.rows.begin(), profile.rows.end(), [](const ProfileRow& a, const ProfileRow& b) {
    return a.row.indicators.pbk > b.row.indicators.pbk;
  });
  return profile;
}

}  // namespace pubrank
