#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "pubrank/testkit/oracle.hpp"
#include "pubrank/testkit/synth.hpp"
#include "test_support.hpp"

namespace pubrank::test {

/// Randomized small-corpus parameters; a pure function of the seed.
inline testkit::SynthParams small_params(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 17);
  auto pick = [&](std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); };
  testkit::SynthParams p;
  p.seed = seed;
  p.publisher_count = pick(3, 16);
  p.min_items_per_publisher = pick(5, 40);
  p.max_items_per_publisher = p.min_items_per_publisher + pick(0, 80);
  p.chapter_fraction = static_cast<double>(pick(0, 10)) / 10.0;
  p.edited_fraction = static_cast<double>(pick(0, 10)) / 10.0;
  switch (pick(0, 3)) {
    case 0: p.category_multiplicity = {1.0}; break;
    case 1: p.category_multiplicity = {0.8, 0.2}; break;
    case 2: p.category_multiplicity = {0.5, 0.3, 0.2}; break;
    default: p.category_multiplicity = {0.2, 0.4, 0.4}; break;
  }
  p.spread = pick(0, 1) == 0 ? testkit::CategorySpread::Anywhere : testkit::CategorySpread::SameField;
  p.field_limit = pick(0, 2) == 0 ? 1 : 0;
  p.book_citations = {static_cast<double>(pick(0, 60)) / 10.0, static_cast<double>(pick(0, 9)) / 10.0};
  p.chapter_citations = {static_cast<double>(pick(0, 8)) / 10.0, static_cast<double>(pick(0, 9)) / 10.0};
  p.years = {2009, static_cast<int>(pick(2009, 2013))};
  p.acquired_fraction = static_cast<double>(pick(0, 4)) / 10.0;
  return p;
}

inline Built build_synthetic(const testkit::SynthOutput& generated, const TaxonomyMap& taxonomy) {
  return Built(generated.registry(), taxonomy, generated.ingest().items);
}

struct Check {
  std::size_t checked = 0;
  double max_error = 0.0;
  std::size_t exact_mismatches = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    ++exact_mismatches;
    if (first_failure.empty()) {
      first_failure = what;
    }
  }
  void error(double e, const std::string& what, double tolerance) {
    max_error = std::max(max_error, e);
    if (!(e <= tolerance) && first_failure.empty()) {
      first_failure = what;
    }
  }
  bool ok(double tolerance) const { return exact_mismatches == 0 && max_error <= tolerance; }
};

inline std::string pair_name(const std::string& publisher, const std::string& scope) {
  return publisher + " @ " + scope;
}

/// Whole corpus as one pseudo-publisher: FNCS is 1 in every discipline with cited items.
inline Check fncs_closure(const std::vector<ItemRecord>& items, const PublisherRegistry& registry,
                          const TaxonomyMap& taxonomy, double tolerance) {
  auto pseudo = make_registry("everyone,Everyone,commercial,\n");
  auto rebound = filter_corpus(items, registry);
  for (auto& record : rebound) {
    record.raw_publisher = "Everyone";
  }
  Built built(std::move(pseudo), TaxonomyMap(taxonomy.rows()), rebound);
  Check check;
  for (std::uint32_t d = 0; d < taxonomy.discipline_count(); ++d) {
    Scope scope{ScopeKind::Discipline, d};
    if (compute_counts("everyone", scope, built.corpus).cit == 0) {
      continue;
    }
    const double fncs = compute_fncs("everyone", scope, built.corpus, built.baselines);
    ++check.checked;
    check.error(std::fabs(fncs - 1.0), taxonomy.disciplines()[d], tolerance);
  }
  return check;
}

/// Engine rows against the brute-force oracle on every (publisher, scope) pair.
inline Check differential(const Built& built, double tolerance) {
  testkit::IndicatorOracle oracle(built.filtered, built.registry, built.taxonomy);
  auto indicators = compute_all_indicators(built.corpus, built.baselines);
  Check check;
  for (std::uint32_t p = 0; p < built.corpus.publisher_ids().size(); ++p) {
    const auto& id = built.corpus.publisher_ids()[p];
    for (auto scope : built.taxonomy.scopes()) {
      const auto& name = built.taxonomy.scope_name(scope);
      const auto expected = oracle.compute(id, scope.kind, name);
      const auto* row = indicators.find(p, scope);
      IndicatorRow actual;
      if (row != nullptr) {
        actual = *row;
      }
      ++check.checked;
      if (actual.pbk != expected.pbk || actual.pch != expected.pch || actual.cit != expected.cit) {
        check.fail("counts " + pair_name(id, name));
      }
      check.error(std::fabs(actual.fncs - expected.fncs), "fncs " + pair_name(id, name), tolerance);
      check.error(std::fabs(actual.ai - expected.ai), "ai " + pair_name(id, name), tolerance);
      check.error(std::fabs(actual.ed - expected.ed), "ed " + pair_name(id, name), tolerance);
    }
  }
  return check;
}

/// Citations times `factor`: fncs unchanged, cit scaled exactly.
inline Check citation_scaling(const std::vector<ItemRecord>& items, const PublisherRegistry& registry,
                              const TaxonomyMap& taxonomy, std::uint64_t factor, double tolerance) {
  auto scaled_items = items;
  for (auto& record : scaled_items) {
    record.citations *= factor;
  }
  Built base(registry, TaxonomyMap(taxonomy.rows()), items);
  Built scaled(registry, TaxonomyMap(taxonomy.rows()), scaled_items);
  auto a = compute_all_indicators(base.corpus, base.baselines);
  auto b = compute_all_indicators(scaled.corpus, scaled.baselines);
  Check check;
  for (std::uint32_t p = 0; p < base.corpus.publisher_ids().size(); ++p) {
    for (auto scope : taxonomy.scopes()) {
      const auto* x = a.find(p, scope);
      const auto* y = b.find(p, scope);
      if ((x == nullptr) != (y == nullptr)) {
        check.fail("row presence " + base.corpus.publisher_ids()[p]);
        continue;
      }
      if (x == nullptr) {
        continue;
      }
      ++check.checked;
      const auto what = pair_name(x->publisher_id, taxonomy.scope_name(scope));
      if (y->cit != x->cit * factor || y->pbk != x->pbk || y->pch != x->pch) {
        check.fail("cit " + what);
      }
      check.error(std::fabs(y->fncs - x->fncs), "fncs " + what, tolerance);
      if (y->ai != x->ai || y->ed != x->ed) {
        check.fail("ai/ed " + what);
      }
    }
  }
  return check;
}

/// Σ_fields ai × field share of books = 1 for every publisher with a book.
inline Check ai_closure(const Built& built, double tolerance) {
  auto indicators = compute_all_indicators(built.corpus, built.baselines);
  std::uint64_t total_books = 0;
  std::vector<std::uint64_t> field_books(built.taxonomy.field_count(), 0);
  for (const auto& item : built.corpus.items()) {
    if (item.doc_type != DocType::Book) {
      continue;
    }
    ++total_books;
    for (auto f : built.corpus.fields_of(item)) {
      ++field_books[f];
    }
  }
  Check check;
  for (std::uint32_t p = 0; p < built.corpus.publisher_ids().size(); ++p) {
    if (total_books == 0 || indicators.publisher_totals(p).pbk == 0) {
      continue;
    }
    double sum = 0.0;
    for (std::uint32_t f = 0; f < built.taxonomy.field_count(); ++f) {
      if (const auto* row = indicators.find(p, {ScopeKind::Field, f})) {
        sum += row->ai * static_cast<double>(field_books[f]) / static_cast<double>(total_books);
      }
    }
    ++check.checked;
    check.error(std::fabs(sum - 1.0), built.corpus.publisher_ids()[p], tolerance);
  }
  return check;
}

}  // namespace pubrank::test
