#include "pubrank/indicators.hpp"

#include <algorithm>

#include "pubrank/error.hpp"

namespace pubrank {

namespace {

int type_slot(DocType type) { return type == DocType::BookChapter ? 1 : 0; }

/// Per (publisher, scope) running totals. Expected citations are kept as integer multiplicities
/// of (cell, k) terms, each worth mean(cell) / k, so the final sum can be taken in a canonical
/// order regardless of item order.
struct Accumulator {
  std::uint64_t books = 0;
  std::uint64_t chapters = 0;
  std::uint64_t citations = 0;
  std::uint64_t edited_chapters = 0;
  std::vector<std::uint64_t> terms;  // (cell index << 16) | k
};

constexpr int kTermShift = 16;

void accumulate(Accumulator& acc, const AnalysisItem& item, Scope scope, const AnalysisCorpus& corpus,
                const BaselineTable* baselines) {
  if (item.doc_type == DocType::Book) {
    ++acc.books;
  } else {
    ++acc.chapters;
    if (item.in_edited_book) {
      ++acc.edited_chapters;
    }
  }
  acc.citations += item.citations;
  if (baselines == nullptr) {
    return;
  }

  auto term = [&](std::uint32_t discipline, std::uint64_t k) {
    auto cell = baselines->cell_index({discipline, item.doc_type, item.year});
    if (cell < 0) {
      throw ConsistencyError("baseline table has no cell for an item of the corpus");
    }
    acc.terms.push_back((static_cast<std::uint64_t>(cell) << kTermShift) | k);
  };

  if (scope.kind == ScopeKind::Discipline) {
    term(scope.index, 1);
    return;
  }
  std::uint64_t k = 0;
  for (auto d : corpus.disciplines_of(item)) {
    k += corpus.field_of_discipline(d) == scope.index ? 1 : 0;
  }
  for (auto d : corpus.disciplines_of(item)) {
    if (corpus.field_of_discipline(d) == scope.index) {
      term(d, k);
    }
  }
}

double expected_citations(std::vector<std::uint64_t>& terms, const BaselineTable& baselines) {
  std::sort(terms.begin(), terms.end());
  double expected = 0.0;
  const auto cells = baselines.cells();
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) {
      ++j;
    }
    const auto& cell = cells[terms[i] >> kTermShift];
    const auto k = static_cast<double>(terms[i] & ((1U << kTermShift) - 1));
    expected += static_cast<double>(j - i) * cell.mean() / k;
    i = j;
  }
  return expected;
}

double fncs_of(Accumulator& acc, const BaselineTable& baselines) {
  double expected = expected_citations(acc.terms, baselines);
  // Cells include the publisher's own items, so expected == 0 implies no citations at all.
  if (expected <= 0.0) {
    return 0.0;
  }
  return static_cast<double>(acc.citations) / expected;
}

double activity_index(std::uint64_t scope_books_of_publisher, std::uint64_t books_of_publisher,
                      std::uint64_t books_in_scope, std::uint64_t books_total) {
  if (books_of_publisher == 0 || books_in_scope == 0) {
    return 0.0;
  }
  return static_cast<double>(scope_books_of_publisher * books_total) /
         static_cast<double>(books_of_publisher * books_in_scope);
}

double edited_share(std::uint64_t edited_chapters, std::uint64_t chapters) {
  if (chapters == 0) {
    return 0.0;
  }
  return 100.0 * static_cast<double>(edited_chapters) / static_cast<double>(chapters);
}

void check_baselines(const AnalysisCorpus& corpus, const BaselineTable& baselines) {
  if (baselines.corpus_fingerprint() != corpus.fingerprint()) {
    throw ConsistencyError("baseline table was built from corpus " + fingerprint_hex(baselines.corpus_fingerprint()) +
                           " but the corpus is " + fingerprint_hex(corpus.fingerprint()));
  }
}

Accumulator scan(std::string_view publisher_id, Scope scope, const AnalysisCorpus& corpus,
                 const BaselineTable* baselines) {
  Accumulator acc;
  auto publisher = corpus.publisher_index(publisher_id);
  if (!publisher) {
    return acc;
  }
  for (const auto& item : corpus.items()) {
    if (item.publisher == *publisher && corpus.in_scope(item, scope)) {
      accumulate(acc, item, scope, corpus, baselines);
    }
  }
  return acc;
}

}  // namespace

BaselineTable::BaselineTable(std::uint64_t corpus_fingerprint, std::vector<BaselineCell> cells, int min_year,
                             int max_year, std::size_t discipline_count)
    : corpus_fingerprint_(corpus_fingerprint),
      cells_(std::move(cells)),
      min_year_(min_year),
      year_span_(max_year >= min_year ? max_year - min_year + 1 : 0) {
  std::sort(cells_.begin(), cells_.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
  dense_.assign(discipline_count * 2 * static_cast<std::size_t>(year_span_), -1);
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const auto& key = cells_[i].key;
    if (key.discipline >= discipline_count || key.year < min_year_ || key.year >= min_year_ + year_span_ ||
        key.doc_type == DocType::Other) {
      throw ConsistencyError("baseline cell outside the declared table bounds");
    }
    dense_[(key.discipline * 2 + type_slot(key.doc_type)) * year_span_ + (key.year - min_year_)] =
        static_cast<std::int32_t>(i);
  }
}

std::int64_t BaselineTable::cell_index(const BaselineKey& key) const noexcept {
  if (key.year < min_year_ || key.year >= min_year_ + year_span_ || key.doc_type == DocType::Other) {
    return -1;
  }
  std::size_t slot = (key.discipline * 2 + type_slot(key.doc_type)) * static_cast<std::size_t>(year_span_) +
                     static_cast<std::size_t>(key.year - min_year_);
  return slot < dense_.size() ? dense_[slot] : -1;
}

const BaselineCell* BaselineTable::find(const BaselineKey& key) const noexcept {
  auto index = cell_index(key);
  return index < 0 ? nullptr : &cells_[static_cast<std::size_t>(index)];
}

BaselineTable compute_baselines(const AnalysisCorpus& corpus) {
  const int min_year = corpus.min_year();
  const int span = corpus.max_year() >= min_year ? corpus.max_year() - min_year + 1 : 0;
  const std::size_t disciplines = corpus.discipline_count();
  std::vector<std::uint64_t> counts(disciplines * 2 * static_cast<std::size_t>(span), 0);
  std::vector<std::uint64_t> sums(counts.size(), 0);

  for (const auto& item : corpus.items()) {
    for (auto d : corpus.disciplines_of(item)) {
      std::size_t slot = (d * 2 + type_slot(item.doc_type)) * static_cast<std::size_t>(span) +
                         static_cast<std::size_t>(item.year - min_year);
      ++counts[slot];
      sums[slot] += item.citations;
    }
  }

  std::vector<BaselineCell> cells;
  for (std::uint32_t d = 0; d < disciplines; ++d) {
    for (int t = 0; t < 2; ++t) {
      for (int y = 0; y < span; ++y) {
        std::size_t slot = (d * 2 + static_cast<std::size_t>(t)) * static_cast<std::size_t>(span) +
                           static_cast<std::size_t>(y);
        if (counts[slot] == 0) {
          continue;
        }
        cells.push_back({{d, t == 0 ? DocType::Book : DocType::BookChapter, min_year + y}, counts[slot], sums[slot]});
      }
    }
  }
  return BaselineTable(corpus.fingerprint(), std::move(cells), min_year, corpus.max_year(), disciplines);
}

IndicatorCounts compute_counts(std::string_view publisher_id, Scope scope, const AnalysisCorpus& corpus) {
  auto acc = scan(publisher_id, scope, corpus, nullptr);
  return {acc.books, acc.chapters, acc.citations};
}

double compute_fncs(std::string_view publisher_id, Scope scope, const AnalysisCorpus& corpus,
                    const BaselineTable& baselines) {
  check_baselines(corpus, baselines);
  auto acc = scan(publisher_id, scope, corpus, &baselines);
  return fncs_of(acc, baselines);
}

double compute_ai(std::string_view publisher_id, Scope scope, const AnalysisCorpus& corpus) {
  auto publisher = corpus.publisher_index(publisher_id);
  if (!publisher) {
    return 0.0;
  }
  std::uint64_t mine_in_scope = 0;
  std::uint64_t mine = 0;
  std::uint64_t in_scope = 0;
  std::uint64_t total = 0;
  for (const auto& item : corpus.items()) {
    if (item.doc_type != DocType::Book) {
      continue;
    }
    const bool scoped = corpus.in_scope(item, scope);
    const bool own = item.publisher == *publisher;
    ++total;
    in_scope += scoped ? 1 : 0;
    mine += own ? 1 : 0;
    mine_in_scope += (own && scoped) ? 1 : 0;
  }
  return activity_index(mine_in_scope, mine, in_scope, total);
}

double compute_ed(std::string_view publisher_id, Scope scope, const AnalysisCorpus& corpus) {
  auto acc = scan(publisher_id, scope, corpus, nullptr);
  return edited_share(acc.edited_chapters, acc.chapters);
}

IndicatorRow compute_row(std::string_view publisher_id, Scope scope, const AnalysisCorpus& corpus,
                         const BaselineTable& baselines) {
  check_baselines(corpus, baselines);
  auto acc = scan(publisher_id, scope, corpus, &baselines);
  IndicatorRow row;
  row.publisher_id = std::string(publisher_id);
  row.scope = scope;
  row.pbk = acc.books;
  row.pch = acc.chapters;
  row.cit = acc.citations;
  row.fncs = fncs_of(acc, baselines);
  row.ai = compute_ai(publisher_id, scope, corpus);
  row.ed = edited_share(acc.edited_chapters, acc.chapters);
  return row;
}

const IndicatorRow* IndicatorSet::find(std::uint32_t publisher, Scope scope) const noexcept {
  std::size_t scope_slot = scope.kind == ScopeKind::Field ? scope.index : field_count_ + scope.index;
  std::size_t slot = static_cast<std::size_t>(publisher) * scope_count_ + scope_slot;
  if (scope_slot >= scope_count_ || slot >= slot_.size() || slot_[slot] < 0) {
    return nullptr;
  }
  return &rows_[static_cast<std::size_t>(slot_[slot])];
}

std::vector<const IndicatorRow*> IndicatorSet::rows_in(Scope scope) const {
  std::vector<const IndicatorRow*> out;
  const std::size_t publishers = scope_count_ == 0 ? 0 : slot_.size() / scope_count_;
  for (std::uint32_t p = 0; p < publishers; ++p) {
    if (const auto* row = find(p, scope)) {
      out.push_back(row);
    }
  }
  return out;
}

IndicatorSet compute_all_indicators(const AnalysisCorpus& corpus, const BaselineTable& baselines) {
  check_baselines(corpus, baselines);

  IndicatorSet set;
  set.corpus_fingerprint_ = corpus.fingerprint();
  set.scope_count_ = corpus.scope_count();
  set.field_count_ = corpus.field_count();
  const std::size_t publishers = corpus.publisher_ids().size();
  set.slot_.assign(publishers * set.scope_count_, -1);
  set.totals_.assign(publishers, {});

  std::vector<Accumulator> accumulators;
  std::vector<std::uint64_t> scope_books(set.scope_count_, 0);
  std::uint64_t total_books = 0;

  auto visit = [&](const AnalysisItem& item, Scope scope) {
    const std::size_t scope_slot = corpus.scope_slot(scope);
    auto& slot = set.slot_[item.publisher * set.scope_count_ + scope_slot];
    if (slot < 0) {
      slot = static_cast<std::int32_t>(accumulators.size());
      accumulators.emplace_back();
    }
    accumulate(accumulators[static_cast<std::size_t>(slot)], item, scope, corpus, &baselines);
    if (item.doc_type == DocType::Book) {
      ++scope_books[scope_slot];
    }
  };

  for (const auto& item : corpus.items()) {
    auto& totals = set.totals_[item.publisher];
    if (item.doc_type == DocType::Book) {
      ++totals.pbk;
      ++total_books;
    } else {
      ++totals.pch;
    }
    totals.cit += item.citations;
    for (auto f : corpus.fields_of(item)) {
      visit(item, {ScopeKind::Field, f});
    }
    for (auto d : corpus.disciplines_of(item)) {
      visit(item, {ScopeKind::Discipline, d});
    }
  }

  // Emit rows in (publisher, scope) order so the set's layout does not depend on item order.
  set.rows_.reserve(accumulators.size());
  for (std::size_t slot = 0; slot < set.slot_.size(); ++slot) {
    if (set.slot_[slot] < 0) {
      continue;
    }
    auto& acc = accumulators[static_cast<std::size_t>(set.slot_[slot])];
    const auto publisher = static_cast<std::uint32_t>(slot / set.scope_count_);
    const std::size_t scope_slot = slot % set.scope_count_;
    Scope scope = scope_slot < set.field_count_
                      ? Scope{ScopeKind::Field, static_cast<std::uint32_t>(scope_slot)}
                      : Scope{ScopeKind::Discipline, static_cast<std::uint32_t>(scope_slot - set.field_count_)};

    IndicatorRow row;
    row.publisher_id = corpus.publisher_ids()[publisher];
    row.scope = scope;
    row.pbk = acc.books;
    row.pch = acc.chapters;
    row.cit = acc.citations;
    row.fncs = fncs_of(acc, baselines);
    row.ai = activity_index(acc.books, set.totals_[publisher].pbk, scope_books[scope_slot], total_books);
    row.ed = edited_share(acc.edited_chapters, acc.chapters);
    set.slot_[slot] = static_cast<std::int32_t>(set.rows_.size());
    set.rows_.push_back(std::move(row));
    acc.terms = {};
  }
  return set;
}

}  // namespace pubrank
