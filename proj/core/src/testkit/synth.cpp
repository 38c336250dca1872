#include "pubrank/testkit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pubrank/csv.hpp"
#include "pubrank/error.hpp"
#include "pubrank/report.hpp"

namespace pubrank::testkit {

namespace {

constexpr std::string_view kStems[] = {
    "Aldine",   "Bramble",   "Copperleaf", "Driftwood", "Elmstead", "Fernhill", "Granite",  "Harbor",
    "Ironwood", "Juniper",   "Kestrel",    "Larkspur",  "Meridian", "Northgate", "Oakridge", "Pinecrest",
    "Quarry",   "Riverbend", "Saltmarsh",  "Thornbury", "Umber",    "Valewood", "Westbrook", "Yarrow"};

constexpr std::string_view kCities[] = {"Amsterdam", "Berlin", "Boston", "Cambridge", "London", "New York", "Oxford"};

/// mt19937_64 output is fully specified by the standard; the transforms below are ours, so the
/// stream of draws is identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  std::size_t below(std::size_t n) {
    auto value = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return std::min(value, n - 1);
  }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

  std::size_t categorical(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) {
      total += w;
    }
    double target = uniform() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (target < weights[i]) {
        return i;
      }
      target -= weights[i];
    }
    return weights.size() - 1;
  }

  std::uint64_t citations(const CitationModel& model) {
    if (model.zero_probability >= 1.0 || bernoulli(model.zero_probability)) {
      return 0;
    }
    const double mean = model.mean / (1.0 - model.zero_probability);
    if (mean <= 0.0) {
      return 0;
    }
    const double p = 1.0 / (1.0 + mean);
    const double u = 1.0 - uniform();  // (0, 1]
    return static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-p)));
  }

 private:
  std::mt19937_64 engine_;
};

struct SynthPublisher {
  std::string id;
  std::string name;
  PublisherType type = PublisherType::CommercialAcademic;
  std::vector<std::string> raw_forms;  // name first, then explicit variants
  std::size_t owner = static_cast<std::size_t>(-1);
};

std::string upper(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') {
      c = static_cast<char>(c - 'a' + 'A');
    }
  }
  return out;
}

/// Random case flips and doubled/edge whitespace; folds back to the same string.
std::string perturb(std::string_view raw, Rng& rng) {
  std::string out;
  if (rng.bernoulli(0.5)) {
    out += rng.bernoulli(0.5) ? "  " : "\t";
  }
  for (char c : raw) {
    if (c == ' ') {
      out += rng.bernoulli(0.5) ? "   " : " ";
    } else if (c >= 'a' && c <= 'z' && rng.bernoulli(0.3)) {
      out.push_back(static_cast<char>(c - 'a' + 'A'));
    } else if (c >= 'A' && c <= 'Z' && rng.bernoulli(0.3)) {
      out.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      out.push_back(c);
    }
  }
  if (rng.bernoulli(0.5)) {
    out += " ";
  }
  return out;
}

std::string padded(std::size_t value, int width) {
  std::string digits = std::to_string(value);
  return std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(digits.size()))), '0') + digits;
}

void check_fraction(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ValidationError(std::string("synth parameter ") + name + " must lie in [0,1]");
  }
}

}  // namespace

void SynthParams::validate() const {
  if (publisher_count == 0) {
    throw ValidationError("synth parameter publisher_count must be positive");
  }
  if (min_items_per_publisher == 0 || max_items_per_publisher < min_items_per_publisher) {
    throw ValidationError("synth items per publisher must satisfy 0 < min <= max");
  }
  check_fraction(chapter_fraction, "chapter_fraction");
  check_fraction(edited_fraction, "edited_fraction");
  check_fraction(university_press_fraction, "university_press_fraction");
  check_fraction(acquired_fraction, "acquired_fraction");
  check_fraction(variant_noise, "variant_noise");
  check_fraction(excluded_fraction, "excluded_fraction");
  check_fraction(orphan_chapter_fraction, "orphan_chapter_fraction");
  check_fraction(book_citations.zero_probability, "book zero_probability");
  check_fraction(chapter_citations.zero_probability, "chapter zero_probability");
  if (!(book_citations.mean >= 0.0) || !(chapter_citations.mean >= 0.0)) {
    throw ValidationError("synth citation means must be non-negative");
  }
  if (category_multiplicity.empty()) {
    throw ValidationError("synth category_multiplicity must not be empty");
  }
  double total = 0.0;
  for (double w : category_multiplicity) {
    if (!(w >= 0.0)) {
      throw ValidationError("synth category_multiplicity weights must be non-negative");
    }
    total += w;
  }
  if (!(total > 0.0)) {
    throw ValidationError("synth category_multiplicity weights must not all be zero");
  }
  if (years.first > years.last) {
    throw ValidationError("synth year range is reversed");
  }
}

SynthOutput generate_corpus(const SynthParams& params, const TaxonomyMap& taxonomy) {
  params.validate();
  Rng rng(params.seed);
  SynthOutput output;

  // Allowed categories, grouped by field.
  const std::size_t field_count =
      params.field_limit == 0 ? taxonomy.field_count() : std::min(params.field_limit, taxonomy.field_count());
  std::vector<std::vector<const TaxonomyRow*>> by_field(field_count);
  std::vector<const TaxonomyRow*> allowed;
  for (const auto& row : taxonomy.rows()) {
    auto field = *taxonomy.field_index(row.field);
    if (field < field_count) {
      by_field[field].push_back(&row);
      allowed.push_back(&row);
    }
  }

  // Publishers, variants, acquisitions.
  std::vector<SynthPublisher> publishers(params.publisher_count);
  for (std::size_t i = 0; i < publishers.size(); ++i) {
    auto& p = publishers[i];
    p.id = "pub-" + padded(i + 1, 3);
    p.type = rng.bernoulli(params.university_press_fraction) ? PublisherType::UniversityPress
                                                             : PublisherType::CommercialAcademic;
    std::string stem(kStems[i % std::size(kStems)]);
    if (i >= std::size(kStems)) {
      stem += " " + std::to_string(i / std::size(kStems) + 1);
    }
    p.name = stem + (p.type == PublisherType::UniversityPress ? " University Press" : " Publishing");
    p.raw_forms = {p.name, p.name + " Ltd", upper(stem) + (p.type == PublisherType::UniversityPress ? " UNIV PRESS"
                                                                                                     : " PUBL")};
    if (i > 0 && rng.bernoulli(params.acquired_fraction)) {
      p.owner = rng.below(i);
    }
  }
  auto terminal = [&](std::size_t index) {
    while (publishers[index].owner != static_cast<std::size_t>(-1)) {
      index = publishers[index].owner;
    }
    return index;
  };

  {
    std::ostringstream out;
    out << "id,name,type,website\n";
    for (const auto& p : publishers) {
      csv::write_row(out, {p.id, p.name, std::string(to_string(p.type)), "https://" + slugify(p.name) + ".example"});
    }
    csv::write_row(out, {"annual-reviews", "Annual Reviews", "commercial", "https://www.annualreviews.org"});
    output.publishers_csv = out.str();
  }
  {
    std::ostringstream out;
    out << "raw,canonical_id,city,address\n";
    for (const auto& p : publishers) {
      for (std::size_t v = 1; v < p.raw_forms.size(); ++v) {
        csv::write_row(out, {p.raw_forms[v], p.id, std::string(kCities[rng.below(std::size(kCities))]), ""});
      }
    }
    output.variants_csv = out.str();
  }
  {
    std::ostringstream out;
    out << "acquired_id,acquirer_id,year\n";
    for (const auto& p : publishers) {
      if (p.owner != static_cast<std::size_t>(-1)) {
        auto year = params.years.first + static_cast<int>(rng.below(
                                             static_cast<std::size_t>(params.years.last - params.years.first + 1)));
        csv::write_row(out, {p.id, publishers[p.owner].id, std::to_string(year)});
      }
    }
    output.acquisitions_csv = out.str();
  }
  {
    std::ostringstream out;
    out << "category,discipline,field\n";
    for (const auto& row : taxonomy.rows()) {
      csv::write_row(out, {row.category, row.discipline, row.field});
    }
    output.taxonomy_csv = out.str();
  }

  auto draw_year = [&] {
    return params.years.first +
           static_cast<int>(rng.below(static_cast<std::size_t>(params.years.last - params.years.first + 1)));
  };
  auto draw_categories = [&] {
    const std::size_t wanted = rng.categorical(params.category_multiplicity) + 1;
    std::set<const TaxonomyRow*> chosen;
    const TaxonomyRow* first = allowed[rng.below(allowed.size())];
    chosen.insert(first);
    const auto& pool = params.spread == CategorySpread::SameField ? by_field[*taxonomy.field_index(first->field)]
                                                                  : allowed;
    for (std::size_t attempt = 0; chosen.size() < wanted && attempt < 8 * wanted; ++attempt) {
      chosen.insert(pool[rng.below(pool.size())]);
    }
    return std::vector<const TaxonomyRow*>(chosen.begin(), chosen.end());
  };
  auto raw_form = [&](const SynthPublisher& p) {
    const std::string& base = p.raw_forms[rng.below(p.raw_forms.size())];
    return rng.bernoulli(params.variant_noise) ? perturb(base, rng) : base;
  };

  struct Emitted {
    ItemRecord record;
    std::vector<const TaxonomyRow*> rows;
    std::size_t publisher = 0;
    bool retained = false;
  };
  std::vector<Emitted> emitted;
  std::set<std::string> edited_books;

  for (std::size_t i = 0; i < publishers.size(); ++i) {
    const auto& p = publishers[i];
    const std::size_t n = rng.between(params.min_items_per_publisher, params.max_items_per_publisher);
    std::size_t chapters = 0;
    for (std::size_t k = 0; k < n; ++k) {
      chapters += rng.bernoulli(params.chapter_fraction) ? 1 : 0;
    }
    const std::size_t books = n - chapters;
    std::vector<std::string> book_ids;
    for (std::size_t b = 0; b < books; ++b) {
      Emitted e;
      e.publisher = i;
      e.retained = true;
      e.rows = draw_categories();
      auto& r = e.record;
      r.id = p.id + "-b" + padded(b + 1, 5);
      r.doc_type = DocType::Book;
      r.doc_label = "book";
      r.raw_publisher = raw_form(p);
      r.year = draw_year();
      r.citations = rng.citations(params.book_citations);
      r.edited = rng.bernoulli(params.edited_fraction);
      for (const auto* row : e.rows) {
        r.categories.push_back(row->category);
      }
      std::sort(r.categories.begin(), r.categories.end());
      if (*r.edited) {
        edited_books.insert(r.id);
      }
      book_ids.push_back(r.id);
      emitted.push_back(std::move(e));
    }
    for (std::size_t c = 0; c < chapters; ++c) {
      Emitted e;
      e.publisher = i;
      e.retained = true;
      e.rows = draw_categories();
      auto& r = e.record;
      r.id = p.id + "-c" + padded(c + 1, 5);
      r.doc_type = DocType::BookChapter;
      r.doc_label = "chapter";
      r.raw_publisher = raw_form(p);
      r.year = draw_year();
      r.citations = rng.citations(params.chapter_citations);
      if (book_ids.empty() || rng.bernoulli(params.orphan_chapter_fraction)) {
        r.parent_book_id = p.id + "-missing" + padded(c + 1, 5);
      } else {
        r.parent_book_id = book_ids[rng.below(book_ids.size())];
      }
      for (const auto* row : e.rows) {
        r.categories.push_back(row->category);
      }
      std::sort(r.categories.begin(), r.categories.end());
      emitted.push_back(std::move(e));
    }
  }

  // Records the filter has to drop.
  const auto extra = static_cast<std::size_t>(std::llround(params.excluded_fraction * static_cast<double>(emitted.size())));
  for (std::size_t x = 0; x < extra; ++x) {
    Emitted e;
    e.publisher = rng.below(publishers.size());
    e.rows = draw_categories();
    auto& r = e.record;
    r.id = "noise-" + padded(x + 1, 6);
    r.doc_type = DocType::Book;
    r.doc_label = "book";
    r.raw_publisher = raw_form(publishers[e.publisher]);
    r.year = draw_year();
    r.citations = rng.citations(params.book_citations);
    switch (rng.below(4)) {
      case 0:
        r.doc_type = DocType::Other;
        r.doc_label = rng.bernoulli(0.5) ? "proceedings paper" : "review";
        break;
      case 1:
        r.is_serial = true;
        break;
      case 2:
        r.raw_publisher = rng.bernoulli(0.5) ? "Annual Reviews" : "ANNUAL  REVIEWS";
        break;
      default:
        r.year = rng.bernoulli(0.5) ? params.years.first - 1 : params.years.last + 1;
        break;
    }
    for (const auto* row : e.rows) {
      r.categories.push_back(row->category);
    }
    std::sort(r.categories.begin(), r.categories.end());
    emitted.push_back(std::move(e));
  }

  // Deterministic Fisher-Yates so books, chapters and noise interleave.
  for (std::size_t i = emitted.size(); i > 1; --i) {
    std::swap(emitted[i - 1], emitted[rng.below(i)]);
  }

  auto& ledger = output.ledger;
  std::ostringstream corpus;
  for (const auto& e : emitted) {
    corpus << to_corpus_line(e.record) << '\n';
    ++ledger.emitted_records;
    if (!e.retained) {
      continue;
    }
    ++ledger.retained_records;
    const auto& owner = publishers[terminal(e.publisher)].id;
    const bool book = e.record.doc_type == DocType::Book;
    const bool edited = !book && edited_books.contains(*e.record.parent_book_id);
    auto bump = [&](LedgerCounts& counts) {
      counts.pbk += book ? 1 : 0;
      counts.pch += book ? 0 : 1;
      counts.cit += e.record.citations;
      counts.edited_chapters += edited ? 1 : 0;
    };
    bump(ledger.totals);
    bump(ledger.publisher_totals[owner]);
    std::set<std::string> disciplines;
    std::set<std::string> fields;
    for (const auto* row : e.rows) {
      disciplines.insert(row->discipline);
      fields.insert(row->field);
    }
    for (const auto& d : disciplines) {
      bump(ledger.scope_counts[{owner, ScopeKind::Discipline, d}]);
      auto& cell = ledger.cells[{d, e.record.doc_type, e.record.year}];
      ++cell.item_count;
      cell.citation_sum += e.record.citations;
    }
    for (const auto& f : fields) {
      bump(ledger.scope_counts[{owner, ScopeKind::Field, f}]);
    }
  }
  output.corpus_jsonl = corpus.str();
  return output;
}

PublisherRegistry SynthOutput::registry() const {
  std::istringstream variants(variants_csv);
  std::istringstream publishers(publishers_csv);
  std::istringstream acquisitions(acquisitions_csv);
  return load_registry(variants, publishers, acquisitions);
}

IngestResult SynthOutput::ingest() const {
  std::istringstream in(corpus_jsonl);
  return ingest_corpus(in);
}

void SynthOutput::write(const std::filesystem::path& directory) const {
  std::error_code ec;
  std::filesystem::create_directories(directory / "registry", ec);
  if (ec) {
    throw IoError("cannot create " + (directory / "registry").string() + ": " + ec.message());
  }
  write_file_atomically(directory / "corpus.jsonl", corpus_jsonl);
  write_file_atomically(directory / "taxonomy.csv", taxonomy_csv);
  write_file_atomically(directory / "ledger.json", ledger_to_json(ledger));
  write_file_atomically(directory / "registry" / "publishers.csv", publishers_csv);
  write_file_atomically(directory / "registry" / "variants.csv", variants_csv);
  write_file_atomically(directory / "registry" / "acquisitions.csv", acquisitions_csv);
}

std::string ledger_to_json(const GroundTruthLedger& ledger) {
  using nlohmann::ordered_json;
  auto counts = [](const LedgerCounts& c) {
    return ordered_json{{"pbk", c.pbk}, {"pch", c.pch}, {"cit", c.cit}, {"edited_chapters", c.edited_chapters}};
  };
  ordered_json doc;
  doc["emitted_records"] = ledger.emitted_records;
  doc["retained_records"] = ledger.retained_records;
  doc["totals"] = counts(ledger.totals);
  doc["publishers"] = ordered_json::object();
  for (const auto& [id, c] : ledger.publisher_totals) {
    doc["publishers"][id] = counts(c);
  }
  doc["scopes"] = ordered_json::array();
  for (const auto& [key, c] : ledger.scope_counts) {
    const auto& [publisher, kind, scope] = key;
    ordered_json entry{{"publisher", publisher},
                       {"kind", kind == ScopeKind::Field ? "field" : "discipline"},
                       {"scope", scope}};
    entry.update(counts(c));
    doc["scopes"].push_back(std::move(entry));
  }
  doc["cells"] = ordered_json::array();
  for (const auto& [key, cell] : ledger.cells) {
    const auto& [discipline, type, year] = key;
    doc["cells"].push_back({{"discipline", discipline},
                            {"doc_type", to_string(type)},
                            {"year", year},
                            {"items", cell.item_count},
                            {"citations", cell.citation_sum}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace pubrank::testkit
