#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <memory>

#include <CLI11.hpp>

#include "pubrank/corpus_stats.hpp"
#include "pubrank/error.hpp"
#include "pubrank/testkit/synth.hpp"

namespace pubrank::cli {

namespace {

constexpr std::size_t kMaxPrintedDiagnostics = 25;

/// Loaded inputs for every subcommand except synth.
struct Pipeline {
  explicit Pipeline(const RunConfig& config)
      : registry(load_registry_directory(config.registry_dir)),
        taxonomy(config.taxonomy.empty() ? sample_taxonomy() : load_taxonomy_file(config.taxonomy)),
        ingest(ingest_corpus_file(config.corpus)),
        filtered(filter_corpus(ingest.items, registry, FilterOptions{config.window, {"Annual Reviews"}})),
        corpus(AnalysisCorpus::build(filtered, registry, taxonomy, config.mode)) {}

  PublisherRegistry registry;
  TaxonomyMap taxonomy;
  IngestResult ingest;
  std::vector<ItemRecord> filtered;
  AnalysisCorpus corpus;
};

void print_diagnostics(const Pipeline& pipeline, std::ostream& err) {
  std::size_t printed = 0;
  for (const auto& diagnostic : pipeline.ingest.diagnostics) {
    if (printed++ < kMaxPrintedDiagnostics) {
      err << "corpus: " << format_diagnostic(diagnostic) << '\n';
    }
  }
  if (printed > kMaxPrintedDiagnostics) {
    err << "corpus: " << (printed - kMaxPrintedDiagnostics) << " more diagnostic(s) not shown\n";
  }
  for (const auto& diagnostic : pipeline.corpus.report().diagnostics()) {
    err << "resolve: " << format_diagnostic(diagnostic) << '\n';
  }
}

void print_summary(const Pipeline& p, std::ostream& out) {
  out << "records: " << p.ingest.items.size() << " accepted, " << p.ingest.rejected_count() << " rejected\n"
      << "filtered: " << p.filtered.size() << " books and chapters in " << p.corpus.items().size()
      << " analysed items\n"
      << "registry: " << p.registry.publishers().size() << " publishers, " << p.registry.variants().size()
      << " variants, " << p.registry.acquisitions().size() << " acquisitions\n"
      << "taxonomy: " << p.taxonomy.field_count() << " fields, " << p.taxonomy.discipline_count()
      << " disciplines, " << p.taxonomy.category_count() << " categories\n"
      << "corpus fingerprint: " << fingerprint_hex(p.corpus.fingerprint()) << '\n';
}

RankingOptions ranking_options(const RunConfig& config) {
  return {config.policy, config.window, config.type_filter};
}

/// Accepts a publisher id, canonical name, or any registered variant.
std::string find_publisher(const PublisherRegistry& registry, const std::string& query) {
  if (registry.find(query) != nullptr) {
    return query;
  }
  if (const std::string* id = registry.try_resolve(query)) {
    return *id;
  }
  throw NotFoundError("no publisher matches \"" + query + "\"");
}

void add_input_options(CLI::App& command, RunConfig& config, std::string& window, std::string& basis,
                       std::string& formats, std::string& type, bool& strict) {
  command.add_option("--corpus", config.corpus, "JSON-lines corpus file")->required();
  command.add_option("--registry-dir", config.registry_dir,
                     "directory with publishers.csv, variants.csv, acquisitions.csv")
      ->required();
  command.add_option("--taxonomy", config.taxonomy, "taxonomy.csv (default: built-in sample taxonomy)");
  command.add_option("--window", window, "study window YYYY:YYYY")->capture_default_str();
  command.add_option("--min-books", config.policy.min_books, "minimum books to enter a ranking")
      ->capture_default_str();
  command.add_option("--min-chapters", config.policy.min_chapters, "minimum chapters to enter a ranking")
      ->capture_default_str();
  command.add_option("--threshold-basis", basis, "count thresholds per scope or over the whole corpus")
      ->check(CLI::IsMember({"scope", "global"}))
      ->capture_default_str();
  command.add_option("--format", formats, "comma separated: csv,json,html")->capture_default_str();
  command.add_option("--out", config.out, "output directory");
  command.add_option("--type", type, "publisher type filter")
      ->check(CLI::IsMember({"commercial", "university_press", "all"}))
      ->capture_default_str();
  command.add_flag("--strict", strict, "fail on unresolved publishers instead of excluding them");
}

void finish_config(RunConfig& config, const std::string& window, const std::string& basis,
                   const std::string& formats, const std::string& type, bool strict) {
  config.window = parse_year_window(window);
  config.policy.basis = basis == "global" ? ThresholdBasis::Global : ThresholdBasis::PerScope;
  config.formats = parse_export_formats(formats);
  config.type_filter = type == "all" ? std::nullopt : parse_publisher_type(type);
  config.mode = strict ? ResolutionMode::Strict : ResolutionMode::Lenient;
}

}  // namespace

void RunConfig::validate(bool needs_inputs, bool needs_out) const {
  if (window.first > window.last) {
    throw FormatError("window start is after its end");
  }
  if (formats.empty()) {
    throw FormatError("at least one output format is required");
  }
  if (needs_inputs && (corpus.empty() || registry_dir.empty())) {
    throw FormatError("--corpus and --registry-dir are required");
  }
  if (needs_out && out.empty()) {
    throw FormatError("--out is required");
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pubrank: bibliometric rankings of academic book publishers"};
  app.name("pubrank");
  app.require_subcommand(1);

  RunConfig config;
  std::string window = "2009:2013";
  std::string basis = "scope";
  std::string formats = "csv";
  std::string type = "all";
  bool strict = false;
  std::string publisher_query;

  auto* validate = app.add_subcommand("validate", "load and check all inputs, print diagnostics");
  auto* rank = app.add_subcommand("rank", "compute every ranking table and export it");
  auto* profile = app.add_subcommand("profile", "export the profile of one publisher");
  auto* stats = app.add_subcommand("stats", "print per-field corpus statistics");
  for (auto* command : {validate, rank, profile, stats}) {
    add_input_options(*command, config, window, basis, formats, type, strict);
  }
  profile->add_option("publisher", publisher_query, "publisher id, name, or variant")->required();

  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus with registry, taxonomy and ledger");
  testkit::SynthParams params;
  double multi_category = 0.1;
  bool same_field = false;
  std::string synth_window = "2009:2013";
  std::filesystem::path synth_taxonomy;
  std::filesystem::path synth_out;
  synth->add_option("--seed", params.seed, "random seed")->capture_default_str();
  synth->add_option("--publishers", params.publisher_count, "number of publishers")->capture_default_str();
  synth->add_option("--min-items", params.min_items_per_publisher, "minimum items per publisher")
      ->capture_default_str();
  synth->add_option("--max-items", params.max_items_per_publisher, "maximum items per publisher")
      ->capture_default_str();
  synth->add_option("--chapter-fraction", params.chapter_fraction, "share of items that are chapters")
      ->capture_default_str();
  synth->add_option("--edited-fraction", params.edited_fraction, "share of books that are edited")
      ->capture_default_str();
  synth->add_option("--multi-category", multi_category, "share of items with two categories")
      ->capture_default_str();
  synth->add_flag("--same-field", same_field, "keep extra categories inside the first category's field");
  synth->add_option("--book-citations", params.book_citations.mean, "mean citations per book")
      ->capture_default_str();
  synth->add_option("--book-zero", params.book_citations.zero_probability, "share of uncited books")
      ->capture_default_str();
  synth->add_option("--chapter-citations", params.chapter_citations.mean, "mean citations per chapter")
      ->capture_default_str();
  synth->add_option("--chapter-zero", params.chapter_citations.zero_probability, "share of uncited chapters")
      ->capture_default_str();
  synth->add_option("--university-fraction", params.university_press_fraction, "share of university presses")
      ->capture_default_str();
  synth->add_option("--acquired-fraction", params.acquired_fraction, "share of publishers acquired by another")
      ->capture_default_str();
  synth->add_option("--variant-noise", params.variant_noise, "share of records with perturbed publisher strings")
      ->capture_default_str();
  synth->add_option("--excluded-fraction", params.excluded_fraction, "extra records the filter must drop")
      ->capture_default_str();
  synth->add_option("--orphan-fraction", params.orphan_chapter_fraction, "share of chapters without parent book")
      ->capture_default_str();
  synth->add_option("--window", synth_window, "publication years YYYY:YYYY")->capture_default_str();
  synth->add_option("--taxonomy", synth_taxonomy, "taxonomy.csv (default: built-in sample taxonomy)");
  synth->add_option("--out", synth_out, "output directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (synth->parsed()) {
      if (!(multi_category >= 0.0 && multi_category <= 1.0)) {
        throw ValidationError("--multi-category must lie in [0,1]");
      }
      params.category_multiplicity = {1.0 - multi_category, multi_category};
      params.spread = same_field ? testkit::CategorySpread::SameField : testkit::CategorySpread::Anywhere;
      params.years = parse_year_window(synth_window);
      auto taxonomy = synth_taxonomy.empty() ? sample_taxonomy() : load_taxonomy_file(synth_taxonomy);
      auto generated = testkit::generate_corpus(params, taxonomy);
      generated.write(synth_out);
      out << "synth: wrote " << generated.ledger.emitted_records << " records (" << generated.ledger.retained_records
          << " retained by the filter) to " << synth_out.string() << '\n';
      return 0;
    }

    finish_config(config, window, basis, formats, type, strict);
    config.validate(true, rank->parsed());

    const auto started = std::chrono::steady_clock::now();
    Pipeline pipeline(config);
    print_diagnostics(pipeline, err);

    if (validate->parsed()) {
      print_summary(pipeline, out);
      out << "validate: ok\n";
      return 0;
    }

    if (stats->parsed()) {
      auto corpus_statistics = corpus_stats(pipeline.corpus, pipeline.registry, pipeline.taxonomy);
      write_stats_text(out, corpus_statistics);
      if (!config.out.empty()) {
        std::filesystem::create_directories(config.out);
        write_file_atomically(config.out / "stats.json", render_stats_json(corpus_statistics));
      }
      return 0;
    }

    const auto baselines = compute_baselines(pipeline.corpus);
    const RankingEngine engine(pipeline.corpus, pipeline.registry, pipeline.taxonomy, baselines);
    const auto tables = engine.build_all_rankings(ranking_options(config));

    if (rank->parsed()) {
      auto written = export_rankings(tables, config.formats, config.out);
      const auto elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      std::size_t rows = 0;
      for (const auto& table : tables) {
        rows += table.rows.size();
      }
      out << "rank: " << tables.size() << " tables, " << rows << " rows, " << written.size() << " files in "
          << config.out.string() << " (" << static_cast<long long>(elapsed * 1000) << " ms)\n";
      return 0;
    }

    auto publisher_profile = build_profile(find_publisher(pipeline.registry, publisher_query), tables,
                                           pipeline.registry);
    if (config.out.empty()) {
      out << render_profile(publisher_profile, config.formats.front());
      return 0;
    }
    for (auto format : config.formats) {
      out << "profile: wrote " << export_profile(publisher_profile, format, config.out).string() << '\n';
    }
    return 0;
  } catch (const Error& e) {
    err << "pubrank: error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "pubrank: error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace pubrank::cli
