#include "pubrank/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pubrank/csv.hpp"
#include "pubrank/error.hpp"

namespace pubrank {

namespace {

using nlohmann::ordered_json;

std::string_view kind_name(ScopeKind kind) { return kind == ScopeKind::Field ? "field" : "discipline"; }

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&#39;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

ordered_json metadata_json(const RankingMetadata& metadata) {
  ordered_json out;
  out["corpus_fingerprint"] = fingerprint_hex(metadata.corpus_fingerprint);
  out["window"] = {{"first", metadata.window.first}, {"last", metadata.window.last}};
  out["policy"] = {{"min_books", metadata.policy.min_books},
                   {"min_chapters", metadata.policy.min_chapters},
                   {"basis", to_string(metadata.policy.basis)}};
  out["type_filter"] = metadata.type_filter ? ordered_json(to_string(*metadata.type_filter)) : ordered_json(nullptr);
  return out;
}

ordered_json indicator_fields(const IndicatorRow& row) {
  return {{"pbk", row.pbk}, {"pch", row.pch}, {"cit", row.cit},
          {"fncs", row.fncs}, {"ai", row.ai},   {"ed", row.ed}};
}

constexpr std::string_view kStyle =
    "body{font-family:sans-serif;margin:2em}table{border-collapse:collapse}"
    "th,td{border:1px solid #bbb;padding:4px 8px}td.n{text-align:right}th{background:#eee}";

void html_open(std::ostream& out, std::string_view title) {
  out << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>" << html_escape(title)
      << "</title>\n<style>" << kStyle << "</style>\n</head>\n<body>\n<h1>" << html_escape(title) << "</h1>\n";
}

void html_indicator_cells(std::ostream& out, const IndicatorRow& row) {
  out << "<td class=\"n\">" << row.pbk << "</td><td class=\"n\">" << row.pch << "</td><td class=\"n\">" << row.cit
      << "</td><td class=\"n\">" << format_fixed2(row.fncs) << "</td><td class=\"n\">" << format_fixed2(row.ai)
      << "</td><td class=\"n\">" << format_percent(row.ed) << "%</td>";
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  return out;
}

void ensure_directory(const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec || !std::filesystem::is_directory(directory)) {
    throw IoError("cannot create output directory " + directory.string() + (ec ? ": " + ec.message() : ""));
  }
}

}  // namespace

std::string_view to_string(ExportFormat format) {
  switch (format) {
    case ExportFormat::Csv:
      return "csv";
    case ExportFormat::Json:
      return "json";
    case ExportFormat::Html:
      return "html";
  }
  return "csv";
}

std::string_view extension(ExportFormat format) { return to_string(format); }

ExportFormat parse_export_format(std::string_view name) {
  if (name == "csv") {
    return ExportFormat::Csv;
  }
  if (name == "json") {
    return ExportFormat::Json;
  }
  if (name == "html") {
    return ExportFormat::Html;
  }
  throw FormatError("unknown export format \"" + std::string(name) + "\" (expected csv, json, or html)");
}

std::vector<ExportFormat> parse_export_formats(std::string_view list) {
  std::set<ExportFormat> formats;
  while (true) {
    auto comma = list.find(',');
    formats.insert(parse_export_format(list.substr(0, comma)));
    if (comma == std::string_view::npos) {
      break;
    }
    list.remove_prefix(comma + 1);
  }
  return {formats.begin(), formats.end()};
}

std::string slugify(std::string_view name) {
  std::string slug;
  slug.reserve(name.size());
  for (char c : name) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      slug.push_back(c);
    } else if (c >= 'A' && c <= 'Z') {
      slug.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      slug.push_back('-');
    }
  }
  return slug;
}

std::string ranking_file_name(const RankingTable& table, ExportFormat format) {
  return std::string(kind_name(table.scope.kind)) + "_" + slugify(table.scope_name) + "." +
         std::string(extension(format));
}

std::string format_fixed2(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  return buffer;
}

std::string format_percent(double value) { return std::to_string(std::llround(value)); }

void write_ranking_csv(std::ostream& out, const RankingTable& table) {
  out << kRankingCsvHeader << '\n';
  std::size_t rank = 0;
  for (const auto& row : table.rows) {
    const auto& r = row.indicators;
    csv::write_row(out, {std::to_string(++rank), row.name, std::string(to_string(row.type)), std::to_string(r.pbk),
                         std::to_string(r.pch), std::to_string(r.cit), format_fixed2(r.fncs), format_fixed2(r.ai),
                         format_percent(r.ed)});
  }
}

void write_ranking_json(std::ostream& out, const RankingTable& table) {
  ordered_json doc;
  doc["scope"] = {{"kind", kind_name(table.scope.kind)}, {"name", table.scope_name}};
  doc["sort_key"] = to_string(table.sort_key);
  doc["metadata"] = metadata_json(table.metadata);
  doc["rows"] = ordered_json::array();
  std::size_t rank = 0;
  for (const auto& row : table.rows) {
    ordered_json entry = {{"rank", ++rank},
                          {"publisher_id", row.indicators.publisher_id},
                          {"publisher", row.name},
                          {"type", to_string(row.type)}};
    entry.update(indicator_fields(row.indicators));
    doc["rows"].push_back(std::move(entry));
  }
  out << doc.dump(2) << '\n';
}

void write_ranking_html(std::ostream& out, const RankingTable& table) {
  const std::string title =
      std::string(table.scope.kind == ScopeKind::Field ? "Field: " : "Discipline: ") + table.scope_name;
  html_open(out, title);
  const auto& m = table.metadata;
  out << "<p>Period " << m.window.first << "&ndash;" << m.window.last << ". Publishers with at least "
      << m.policy.min_books << " books or " << m.policy.min_chapters << " chapters ("
      << (m.policy.basis == ThresholdBasis::Global ? "whole corpus" : "within this scope") << ")";
  if (m.type_filter) {
    out << ", type " << to_string(*m.type_filter);
  }
  out << ". Sorted by " << to_string(table.sort_key) << ". Corpus " << fingerprint_hex(m.corpus_fingerprint)
      << ".</p>\n";
  out << "<table>\n<thead><tr><th>rank</th><th>publisher</th><th>type</th><th>pbk</th><th>pch</th><th>cit</th>"
         "<th>fncs</th><th>ai</th><th>ed</th></tr></thead>\n<tbody>\n";
  std::size_t rank = 0;
  for (const auto& row : table.rows) {
    out << "<tr><td class=\"n\">" << ++rank << "</td><td>" << html_escape(row.name) << "</td><td>"
        << to_string(row.type) << "</td>";
    html_indicator_cells(out, row.indicators);
    out << "</tr>\n";
  }
  out << "</tbody>\n</table>\n</body>\n</html>\n";
}

std::string render_ranking(const RankingTable& table, ExportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ExportFormat::Csv:
      write_ranking_csv(out, table);
      break;
    case ExportFormat::Json:
      write_ranking_json(out, table);
      break;
    case ExportFormat::Html:
      write_ranking_html(out, table);
      break;
  }
  return out.str();
}

void write_file_atomically(const std::filesystem::path& path, std::string_view content) {
  auto temp = path;
  temp.replace_filename("." + path.filename().string() + ".tmp");
  {
    auto out = open_output(temp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw IoError("failed writing " + temp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw IoError("cannot move " + temp.string() + " to " + path.string());
  }
}

std::filesystem::path export_ranking(const RankingTable& table, ExportFormat format,
                                     const std::filesystem::path& directory) {
  ensure_directory(directory);
  auto path = directory / ranking_file_name(table, format);
  write_file_atomically(path, render_ranking(table, format));
  return path;
}

std::vector<std::filesystem::path> export_rankings(std::span<const RankingTable> tables,
                                                   std::span<const ExportFormat> formats,
                                                   const std::filesystem::path& directory) {
  std::set<std::string> names;
  for (const auto& table : tables) {
    auto name = ranking_file_name(table, ExportFormat::Csv);
    if (!names.insert(name).second) {
      throw ValidationError("two scopes map to the same file name " + name);
    }
  }
  std::vector<std::filesystem::path> written;
  for (const auto& table : tables) {
    for (auto format : formats) {
      written.push_back(export_ranking(table, format, directory));
    }
  }
  return written;
}

std::string profile_file_name(const PublisherProfile& profile, ExportFormat format) {
  return "profile_" + slugify(profile.publisher.id) + "." + std::string(extension(format));
}

std::string render_profile(const PublisherProfile& profile, ExportFormat format) {
  std::ostringstream out;
  const auto& p = profile.publisher;
  switch (format) {
    case ExportFormat::Csv: {
      out << "scope_kind,scope,pbk,pch,cit,fncs,ai,ed\n";
      for (const auto& entry : profile.rows) {
        const auto& r = entry.row.indicators;
        csv::write_row(out, {std::string(kind_name(r.scope.kind)), entry.scope_name, std::to_string(r.pbk),
                             std::to_string(r.pch), std::to_string(r.cit), format_fixed2(r.fncs),
                             format_fixed2(r.ai), format_percent(r.ed)});
      }
      break;
    }
    case ExportFormat::Json: {
      ordered_json doc;
      doc["publisher"] = {{"id", p.id},
                          {"name", p.name},
                          {"type", to_string(p.type)},
                          {"website", p.website ? ordered_json(*p.website) : ordered_json(nullptr)}};
      doc["variants"] = ordered_json::array();
      for (const auto& v : profile.variants) {
        doc["variants"].push_back({{"raw", v.raw},
                                   {"canonical_id", v.canonical_id},
                                   {"city", v.city ? ordered_json(*v.city) : ordered_json(nullptr)},
                                   {"address", v.address ? ordered_json(*v.address) : ordered_json(nullptr)}});
      }
      doc["rows"] = ordered_json::array();
      for (const auto& entry : profile.rows) {
        ordered_json row = {{"scope_kind", kind_name(entry.row.indicators.scope.kind)}, {"scope", entry.scope_name}};
        row.update(indicator_fields(entry.row.indicators));
        doc["rows"].push_back(std::move(row));
      }
      out << doc.dump(2) << '\n';
      break;
    }
    case ExportFormat::Html: {
      html_open(out, p.name);
      out << "<h2>Data</h2>\n<p>Type: " << to_string(p.type);
      if (p.website) {
        out << ". Website: <a href=\"" << html_escape(*p.website) << "\">" << html_escape(*p.website) << "</a>";
      }
      out << ".</p>\n<h2>Normalization</h2>\n<table>\n<thead><tr><th>variant</th><th>city</th><th>address</th></tr>"
             "</thead>\n<tbody>\n";
      for (const auto& v : profile.variants) {
        out << "<tr><td>" << html_escape(v.raw) << "</td><td>" << html_escape(v.city.value_or("")) << "</td><td>"
            << html_escape(v.address.value_or("")) << "</td></tr>\n";
      }
      out << "</tbody>\n</table>\n<h2>Indicators</h2>\n<table>\n<thead><tr><th>scope</th><th>pbk</th><th>pch</th>"
             "<th>cit</th><th>fncs</th><th>ai</th><th>ed</th></tr></thead>\n<tbody>\n";
      for (const auto& entry : profile.rows) {
        out << "<tr><td>" << html_escape(entry.scope_name) << "</td>";
        html_indicator_cells(out, entry.row.indicators);
        out << "</tr>\n";
      }
      out << "</tbody>\n</table>\n</body>\n</html>\n";
      break;
    }
  }
  return out.str();
}

std::filesystem::path export_profile(const PublisherProfile& profile, ExportFormat format,
                                     const std::filesystem::path& directory) {
  ensure_directory(directory);
  auto path = directory / profile_file_name(profile, format);
  write_file_atomically(path, render_profile(profile, format));
  return path;
}

void write_stats_text(std::ostream& out, const CorpusStats& stats) {
  auto average = [](const std::optional<double>& value) { return value ? format_fixed2(*value) : std::string("-"); };
  char line[512];
  std::snprintf(line, sizeof line, "%-32s %5s %6s %6s %6s %9s %9s %10s %9s %9s\n", "field", "disc", "comm", "univ",
                "pubs", "books", "chapters", "citations", "cit/book", "cit/chap");
  out << line;
  auto print = [&](const ScopeStats& s) {
    std::snprintf(line, sizeof line, "%-32.32s %5zu %6llu %6llu %6llu %9llu %9llu %10llu %9s %9s\n", s.name.c_str(),
                  s.discipline_count, static_cast<unsigned long long>(s.commercial_publishers),
                  static_cast<unsigned long long>(s.university_presses),
                  static_cast<unsigned long long>(s.publishers()), static_cast<unsigned long long>(s.books),
                  static_cast<unsigned long long>(s.chapters), static_cast<unsigned long long>(s.citations()),
                  average(s.book_citation_average()).c_str(), average(s.chapter_citation_average()).c_str());
    out << line;
  };
  for (const auto& field : stats.fields) {
    print(field);
  }
  print(stats.global);
}

std::string render_stats_json(const CorpusStats& stats) {
  auto scope = [](const ScopeStats& s) {
    auto average = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
    return ordered_json{{"name", s.name},
                        {"disciplines", s.discipline_count},
                        {"publishers", {{"commercial", s.commercial_publishers},
                                        {"university_press", s.university_presses},
                                        {"total", s.publishers()}}},
                        {"books", s.books},
                        {"chapters", s.chapters},
                        {"items", s.items()},
                        {"citations", s.citations()},
                        {"book_citations", s.book_citations},
                        {"chapter_citations", s.chapter_citations},
                        {"book_citation_average", average(s.book_citation_average())},
                        {"chapter_citation_average", average(s.chapter_citation_average())}};
  };
  ordered_json doc;
  doc["fields"] = ordered_json::array();
  for (const auto& field : stats.fields) {
    doc["fields"].push_back(scope(field));
  }
  doc["global"] = scope(stats.global);
  return doc.dump(2) + "\n";
}

}  // namespace pubrank
