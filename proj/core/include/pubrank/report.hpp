#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pubrank/corpus_stats.hpp"
#include "pubrank/ranking.hpp"

namespace pubrank {

enum class ExportFormat : std::uint8_t { Csv, Json, Html };

std::string_view to_string(ExportFormat format);
std::string_view extension(ExportFormat format);
/// Throws FormatError for names other than csv, json, html.
ExportFormat parse_export_format(std::string_view name);
/// Comma separated list, e.g. "csv,json". Duplicates collapse; order is csv, json, html.
std::vector<ExportFormat> parse_export_formats(std::string_view list);

/// Lowercase ASCII; every other non-alphanumeric byte becomes '-'.
std::string slugify(std::string_view name);

/// field_<slug>.<ext> or discipline_<slug>.<ext>
std::string ranking_file_name(const RankingTable& table, ExportFormat format);

// Writers. CSV and HTML round fncs/ai to two decimals and ed to an integer percent; JSON keeps
// full precision. Values come from the table as is.

inline constexpr std::string_view kRankingCsvHeader = "rank,publisher,type,pbk,pch,cit,fncs,ai,ed";

void write_ranking_csv(std::ostream& out, const RankingTable& table);
void write_ranking_json(std::ostream& out, const RankingTable& table);
void write_ranking_html(std::ostream& out, const RankingTable& table);
std::string render_ranking(const RankingTable& table, ExportFormat format);

/// Writes the table under `directory` (created if missing) via temp file + rename.
/// Returns the final path. IoError when the destination is unwritable.
std::filesystem::path export_ranking(const RankingTable& table, ExportFormat format,
                                     const std::filesystem::path& directory);

/// Exports every table in every format; throws ValidationError if two tables share a file name.
std::vector<std::filesystem::path> export_rankings(std::span<const RankingTable> tables,
                                                   std::span<const ExportFormat> formats,
                                                   const std::filesystem::path& directory);

std::string profile_file_name(const PublisherProfile& profile, ExportFormat format);
std::string render_profile(const PublisherProfile& profile, ExportFormat format);
std::filesystem::path export_profile(const PublisherProfile& profile, ExportFormat format,
                                     const std::filesystem::path& directory);

void write_stats_text(std::ostream& out, const CorpusStats& stats);
std::string render_stats_json(const CorpusStats& stats);

/// Replaces `path` with `content` atomically (sibling temp file, then rename).
void write_file_atomically(const std::filesystem::path& path, std::string_view content);

/// "%.2f" rounding used by CSV and HTML.
std::string format_fixed2(double value);
/// Integer percent, half away from zero.
std::string format_percent(double value);

}  // namespace pubrank
