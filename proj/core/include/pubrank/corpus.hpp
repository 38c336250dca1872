#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pubrank {

class PublisherRegistry;

enum class DocType : std::uint8_t { Book, BookChapter, Other };

std::string_view to_string(DocType type);

/// Inclusive range of publication years.
struct YearWindow {
  int first = 2009;
  int last = 2013;

  bool contains(int year) const noexcept { return year >= first && year <= last; }
  bool operator==(const YearWindow&) const = default;
};

/// Parses "YYYY:YYYY". Throws FormatError on malformed or reversed ranges.
YearWindow parse_year_window(std::string_view text);

/// One bibliographic item as it appears in the corpus file.
struct ItemRecord {
  std::string id;
  DocType doc_type = DocType::Other;
  std::string doc_label;  // source label, kept for Other types
  std::string raw_publisher;
  int year = 0;
  std::vector<std::string> categories;  // sorted, unique, non-empty
  std::uint64_t citations = 0;
  bool is_serial = false;
  std::optional<std::string> parent_book_id;  // chapters only
  std::optional<bool> edited;                 // books only

  bool operator==(const ItemRecord&) const = default;
};

enum class Severity : std::uint8_t { Warning, Error };

/// A per-line finding. `line` is 1-based; 0 means not tied to a line.
struct Diagnostic {
  std::size_t line = 0;
  Severity severity = Severity::Warning;
  std::string message;
};

std::string format_diagnostic(const Diagnostic& diagnostic);

struct IngestResult {
  std::vector<ItemRecord> items;
  std::vector<Diagnostic> diagnostics;  // rejected lines are Severity::Error

  std::size_t rejected_count() const;
};

/// Parses a JSON-lines corpus. Malformed lines become diagnostics and are skipped;
/// a duplicate item id is fatal (ValidationError naming both lines).
IngestResult ingest_corpus(std::istream& source);
IngestResult ingest_corpus_file(const std::filesystem::path& path);

/// Parses a single corpus line. Returns the record, or nullopt with `reason` set.
/// Non-fatal findings on an accepted line are appended to `warnings`.
std::optional<ItemRecord> parse_corpus_line(std::string_view line, std::string& reason,
                                            std::vector<std::string>* warnings = nullptr);

/// Serializes a record in the corpus line format (keys in a fixed order).
std::string to_corpus_line(const ItemRecord& item);

struct FilterOptions {
  YearWindow window;
  /// Publisher names or variants whose output is treated as serial and dropped.
  std::vector<std::string> serial_publishers{"Annual Reviews"};
};

/// Keeps books and chapters that are not serials, not from a serial publisher, and inside the
/// window. Order is preserved.
std::vector<ItemRecord> filter_corpus(std::span<const ItemRecord> items,
                                      const PublisherRegistry& registry,
                                      const FilterOptions& options = {});

}  // namespace pubrank
