#include "pubrank/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "pubrank/error.hpp"
#include "pubrank/registry.hpp"

namespace pubrank {

namespace {

using nlohmann::json;

constexpr std::string_view kKnownKeys[] = {"id",        "doc_type", "publisher",      "year",  "categories",
                                           "citations", "serial",   "parent_book_id", "edited"};

bool is_known_key(std::string_view key) {
  return std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) != std::end(kKnownKeys);
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

const json* member(const json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) {
    return nullptr;
  }
  return &*it;
}

}  // namespace

std::string_view to_string(DocType type) {
  switch (type) {
    case DocType::Book:
      return "book";
    case DocType::BookChapter:
      return "chapter";
    case DocType::Other:
      break;
  }
  return "other";
}

YearWindow parse_year_window(std::string_view text) {
  auto colon = text.find(':');
  auto parse = [&](std::string_view part) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw FormatError("window must look like YYYY:YYYY, got \"" + std::string(text) + "\"");
    }
    return value;
  };
  if (colon == std::string_view::npos) {
    throw FormatError("window must look like YYYY:YYYY, got \"" + std::string(text) + "\"");
  }
  YearWindow window{parse(text.substr(0, colon)), parse(text.substr(colon + 1))};
  if (window.first > window.last) {
    throw FormatError("window start " + std::to_string(window.first) + " is after its end " +
                      std::to_string(window.last));
  }
  return window;
}

std::string format_diagnostic(const Diagnostic& diagnostic) {
  std::string out;
  if (diagnostic.line != 0) {
    out = "line " + std::to_string(diagnostic.line) + ": ";
  }
  out += diagnostic.severity == Severity::Error ? "error: " : "warning: ";
  out += diagnostic.message;
  return out;
}

std::size_t IngestResult::rejected_count() const {
  return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(),
                                                [](const Diagnostic& d) { return d.severity == Severity::Error; }));
}

std::optional<ItemRecord> parse_corpus_line(std::string_view line, std::string& reason,
                                            std::vector<std::string>* warnings) {
  json object = json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
  if (object.is_discarded()) {
    reason = "invalid JSON";
    return std::nullopt;
  }
  if (!object.is_object()) {
    reason = "record is not a JSON object";
    return std::nullopt;
  }

  ItemRecord item;

  const json* id = member(object, "id");
  if (id == nullptr) {
    reason = "missing id";
    return std::nullopt;
  }
  if (!id->is_string() || id->get_ref<const std::string&>().empty()) {
    reason = "id must be a non-empty string";
    return std::nullopt;
  }
  item.id = id->get<std::string>();

  const json* doc_type = member(object, "doc_type");
  if (doc_type == nullptr) {
    reason = "missing doc_type";
    return std::nullopt;
  }
  if (!doc_type->is_string() || doc_type->get_ref<const std::string&>().empty()) {
    reason = "doc_type must be a non-empty string";
    return std::nullopt;
  }
  item.doc_label = doc_type->get<std::string>();
  if (item.doc_label == "book") {
    item.doc_type = DocType::Book;
  } else if (item.doc_label == "chapter") {
    item.doc_type = DocType::BookChapter;
  } else {
    item.doc_type = DocType::Other;
  }

  const json* publisher = member(object, "publisher");
  if (publisher == nullptr) {
    reason = "missing publisher";
    return std::nullopt;
  }
  if (!publisher->is_string() || publisher->get_ref<const std::string&>().empty()) {
    reason = "publisher must be a non-empty string";
    return std::nullopt;
  }
  item.raw_publisher = publisher->get<std::string>();

  const json* year = member(object, "year");
  if (year == nullptr) {
    reason = "missing year";
    return std::nullopt;
  }
  if (!year->is_number_integer()) {
    reason = "year must be an integer";
    return std::nullopt;
  }
  auto year_value = year->get<std::int64_t>();
  if (year_value < 0 || year_value > 9999) {
    reason = "year out of range";
    return std::nullopt;
  }
  item.year = static_cast<int>(year_value);

  const json* categories = member(object, "categories");
  if (categories == nullptr) {
    reason = "missing categories";
    return std::nullopt;
  }
  if (!categories->is_array() || categories->empty()) {
    reason = "categories must be a non-empty array";
    return std::nullopt;
  }
  for (const auto& category : *categories) {
    if (!category.is_string() || category.get_ref<const std::string&>().empty()) {
      reason = "categories must contain non-empty strings";
      return std::nullopt;
    }
    item.categories.push_back(category.get<std::string>());
  }
  std::sort(item.categories.begin(), item.categories.end());
  item.categories.erase(std::unique(item.categories.begin(), item.categories.end()), item.categories.end());

  const json* citations = member(object, "citations");
  if (citations == nullptr) {
    reason = "missing citations";
    return std::nullopt;
  }
  // nlohmann stores non-negative integer literals as unsigned
  if (!citations->is_number_unsigned()) {
    reason = "citations must be a non-negative integer";
    return std::nullopt;
  }
  item.citations = citations->get<std::uint64_t>();

  if (const json* serial = member(object, "serial")) {
    if (!serial->is_boolean()) {
      reason = "serial must be a boolean";
      return std::nullopt;
    }
    item.is_serial = serial->get<bool>();
  }

  if (const json* parent = member(object, "parent_book_id")) {
    if (!parent->is_string() || parent->get_ref<const std::string&>().empty()) {
      reason = "parent_book_id must be a non-empty string";
      return std::nullopt;
    }
    item.parent_book_id = parent->get<std::string>();
  }

  if (const json* edited = member(object, "edited")) {
    if (!edited->is_boolean()) {
      reason = "edited must be a boolean";
      return std::nullopt;
    }
    item.edited = edited->get<bool>();
  }

  if (item.doc_type == DocType::BookChapter && !item.parent_book_id) {
    reason = "chapter without parent_book_id";
    return std::nullopt;
  }
  if (item.doc_type == DocType::Book && item.parent_book_id) {
    reason = "book with parent_book_id";
    return std::nullopt;
  }
  if (item.doc_type == DocType::BookChapter && item.edited) {
    item.edited.reset();
    if (warnings != nullptr) {
      warnings->push_back("edited flag on a chapter ignored (it belongs on the parent book)");
    }
  }

  if (warnings != nullptr) {
    for (const auto& [key, value] : object.items()) {
      if (!is_known_key(key)) {
        warnings->push_back("unknown key \"" + key + "\" ignored");
      }
    }
  }
  return item;
}

IngestResult ingest_corpus(std::istream& source) {
  IngestResult result;
  std::unordered_map<std::string, std::size_t> first_line;
  std::string line;
  std::string reason;
  std::vector<std::string> warnings;
  std::size_t line_number = 0;
  while (std::getline(source, line)) {
    ++line_number;
    if (line_number == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) {
      line.erase(0, 3);
    }
    if (is_blank(line)) {
      continue;
    }
    warnings.clear();
    auto item = parse_corpus_line(line, reason, &warnings);
    if (!item) {
      result.diagnostics.push_back({line_number, Severity::Error, reason});
      continue;
    }
    for (auto& warning : warnings) {
      result.diagnostics.push_back({line_number, Severity::Warning, std::move(warning)});
    }
    auto [it, inserted] = first_line.emplace(item->id, line_number);
    if (!inserted) {
      throw ValidationError("duplicate item id \"" + item->id + "\" on lines " + std::to_string(it->second) +
                            " and " + std::to_string(line_number));
    }
    result.items.push_back(std::move(*item));
  }
  if (source.bad()) {
    throw IoError("error while reading corpus stream");
  }
  return result;
}

IngestResult ingest_corpus_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open corpus file " + path.string());
  }
  return ingest_corpus(in);
}

std::string to_corpus_line(const ItemRecord& item) {
  nlohmann::ordered_json object;
  object["id"] = item.id;
  object["doc_type"] = item.doc_type == DocType::Other ? item.doc_label : std::string(to_string(item.doc_type));
  object["publisher"] = item.raw_publisher;
  object["year"] = item.year;
  object["categories"] = item.categories;
  object["citations"] = item.citations;
  if (item.is_serial) {
    object["serial"] = true;
  }
  if (item.parent_book_id) {
    object["parent_book_id"] = *item.parent_book_id;
  }
  if (item.edited) {
    object["edited"] = *item.edited;
  }
  return object.dump();
}

std::vector<ItemRecord> filter_corpus(std::span<const ItemRecord> items, const PublisherRegistry& registry,
                                      const FilterOptions& options) {
  std::unordered_set<std::string> excluded;
  for (const auto& name : options.serial_publishers) {
    if (const std::string* id = registry.try_resolve(name)) {
      excluded.insert(*id);
    }
  }

  std::vector<ItemRecord> kept;
  kept.reserve(items.size());
  for (const auto& item : items) {
    if (item.doc_type == DocType::Other || item.is_serial || !options.window.contains(item.year)) {
      continue;
    }
    if (!excluded.empty()) {
      const std::string* id = registry.try_resolve(item.raw_publisher);
      if (id != nullptr && excluded.contains(*id)) {
        continue;
      }
    }
    kept.push_back(item);
  }
  return kept;
}

}  // namespace pubrank
