#include "pubrank/csv.hpp"

#include <string>

#include "pubrank/error.hpp"

namespace pubrank::csv {

std::optional<Record> Reader::next() {
  while (true) {
    int c = in_.get();
    if (c == std::char_traits<char>::eof()) {
      return std::nullopt;
    }
    ++line_;
    Record record;
    record.line = line_;
    if (c == '\n') {
      continue;
    }
    if (c == '\r' && in_.peek() == '\n') {
      in_.get();
      continue;
    }

    std::string field;
    bool quoted = false;
    bool after_quote = false;
    bool done = false;
    while (!done) {
      if (c == std::char_traits<char>::eof()) {
        if (quoted) {
          throw FormatError("line " + std::to_string(record.line) + ": unterminated quoted field");
        }
        record.fields.push_back(std::move(field));
        break;
      }
      char ch = static_cast<char>(c);
      if (quoted) {
        if (ch == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            quoted = false;
            after_quote = true;
          }
        } else {
          if (ch == '\n') {
            ++line_;
          }
          field.push_back(ch);
        }
      } else if (ch == ',') {
        record.fields.push_back(std::move(field));
        field.clear();
        after_quote = false;
      } else if (ch == '\n' || ch == '\r') {
        if (ch == '\r' && in_.peek() == '\n') {
          in_.get();
        }
        record.fields.push_back(std::move(field));
        done = true;
        continue;
      } else if (ch == '"' && field.empty() && !after_quote) {
        quoted = true;
      } else {
        if (after_quote) {
          throw FormatError("line " + std::to_string(line_) + ": unexpected character after closing quote");
        }
        field.push_back(ch);
      }
      c = in_.get();
    }
    return record;
  }
}

std::vector<Record> read_table(std::istream& in, const std::vector<std::string>& expected_header,
                               std::string_view what) {
  Reader reader(in);
  auto header = reader.next();
  if (!header) {
    return {};  // an empty file is an empty table
  }
  if (!header->fields.empty()) {
    // Tolerate a UTF-8 byte order mark on the first column name.
    std::string& first = header->fields.front();
    if (first.rfind("\xEF\xBB\xBF", 0) == 0) {
      first.erase(0, 3);
    }
  }
  if (header->fields != expected_header) {
    std::string expected;
    for (const auto& name : expected_header) {
      expected += expected.empty() ? name : "," + name;
    }
    throw FormatError(std::string(what) + ": header must be \"" + expected + "\"");
  }
  std::vector<Record> records;
  while (auto record = reader.next()) {
    if (record->fields.size() != expected_header.size()) {
      throw FormatError(std::string(what) + " line " + std::to_string(record->line) + ": expected " +
                        std::to_string(expected_header.size()) + " columns, found " +
                        std::to_string(record->fields.size()));
    }
    records.push_back(std::move(*record));
  }
  return records;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') {
      out.push_back('"');
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i != 0) {
      out << ',';
    }
    out << escape(fields[i]);
  }
  out << '\n';
}

}  // namespace pubrank::csv
