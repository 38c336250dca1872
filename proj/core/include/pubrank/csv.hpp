#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace pubrank::csv {

/// One parsed record plus the 1-based line on which it started.
struct Record {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// RFC 4180 reader: comma separated, double-quote quoting, "" escapes, CRLF or LF.
/// Quoted fields may span lines. Blank lines are skipped.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::optional<Record> next();

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

/// Reads a table whose first record must equal `expected_header` exactly.
/// Every data record must have the header's arity. An empty stream is an empty table.
/// `what` names the table in errors.
std::vector<Record> read_table(std::istream& in, const std::vector<std::string>& expected_header,
                               std::string_view what);

/// Quotes `field` if it contains a comma, quote, or line break.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace pubrank::csv
