#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pubrank/report.hpp"
#include "test_support.hpp"

namespace pubrank::test {

/// One publisher line of a published top-five table.
struct TopRow {
  std::string raw_publisher;  // as it would appear in source records
  std::string name;           // canonical name expected in the ranking
  std::uint64_t pbk;
  std::uint64_t pch;
  std::uint64_t cit;
  int ed_percent;
};

/// Humanities & Arts block of the reference top-publisher table.
inline const std::vector<TopRow>& humanities_top_rows() {
  static const std::vector<TopRow> rows{
      {"Palgrave Macmillan Ltd", "Palgrave Macmillan", 2108, 19554, 5772, 38},
      {"Cambridge Univ Press", "Cambridge University Press", 1004, 8167, 4624, 45},
      {"Routledge", "Routledge", 748, 8303, 3128, 40},
      {"Springer-Verlag Berlin", "Springer", 383, 4725, 2418, 59},
      {"Princeton Univ Press", "Princeton University Press", 339, 3022, 3534, 24},
  };
  return rows;
}

/// Records whose Humanities & Arts counts reproduce `rows` exactly. Items are spread over the
/// field's categories and the 2009-2013 window; a few smaller publishers stay below threshold.
inline std::vector<ItemRecord> top_rows_fixture(const std::vector<TopRow>& rows, const TaxonomyMap& taxonomy,
                                                const std::string& field) {
  std::vector<std::string> categories;
  for (const auto& row : taxonomy.rows()) {
    if (row.field == field) {
      categories.push_back(row.category);
    }
  }
  std::vector<ItemRecord> out;
  std::size_t spread = 0;
  auto next_category = [&] { return categories[spread++ % categories.size()]; };
  auto next_year = [&] { return 2009 + static_cast<int>(spread % 5); };

  for (const auto& row : rows) {
    const std::string prefix = slugify(row.name) + "-";
    const auto items = row.pbk + row.pch;
    auto citations_of = [&](std::uint64_t i) { return row.cit / items + (i < row.cit % items ? 1 : 0); };
    const auto edited_chapters = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(row.ed_percent) / 100.0 * static_cast<double>(row.pch)));

    for (std::uint64_t b = 0; b < row.pbk; ++b) {
      // book 0 is the edited volume, book 1 a monograph; chapters hang off one of them
      out.push_back(book(prefix + "b" + std::to_string(b), row.raw_publisher, {next_category()}, citations_of(b),
                         next_year(), b == 0));
    }
    for (std::uint64_t c = 0; c < row.pch; ++c) {
      out.push_back(chapter(prefix + "c" + std::to_string(c), row.raw_publisher,
                            prefix + (c < edited_chapters ? "b0" : "b1"), {next_category()},
                            citations_of(row.pbk + c), next_year()));
    }
  }
  for (int b = 0; b < 4; ++b) {
    out.push_back(book("elgar-b" + std::to_string(b), "Edward Elgar", {next_category()}, 1, next_year()));
  }
  for (int c = 0; c < 49; ++c) {
    out.push_back(chapter("elgar-c" + std::to_string(c), "Edward Elgar", "elgar-b0", {next_category()}, 0, next_year()));
  }
  return out;
}

}  // namespace pubrank::test
