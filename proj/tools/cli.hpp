#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pubrank/analysis.hpp"
#include "pubrank/ranking.hpp"
#include "pubrank/report.hpp"

namespace pubrank::cli {

/// Everything one invocation needs; filled from flags.
struct RunConfig {
  std::filesystem::path corpus;
  std::filesystem::path registry_dir;
  std::filesystem::path taxonomy;  // empty: the built-in sample taxonomy
  YearWindow window;
  ThresholdPolicy policy;
  std::filesystem::path out;
  std::vector<ExportFormat> formats{ExportFormat::Csv};
  ResolutionMode mode = ResolutionMode::Lenient;
  std::optional<PublisherType> type_filter;

  /// Throws FormatError when an invariant does not hold.
  void validate(bool needs_inputs, bool needs_out) const;
};

/// Runs one subcommand: validate, rank, profile <publisher>, stats, synth.
/// Returns the process exit status; messages go to `out` and `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pubrank::cli
