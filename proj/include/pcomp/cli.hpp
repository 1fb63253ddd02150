#pragma once

// Subcommands behind the pcomp executable. Each returns the process exit
// code: 0 success (all tests as expected), 1 test failure, 2 configuration
// or data error, 3 I/O error.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace pcomp {

struct CliOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> pattern;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  std::optional<std::size_t> count;
  bool svg = false;
  bool allow_inconclusive = false;
  unsigned jobs = 1;
};

enum ExitCode : int { kExitOk = 0, kExitTestFailure = 1, kExitConfig = 2, kExitIo = 3 };

// pattern_<r>.csv and pattern_<r>.json for r < count, plus manifest.json.
int cmd_simulate(const CliOptions& opt, std::ostream& out, std::ostream& err);
// lines.csv, xi.csv, optional decomposition.svg, manifest.json.
int cmd_decompose(const CliOptions& opt, std::ostream& out, std::ostream& err);
// compensator.csv on the configured grid, manifest.json.
int cmd_compensate(const CliOptions& opt, std::ostream& out, std::ostream& err);
// report.txt, summary.txt, manifest.json.
int cmd_verify(const CliOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace pcomp
