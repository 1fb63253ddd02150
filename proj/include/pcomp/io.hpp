#pragma once

// File formats: pattern CSV, geometry and compensator CSV, report records,
// SVG staircase figures and run manifests. All writers go through
// write_atomic (temp file + rename).

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pcomp/compensator.hpp"
#include "pcomp/geometry.hpp"
#include "pcomp/verify.hpp"

namespace pcomp {

// Shortest representation that parses back to the same double.
std::string format_double(double v);

void write_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_text(const std::filesystem::path& path);

// Header "x,y", one point per row.
std::string pattern_to_csv(const PointPattern& pattern);
// Throws StrictSimplicityError naming the offending file rows (header is
// row 1) when points share a coordinate or leave the open window.
PointPattern pattern_from_csv(std::string_view text, const Window& window);

// The sidecar of pattern_<r>.csv is pattern_<r>.json.
std::filesystem::path sidecar_path(const std::filesystem::path& pattern_csv);

// Columns line,x,y.
std::string lines_to_csv(const SingleLineDecomposition& d);
// Columns k,kind,x,y with kind "xi" or "xi_plus"; one row per corner.
// Whole-window stages have no corners and hence no rows.
std::string stages_to_csv(const SingleLineDecomposition& d);

// Columns t1,t2,value,line_1..line_m, m the common per-line length.
std::string compensator_path_to_csv(const std::vector<CompensatorEvaluation>& path);

struct PathRow {
  Point t;
  double value = 0.0;
  std::vector<double> per_line;
};
std::vector<PathRow> compensator_path_from_csv(std::string_view text);

// Jump points as filled circles (class "jump"), exposed points of xi_k that
// are not jump points as open circles (class "join"), xi_k boundaries as
// solid polylines and xi_k^+ boundaries dashed.
std::string decomposition_svg(const PointPattern& pattern, const SingleLineDecomposition& d);

struct ReportEntry {
  MCReport report;
  Verdict expect = Verdict::pass;
};

// pass when verdict == expect; inconclusive verdicts are their own outcome.
enum class Outcome { ok, unexpected, inconclusive };
Outcome outcome_of(const ReportEntry& e);
std::string to_string(Outcome o);

// One tab-separated key=value record per test, no timestamps.
std::string report_record(const ReportEntry& e);
std::map<std::string, std::string> parse_record(std::string_view line);
std::string summary_table(const std::vector<ReportEntry>& entries);

// 64-bit FNV-1a of the key-sorted compact dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

nlohmann::json manifest_json(const std::string& command, const std::string& hash, double wall_clock_seconds,
                             const std::vector<std::string>& outputs);

}  // namespace pcomp
