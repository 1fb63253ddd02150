#include "pcomp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <system_error>

#include <boost/version.hpp>

#include "pcomp/errors.hpp"

namespace pcomp {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view field, std::size_t row) {
  field = trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ConfigurationError("row " + std::to_string(row) + ": cannot parse number '" + std::string(field) + "'");
  }
  return v;
}

// Non-empty data lines with their 1-based row numbers; the header is checked.
std::vector<std::pair<std::size_t, std::string_view>> data_rows(std::string_view text, std::string_view header) {
  std::vector<std::pair<std::size_t, std::string_view>> rows;
  std::size_t row = 0;
  bool seen_header = false;
  for (std::string_view line : split(text, '\n')) {
    ++row;
    line = trim(line);
    if (line.empty()) continue;
    if (!seen_header) {
      if (!header.empty() && line.substr(0, header.size()) != header) {
        throw ConfigurationError("row " + std::to_string(row) + ": expected header starting with '" +
                                 std::string(header) + "'");
      }
      seen_header = true;
      continue;
    }
    rows.emplace_back(row, line);
  }
  return rows;
}

std::string svg_polyline(const std::vector<Point>& boundary, const std::string& cls, const Window& w, double scale,
                         double margin) {
  std::ostringstream out;
  out << "<polyline class=\"" << cls << "\" points=\"";
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    if (i) out << ' ';
    out << format_double(margin + boundary[i].x * scale) << ','
        << format_double(margin + (w.y_max - boundary[i].y) * scale);
  }
  out << "\"/>\n";
  return out.str();
}

// Upper-right boundary of a staircase from the top edge to the right edge.
std::vector<Point> staircase_boundary(const Staircase& L) {
  const Window& w = L.window();
  const auto corners = L.corners().points();
  std::vector<Point> path;
  if (corners.empty()) return path;
  path.push_back({corners.front().x, w.y_max});
  for (std::size_t i = 0; i < corners.size(); ++i) {
    path.push_back(corners[i]);
    const double next_x = i + 1 < corners.size() ? corners[i + 1].x : w.x_max;
    path.push_back({next_x, corners[i].y});
  }
  return path;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw InvariantViolation("format_double failed");
  return std::string(buf, ptr);
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string pattern_to_csv(const PointPattern& pattern) {
  std::string out = "x,y\n";
  for (const Point& p : pattern.points()) out += format_double(p.x) + "," + format_double(p.y) + "\n";
  return out;
}

PointPattern pattern_from_csv(std::string_view text, const Window& window) {
  std::vector<Point> points;
  std::vector<std::size_t> rows;
  for (const auto& [row, line] : data_rows(text, "x,y")) {
    const auto fields = split(line, ',');
    if (fields.size() != 2) throw ConfigurationError("row " + std::to_string(row) + ": expected two fields");
    const Point p{parse_double(fields[0], row), parse_double(fields[1], row)};
    if (!window.contains_open(p)) {
      throw StrictSimplicityError("row " + std::to_string(row) + ": point (" + format_double(p.x) + ", " +
                                  format_double(p.y) + ") is not strictly inside the window");
    }
    points.push_back(p);
    rows.push_back(row);
  }
  std::vector<std::size_t> order(points.size());
  for (int axis = 0; axis < 2; ++axis) {
    auto coord = [&](std::size_t i) { return axis == 0 ? points[i].x : points[i].y; };
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return coord(a) < coord(b); });
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (coord(order[i]) == coord(order[i - 1])) {
        const std::size_t a = std::min(rows[order[i]], rows[order[i - 1]]);
        const std::size_t b = std::max(rows[order[i]], rows[order[i - 1]]);
        throw StrictSimplicityError("rows " + std::to_string(a) + " and " + std::to_string(b) + " share the " +
                                    (axis == 0 ? "x" : "y") + " coordinate " + format_double(coord(order[i])));
      }
    }
  }
  return PointPattern(window, std::move(points));
}

std::filesystem::path sidecar_path(const std::filesystem::path& pattern_csv) {
  std::filesystem::path p = pattern_csv;
  p.replace_extension(".json");
  return p;
}

std::string lines_to_csv(const SingleLineDecomposition& d) {
  std::string out = "line,x,y\n";
  for (std::size_t k = 0; k < d.lines.size(); ++k) {
    for (const Point& p : d.lines[k].points()) {
      out += std::to_string(k + 1) + "," + format_double(p.x) + "," + format_double(p.y) + "\n";
    }
  }
  return out;
}

std::string stages_to_csv(const SingleLineDecomposition& d) {
  std::string out = "k,kind,x,y\n";
  for (std::size_t k = 0; k < d.xi.size(); ++k) {
    for (const Point& a : d.xi[k].corners().points()) {
      out += std::to_string(k) + ",xi," + format_double(a.x) + "," + format_double(a.y) + "\n";
    }
    for (const Point& a : d.xi_plus[k].corners().points()) {
      out += std::to_string(k) + ",xi_plus," + format_double(a.x) + "," + format_double(a.y) + "\n";
    }
  }
  return out;
}

std::string compensator_path_to_csv(const std::vector<CompensatorEvaluation>& path) {
  std::size_t m = 0;
  for (const auto& e : path) m = std::max(m, e.per_line.size());
  std::string out = "t1,t2,value";
  for (std::size_t k = 1; k <= m; ++k) out += ",line_" + std::to_string(k);
  out += "\n";
  for (const auto& e : path) {
    out += format_double(e.t.x) + "," + format_double(e.t.y) + "," + format_double(e.value);
    for (std::size_t k = 0; k < m; ++k) out += "," + format_double(k < e.per_line.size() ? e.per_line[k] : 0.0);
    out += "\n";
  }
  return out;
}

std::vector<PathRow> compensator_path_from_csv(std::string_view text) {
  std::vector<PathRow> rows;
  for (const auto& [row, line] : data_rows(text, "t1,t2,value")) {
    const auto fields = split(line, ',');
    if (fields.size() < 3) throw ConfigurationError("row " + std::to_string(row) + ": expected at least three fields");
    PathRow r;
    r.t = {parse_double(fields[0], row), parse_double(fields[1], row)};
    r.value = parse_double(fields[2], row);
    for (std::size_t i = 3; i < fields.size(); ++i) r.per_line.push_back(parse_double(fields[i], row));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string decomposition_svg(const PointPattern& pattern, const SingleLineDecomposition& d) {
  const Window& w = pattern.window();
  constexpr double kSize = 480.0, kMargin = 20.0;
  const double scale = kSize / std::max(w.x_max, w.y_max);
  const double width = w.x_max * scale + 2 * kMargin, height = w.y_max * scale + 2 * kMargin;
  auto px = [&](double x) { return format_double(kMargin + x * scale); };
  auto py = [&](double y) { return format_double(kMargin + (w.y_max - y) * scale); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(width) << "\" height=\""
      << format_double(height) << "\">\n";
  out << "<style>.xi{fill:none;stroke:#222;stroke-width:1.5}"
         ".xi_plus{fill:none;stroke:#888;stroke-width:1;stroke-dasharray:4 3}"
         ".jump{fill:#222}.join{fill:white;stroke:#222;stroke-width:1.2}</style>\n";
  out << "<rect x=\"" << px(0) << "\" y=\"" << py(w.y_max) << "\" width=\"" << format_double(w.x_max * scale)
      << "\" height=\"" << format_double(w.y_max * scale) << "\" fill=\"none\" stroke=\"#ccc\"/>\n";

  // Stage 0 is the axes and the last stage the whole window; draw the rest.
  for (std::size_t k = 1; k + 1 < d.xi.size(); ++k) {
    const auto b = staircase_boundary(d.xi[k]);
    if (!b.empty()) out << svg_polyline(b, "xi", w, scale, kMargin);
    const auto bp = staircase_boundary(d.xi_plus[k]);
    if (!bp.empty()) out << svg_polyline(bp, "xi_plus", w, scale, kMargin);
  }
  const auto pts = pattern.points();
  for (std::size_t k = 1; k + 1 < d.xi.size(); ++k) {
    for (const Point& a : d.xi[k].corners().points()) {
      if (std::find(pts.begin(), pts.end(), a) != pts.end()) continue;
      out << "<circle class=\"join\" cx=\"" << px(a.x) << "\" cy=\"" << py(a.y) << "\" r=\"4\"/>\n";
    }
  }
  for (const Point& p : pts) {
    out << "<circle class=\"jump\" cx=\"" << px(p.x) << "\" cy=\"" << py(p.y) << "\" r=\"4\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

Outcome outcome_of(const ReportEntry& e) {
  if (e.report.verdict == Verdict::inconclusive) return Outcome::inconclusive;
  return e.report.verdict == e.expect ? Outcome::ok : Outcome::unexpected;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::ok: return "ok";
    case Outcome::unexpected: return "unexpected";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string report_record(const ReportEntry& e) {
  const MCReport& r = e.report;
  std::ostringstream out;
  out << "name=" << r.name << "\testimate=" << format_double(r.estimate) << "\ttarget=" << format_double(r.target)
      << "\tstderr=" << format_double(r.std_error) << "\tz=" << format_double(r.z) << "\tn=" << r.n
      << "\tsigma=" << format_double(r.sigma) << "\tverdict=" << to_string(r.verdict)
      << "\texpect=" << to_string(e.expect) << "\toutcome=" << to_string(outcome_of(e)) << "\tseed=" << r.seed
      << "\tnote=" << r.note;
  return out.str();
}

std::map<std::string, std::string> parse_record(std::string_view line) {
  std::map<std::string, std::string> fields;
  for (std::string_view f : split(trim(line), '\t')) {
    const std::size_t eq = f.find('=');
    if (eq == std::string_view::npos) throw ConfigurationError("report field without '=': " + std::string(f));
    fields.emplace(std::string(f.substr(0, eq)), std::string(f.substr(eq + 1)));
  }
  return fields;
}

std::string summary_table(const std::vector<ReportEntry>& entries) {
  std::size_t width = 4;
  for (const auto& e : entries) width = std::max(width, e.report.name.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "test" << "  " << std::right << std::setw(12)
      << "estimate" << std::setw(12) << "target" << std::setw(11) << "stderr" << std::setw(9) << "z"
      << std::setw(9) << "n" << "  " << std::left << std::setw(13) << "verdict" << std::setw(6) << "expect"
      << "  outcome\n";
  std::size_t ok = 0;
  for (const auto& e : entries) {
    const MCReport& r = e.report;
    const Outcome o = outcome_of(e);
    if (o == Outcome::ok) ++ok;
    out << std::left << std::setw(static_cast<int>(width)) << r.name << "  " << std::right << std::setprecision(6)
        << std::setw(12) << r.estimate << std::setw(12) << r.target << std::setprecision(3) << std::setw(11)
        << r.std_error << std::fixed << std::setprecision(2) << std::setw(9) << r.z << std::defaultfloat
        << std::setw(9) << r.n << "  " << std::left << std::setw(13) << to_string(r.verdict) << std::setw(6)
        << to_string(e.expect) << "  " << to_string(o) << "\n";
  }
  out << ok << "/" << entries.size() << " tests as expected\n";
  return out.str();
}

std::string config_hash(const nlohmann::json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json manifest_json(const std::string& command, const std::string& hash, double wall_clock_seconds,
                             const std::vector<std::string>& outputs) {
  nlohmann::json m;
  m["command"] = command;
  m["config_hash"] = hash;
  m["wall_clock_seconds"] = wall_clock_seconds;
  m["outputs"] = outputs;
  m["versions"] = {{"pcomp", "0.1.0"},
                   {"compiler", __VERSION__},
                   {"boost", BOOST_LIB_VERSION},
                   {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
  return m;
}

}  // namespace pcomp
