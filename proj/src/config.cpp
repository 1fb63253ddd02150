#include "pcomp/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "pcomp/errors.hpp"
#include "pcomp/random.hpp"

namespace pcomp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigurationError((path.empty() ? std::string("/") : path) + ": " + what);
}

void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(path, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) fail(path + "/" + key, "unknown key");
  }
}

const json& require(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(path + "/" + key, "required key missing");
  return j.at(key);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

double number_or(const json& j, const std::string& path, const char* key, double fallback) {
  return j.contains(key) ? number(j.at(key), path + "/" + key) : fallback;
}

std::size_t count_or(const json& j, const std::string& path, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    fail(path + "/" + key, "expected a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::string string_of(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "/" + std::to_string(i)));
  return out;
}

Point point(const json& j, const std::string& path) {
  const auto v = numbers(j, path);
  if (v.size() != 2) fail(path, "expected a point [x, y]");
  return {v[0], v[1]};
}

Point point_or(const json& j, const std::string& path, const char* key, const Point& fallback) {
  return j.contains(key) ? point(j.at(key), path + "/" + key) : fallback;
}

template <class F>
auto guarded(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigurationError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

Cumulative1D cumulative(const json& j, double extent, const std::string& path) {
  if (j.is_number()) {
    const double rate = number(j, path);
    return guarded(path, [&] { return Cumulative1D::linear(rate, extent); });
  }
  allow_keys(j, path, {"knots", "values"});
  auto knots = numbers(require(j, path, "knots"), path + "/knots");
  auto values = numbers(require(j, path, "values"), path + "/values");
  return guarded(path, [&] { return Cumulative1D(std::move(knots), std::move(values)); });
}

std::vector<double> density_from_csv(const std::filesystem::path& file, const std::string& path) {
  std::string text;
  try {
    text = read_text(file);
  } catch (const IoError& e) {
    fail(path, e.what());
  }
  std::vector<double> out;
  std::size_t row = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    start = end + 1;
    ++row;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream in(line);
    double v;
    while (in >> v) out.push_back(v);
    if (!in.eof()) fail(path, "density CSV row " + std::to_string(row) + " has a non-numeric field");
    if (end == text.size()) break;
  }
  return out;
}

json point_json(const Point& p) { return json::array({p.x, p.y}); }

std::optional<double> optional_sigma(const ExperimentConfig& c, const json& params, const std::string& path) {
  if (params.contains("sigma")) return number(params.at("sigma"), path + "/sigma");
  return c.sigma;
}

TestFunctional parse_functional(const json& j, const std::string& path) {
  allow_keys(j, path, {"kind", "value", "cell", "cells", "cap"});
  const std::string kind = string_of(require(j, path, "kind"), path + "/kind");
  auto cell = [&](const json& c, const std::string& p) {
    if (!c.is_array() || c.size() != 2) fail(p, "expected a cell [[lo_x, lo_y], [hi_x, hi_y]]");
    return Cell{point(c[0], p + "/0"), point(c[1], p + "/1")};
  };
  if (kind == "constant") return TestFunctional::constant(number_or(j, path, "value", 1.0));
  if (kind == "zero") return TestFunctional::zero_indicator(cell(require(j, path, "cell"), path + "/cell"));
  if (kind == "count") {
    return TestFunctional::capped_count(cell(require(j, path, "cell"), path + "/cell"), count_or(j, path, "cap", 3));
  }
  if (kind == "product") {
    const json& cells = require(j, path, "cells");
    if (!cells.is_array() || cells.size() != 2) fail(path + "/cells", "expected two cells");
    return TestFunctional::product(cell(cells[0], path + "/cells/0"), cell(cells[1], path + "/cells/1"));
  }
  fail(path + "/kind", "unknown functional '" + kind + "' (constant, zero, count, product)");
}

std::vector<ReportEntry> dispatch(const ExperimentConfig& c, const TestSpec& test, std::uint64_t seed, unsigned jobs,
                                  bool dry);

}  // namespace

Law1D parse_law(const json& spec, const std::string& path) {
  if (!spec.is_object()) fail(path, "expected a law object");
  const std::string kind = string_of(require(spec, path, "kind"), path + "/kind");
  return guarded(path, [&]() -> Law1D {
    if (kind == "constant") {
      allow_keys(spec, path, {"kind", "value"});
      return Law1D::constant(number(require(spec, path, "value"), path + "/value"));
    }
    if (kind == "exponential") {
      allow_keys(spec, path, {"kind", "rate"});
      return Law1D::exponential(number(require(spec, path, "rate"), path + "/rate"));
    }
    if (kind == "uniform") {
      allow_keys(spec, path, {"kind", "low", "high"});
      return Law1D::uniform(number_or(spec, path, "low", 0.0), number(require(spec, path, "high"), path + "/high"));
    }
    if (kind == "weibull" || kind == "gamma") {
      allow_keys(spec, path, {"kind", "shape", "scale"});
      const double shape = number(require(spec, path, "shape"), path + "/shape");
      const double scale = number_or(spec, path, "scale", 1.0);
      return kind == "weibull" ? Law1D::weibull(shape, scale) : Law1D::gamma(shape, scale);
    }
    if (kind == "lognormal") {
      allow_keys(spec, path, {"kind", "mu", "sigma"});
      return Law1D::lognormal(number_or(spec, path, "mu", 0.0), number(require(spec, path, "sigma"), path + "/sigma"));
    }
    fail(path + "/kind", "unknown law '" + kind + "' (constant, exponential, uniform, weibull, gamma, lognormal)");
  });
}

HazardMeasure parse_hazard(const json& spec, const Window& window, const std::filesystem::path& base_dir,
                           const std::string& path) {
  if (!spec.is_object()) fail(path, "expected a hazard object");
  const std::string form = string_of(require(spec, path, "form"), path + "/form");
  const double scale = number_or(spec, path, "scale", 1.0);
  if (!(scale >= 0.0)) fail(path + "/scale", "must be nonnegative");
  HazardMeasure h = guarded(path, [&]() -> HazardMeasure {
    if (form == "zero") {
      allow_keys(spec, path, {"form", "scale"});
      return HazardMeasure::zero(window);
    }
    if (form == "product") {
      allow_keys(spec, path, {"form", "scale", "rate", "x", "y"});
      if (spec.contains("rate")) {
        if (spec.contains("x") || spec.contains("y")) fail(path, "give either rate or x and y, not both");
        return HazardMeasure::lebesgue(window, number(spec.at("rate"), path + "/rate"));
      }
      return HazardMeasure::product(window, cumulative(require(spec, path, "x"), window.x_max, path + "/x"),
                                    cumulative(require(spec, path, "y"), window.y_max, path + "/y"));
    }
    if (form == "grid") {
      allow_keys(spec, path, {"form", "scale", "x_mesh", "y_mesh", "density", "density_csv"});
      auto xm = numbers(require(spec, path, "x_mesh"), path + "/x_mesh");
      auto ym = numbers(require(spec, path, "y_mesh"), path + "/y_mesh");
      std::vector<double> density;
      if (spec.contains("density") == spec.contains("density_csv")) {
        fail(path, "give exactly one of density and density_csv");
      }
      if (spec.contains("density")) {
        density = numbers(spec.at("density"), path + "/density");
      } else {
        std::filesystem::path file = string_of(spec.at("density_csv"), path + "/density_csv");
        if (file.is_relative()) file = base_dir / file;
        density = density_from_csv(file, path + "/density_csv");
      }
      return HazardMeasure::grid(window, std::move(xm), std::move(ym), std::move(density));
    }
    if (form == "antiderivative") {
      allow_keys(spec, path, {"form", "scale", "family", "c", "p", "density_bound"});
      const std::string family = string_of(require(spec, path, "family"), path + "/family");
      if (family != "power_product") fail(path + "/family", "unknown family '" + family + "' (power_product)");
      const double c = number_or(spec, path, "c", 1.0);
      const double p = number_or(spec, path, "p", 1.0);
      if (!(c > 0.0) || !(p > 0.0)) fail(path, "power_product needs c > 0 and p > 0");
      AntiderivativeOptions opt;
      opt.label = "power_product";
      opt.density = [c, p](const Point& u) {
        return u.x > 0.0 && u.y > 0.0 ? c * p * p * std::pow(u.x * u.y, p - 1.0) : (p == 1.0 ? c : 0.0);
      };
      if (spec.contains("density_bound")) opt.density_bound = number(spec.at("density_bound"), path + "/density_bound");
      return HazardMeasure::antiderivative(
          window, [c, p](const Point& u) { return c * std::pow(std::max(0.0, u.x * u.y), p); }, std::move(opt));
    }
    fail(path + "/form", "unknown hazard form '" + form + "' (zero, product, grid, antiderivative)");
  });
  return scale == 1.0 ? h : h.scaled(scale);
}

ExperimentConfig parse_config(const json& config, const std::filesystem::path& base_dir) {
  allow_keys(config, "", {"window", "seed", "output_dir", "model", "grid", "simulate", "verify", "description"});
  ExperimentConfig c;
  c.source = config;
  c.base_dir = base_dir;

  const Point w = point(require(config, "", "window"), "/window");
  c.window = guarded("/window", [&] { return Window(w.x, w.y); });

  if (config.contains("seed")) {
    const json& s = config.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      fail("/seed", "expected a nonnegative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  if (config.contains("output_dir")) c.output_dir = string_of(config.at("output_dir"), "/output_dir");
  if (config.contains("description")) string_of(config.at("description"), "/description");

  const json& model = require(config, "", "model");
  if (!model.is_object()) fail("/model", "expected an object");
  c.model.kind = string_of(require(model, "/model", "kind"), "/model/kind");
  const std::string& kind = c.model.kind;
  if (kind == "poisson" || kind == "single_line") {
    allow_keys(model, "/model", {"kind", "hazard"});
    HazardMeasure h = parse_hazard(require(model, "/model", "hazard"), c.window, base_dir, "/model/hazard");
    if (kind == "poisson") {
      c.model.pattern = PoissonModel{std::move(h)};
    } else {
      c.model.pattern = SingleLineModel{std::move(h)};
    }
  } else if (kind == "cox") {
    allow_keys(model, "/model", {"kind", "driver"});
    const json& d = require(model, "/model", "driver");
    if (!d.is_object()) fail("/model/driver", "expected an object");
    const std::string family = string_of(require(d, "/model/driver", "family"), "/model/driver/family");
    if (family == "scale_mixture") {
      allow_keys(d, "/model/driver", {"family", "base", "w"});
      HazardMeasure base = parse_hazard(require(d, "/model/driver", "base"), c.window, base_dir, "/model/driver/base");
      c.model.pattern = CoxModel{ScaleMixtureDriver{std::move(base), parse_law(require(d, "/model/driver", "w"),
                                                                                "/model/driver/w")}};
    } else if (family == "two_region") {
      allow_keys(d, "/model/driver", {"family", "split", "intensity"});
      const Point split = point(require(d, "/model/driver", "split"), "/model/driver/split");
      if (!c.window.contains_open(split)) fail("/model/driver/split", "must lie strictly inside the window");
      c.model.pattern = CoxModel{
          TwoRegionDriver{c.window, split, parse_law(require(d, "/model/driver", "intensity"),
                                                     "/model/driver/intensity")}};
    } else {
      fail("/model/driver/family", "unknown driver family '" + family + "' (scale_mixture, two_region)");
    }
  } else if (kind == "single_jump_1d") {
    allow_keys(model, "/model", {"kind", "law"});
    Law1D law = parse_law(require(model, "/model", "law"), "/model/law");
    c.model.jump_1d = guarded("/model/law", [&] { return SingleJump1D(law); });
  } else if (kind == "single_jump_2d") {
    allow_keys(model, "/model", {"kind", "x", "y", "copula", "theta"});
    Law1D x = parse_law(require(model, "/model", "x"), "/model/x");
    Law1D y = parse_law(require(model, "/model", "y"), "/model/y");
    const std::string copula =
        model.contains("copula") ? string_of(model.at("copula"), "/model/copula") : std::string("product");
    std::optional<Distribution2D> dist;
    if (copula == "product") {
      if (model.contains("theta")) fail("/model/theta", "only used with the fgm copula");
      dist = Distribution2D::product(x, y);
    } else if (copula == "fgm") {
      const double theta = number(require(model, "/model", "theta"), "/model/theta");
      dist = guarded("/model/theta", [&] { return Distribution2D::fgm(theta, x, y); });
    } else {
      fail("/model/copula", "unknown copula '" + copula + "' (product, fgm)");
    }
    c.model.jump_2d = guarded("/model", [&] { return SingleJump2D(*dist); });
  } else {
    fail("/model/kind", "unknown model kind '" + kind + "' (poisson, cox, single_line, single_jump_1d, single_jump_2d)");
  }

  if (config.contains("grid")) {
    const json& g = config.at("grid");
    allow_keys(g, "/grid", {"nx", "ny"});
    c.grid_nx = count_or(g, "/grid", "nx", 3);
    c.grid_ny = count_or(g, "/grid", "ny", 3);
    if (c.grid_nx == 0 || c.grid_ny == 0) fail("/grid", "nx and ny must be positive");
  }
  if (config.contains("simulate")) {
    allow_keys(config.at("simulate"), "/simulate", {"count"});
    c.simulate_count = count_or(config.at("simulate"), "/simulate", "count", 1);
  }

  bool have_tests = false;
  if (config.contains("verify")) {
    const json& v = config.at("verify");
    allow_keys(v, "/verify", {"sigma", "tests"});
    if (v.contains("sigma")) c.sigma = number(v.at("sigma"), "/verify/sigma");
    if (v.contains("tests")) {
      have_tests = true;
      const json& tests = v.at("tests");
      if (!tests.is_array()) fail("/verify/tests", "expected an array");
      for (std::size_t i = 0; i < tests.size(); ++i) {
        const std::string p = "/verify/tests/" + std::to_string(i);
        const json& t = tests[i];
        if (!t.is_object()) fail(p, "expected an object");
        TestSpec spec;
        spec.path = p;
        spec.kind = string_of(require(t, p, "kind"), p + "/kind");
        static const std::set<std::string> kinds{"avoidance_factorization", "strong_martingale", "f4_diagnostic",
                                                 "reconstruction", "single_jump_mean", "line_avoidance"};
        if (!kinds.count(spec.kind)) fail(p + "/kind", "unknown test '" + spec.kind + "'");
        if (t.contains("expect")) {
          const std::string e = string_of(t.at("expect"), p + "/expect");
          if (e == "pass") {
            spec.expect = Verdict::pass;
          } else if (e == "fail") {
            spec.expect = Verdict::fail;
          } else {
            fail(p + "/expect", "expected \"pass\" or \"fail\"");
          }
        }
        spec.params = t;
        spec.params.erase("kind");
        spec.params.erase("expect");
        c.tests.push_back(std::move(spec));
      }
    }
  }
  if (!have_tests) {
    c.tests = default_battery(c);
    c.default_battery = true;
  }
  for (const TestSpec& t : c.tests) dispatch(c, t, 0, 1, true);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigurationError(path.string() + ": " + e.what());
  }
  return parse_config(j, path.parent_path());
}

std::vector<TestSpec> default_battery(const ExperimentConfig& c) {
  const Window& w = c.window;
  const Point mid{0.5 * w.x_max, 0.5 * w.y_max};
  const Point top = w.upper_corner();
  auto spec = [](std::string kind, json params, Verdict expect = Verdict::pass) {
    std::string path = "/verify/tests (default) /" + kind;
    return TestSpec{std::move(kind), expect, std::move(params), std::move(path)};
  };
  const json avoid{{"s", point_json({mid.x, top.y})}, {"t", point_json({top.x, mid.y})}, {"n", 200000}};
  json avoid_control = avoid;
  avoid_control["target_scale"] = 1.05;
  const json mart{{"s", point_json(mid)}, {"t", point_json(top)}, {"n", 100000}, {"functionals", "default"}};
  const json mart_control{{"s", point_json(mid)},
                          {"t", point_json(top)},
                          {"n", 100000},
                          {"functionals", json::array({json{{"kind", "constant"}}})},
                          {"compensator_scale", 1.1}};
  const json f4{{"t", point_json(mid)}, {"n", 100000}};
  const json line2{{"k", 2}, {"t", point_json(top)}, {"n", 100000}};
  const json line2_control{{"k", 2}, {"t", point_json(top)}, {"n", 20000}, {"hazard_scale", 1.5}};

  std::vector<TestSpec> out;
  const std::string& kind = c.model.kind;
  if (kind == "poisson") {
    out.push_back(spec("reconstruction", {{"n", 1000}}));
    out.push_back(spec("avoidance_factorization", avoid));
    out.push_back(spec("avoidance_factorization", avoid_control, Verdict::fail));
    out.push_back(spec("strong_martingale", mart));
    out.push_back(spec("strong_martingale", mart_control, Verdict::fail));
    out.push_back(spec("line_avoidance", line2));
    out.push_back(spec("line_avoidance", line2_control, Verdict::fail));
    out.push_back(spec("f4_diagnostic", f4));
  } else if (kind == "single_line") {
    out.push_back(spec("avoidance_factorization", avoid));
    out.push_back(spec("avoidance_factorization", avoid_control, Verdict::fail));
    out.push_back(spec("strong_martingale", mart));
    out.push_back(spec("strong_martingale", mart_control, Verdict::fail));
  } else if (kind == "cox") {
    out.push_back(spec("reconstruction", {{"n", 1000}}));
    out.push_back(spec("strong_martingale", mart));
    out.push_back(spec("strong_martingale", mart_control, Verdict::fail));
    out.push_back(spec("line_avoidance", line2));
    out.push_back(spec("line_avoidance", line2_control, Verdict::fail));
    const auto& cox = std::get<CoxModel>(*c.model.pattern);
    if (std::holds_alternative<ScaleMixtureDriver>(cox.driver)) {
      json revealed = f4;
      revealed["reveal_driver"] = true;
      out.push_back(spec("f4_diagnostic", revealed));
      out.push_back(spec("f4_diagnostic", f4, Verdict::fail));
    }
  } else if (kind == "single_jump_1d") {
    const json mean{{"t", w.x_max}, {"n", 100000}};
    json control = mean;
    control["target_scale"] = 1.05;
    out.push_back(spec("single_jump_mean", mean));
    out.push_back(spec("single_jump_mean", control, Verdict::fail));
  } else if (kind == "single_jump_2d") {
    const json mean{{"t", point_json(top)}, {"n", 100000}, {"mode", "star"}};
    json control{{"t", point_json(top)}, {"n", 20000}, {"mode", "star"}, {"target_scale", 1.1}};
    out.push_back(spec("single_jump_mean", mean));
    out.push_back(spec("single_jump_mean", control, Verdict::fail));
  }
  return out;
}

std::uint64_t test_seed(std::uint64_t master, std::size_t index) {
  return stream_seed(master, 0x5EED000000000000ULL + index);
}

namespace {

// Parses the parameters of one test and runs it; with dry set, stops once
// everything is checked.
std::vector<ReportEntry> dispatch(const ExperimentConfig& c, const TestSpec& test, std::uint64_t seed, unsigned jobs,
                                  bool dry) {
  const json& p = test.params;
  const std::string path = test.path.empty() ? "/verify/tests/" + test.kind : test.path;
  const Window& w = c.window;
  const Point mid{0.5 * w.x_max, 0.5 * w.y_max};
  const Point top = w.upper_corner();

  RunOptions opt;
  opt.jobs = jobs;
  opt.seed = count_or(p, path, "seed", seed);
  auto need_pattern = [&]() -> const PatternModel& {
    if (!c.model.pattern) throw UnsupportedModel(test.kind + " needs a poisson, cox or single_line model");
    return *c.model.pattern;
  };
  auto entries = [&](std::vector<MCReport> reports) {
    std::vector<ReportEntry> out;
    for (auto& r : reports) out.push_back({std::move(r), test.expect});
    return out;
  };

  if (test.kind == "avoidance_factorization") {
    allow_keys(p, path, {"s", "t", "n", "sigma", "target_scale", "seed"});
    opt.n = count_or(p, path, "n", 200000);
    opt.sigma = optional_sigma(c, p, path).value_or(3.0);
    if (dry) return (void)need_pattern(), std::vector<ReportEntry>{};
    return entries({test_avoidance_factorization(need_pattern(), point_or(p, path, "s", {mid.x, top.y}),
                                                 point_or(p, path, "t", {top.x, mid.y}), opt,
                                                 number_or(p, path, "target_scale", 1.0))});
  }
  if (test.kind == "strong_martingale") {
    allow_keys(p, path, {"s", "t", "n", "sigma", "functionals", "compensator_scale", "seed"});
    opt.n = count_or(p, path, "n", 100000);
    const Point s = point_or(p, path, "s", mid);
    std::vector<TestFunctional> functionals;
    if (!p.contains("functionals") || p.at("functionals") == "default") {
      functionals = guarded(path, [&] { return default_functionals(w, s); });
    } else {
      const json& fs = p.at("functionals");
      if (!fs.is_array() || fs.empty()) fail(path + "/functionals", "expected \"default\" or a nonempty array");
      for (std::size_t i = 0; i < fs.size(); ++i) {
        functionals.push_back(parse_functional(fs[i], path + "/functionals/" + std::to_string(i)));
      }
    }
    opt.sigma = optional_sigma(c, p, path).value_or(functionals.size() >= 10 ? 4.0 : 3.0);
    if (dry) return (void)need_pattern(), std::vector<ReportEntry>{};
    return entries(test_strong_martingale(need_pattern(), s, point_or(p, path, "t", top), functionals, opt,
                                          number_or(p, path, "compensator_scale", 1.0)));
  }
  if (test.kind == "f4_diagnostic") {
    allow_keys(p, path, {"t", "n", "sigma", "reveal_driver", "cap", "min_stratum", "bins", "seed"});
    opt.n = count_or(p, path, "n", 100000);
    opt.sigma = optional_sigma(c, p, path).value_or(3.0);
    F4Options f4;
    if (p.contains("reveal_driver")) {
      if (!p.at("reveal_driver").is_boolean()) fail(path + "/reveal_driver", "expected a boolean");
      f4.reveal_driver = p.at("reveal_driver").get<bool>();
    }
    f4.cap = count_or(p, path, "cap", f4.cap);
    f4.min_stratum = count_or(p, path, "min_stratum", f4.min_stratum);
    f4.driver_bins = count_or(p, path, "bins", f4.driver_bins);
    if (dry) return (void)need_pattern(), std::vector<ReportEntry>{};
    return entries({test_f4_diagnostic(need_pattern(), point_or(p, path, "t", mid), opt, f4)});
  }
  if (test.kind == "line_avoidance") {
    allow_keys(p, path, {"k", "t", "n", "sigma", "hazard_scale", "seed"});
    opt.n = count_or(p, path, "n", 100000);
    opt.sigma = optional_sigma(c, p, path).value_or(3.0);
    const std::size_t k = count_or(p, path, "k", 1);
    const Point t = point_or(p, path, "t", top);
    const double scale = number_or(p, path, "hazard_scale", 1.0);
    if (dry) return (void)need_pattern(), std::vector<ReportEntry>{};
    return entries({test_line_avoidance(need_pattern(), k, t, opt, scale)});
  }
  if (test.kind == "reconstruction") {
    allow_keys(p, path, {"n", "tolerance", "seed"});
    opt.n = count_or(p, path, "n", 1000);
    const auto grid = regular_grid(w, c.grid_nx, c.grid_ny);
    const double tol = number_or(p, path, "tolerance", 1e-9);
    if (dry) return (void)need_pattern(), std::vector<ReportEntry>{};
    return entries({test_poisson_reconstruction(need_pattern(), grid, opt, tol)});
  }
  if (test.kind == "single_jump_mean") {
    allow_keys(p, path, {"t", "n", "sigma", "mode", "target_scale", "seed"});
    opt.n = count_or(p, path, "n", 100000);
    opt.sigma = optional_sigma(c, p, path).value_or(3.0);
    const double scale = number_or(p, path, "target_scale", 1.0);
    if (c.model.jump_1d) {
      const double t = p.contains("t") ? number(p.at("t"), path + "/t") : w.x_max;
      if (dry) return {};
      return entries({test_single_jump_mean(*c.model.jump_1d, t, opt, scale)});
    }
    if (c.model.jump_2d) {
      CompensatorMode mode = CompensatorMode::star;
      if (p.contains("mode")) {
        const std::string m = string_of(p.at("mode"), path + "/mode");
        if (m == "weak") {
          mode = CompensatorMode::weak;
        } else if (m != "star") {
          fail(path + "/mode", "expected \"weak\" or \"star\"");
        }
      }
      const Point t = point_or(p, path, "t", top);
      if (dry) return {};
      return entries({test_single_jump_mean(*c.model.jump_2d, t, mode, opt, scale)});
    }
    throw UnsupportedModel("single_jump_mean needs a single_jump_1d or single_jump_2d model");
  }
  fail(path, "unknown test kind");
}

}  // namespace

std::vector<ReportEntry> run_test(const ExperimentConfig& c, const TestSpec& test, std::uint64_t seed,
                                  unsigned jobs) {
  return dispatch(c, test, seed, jobs, false);
}

}  // namespace pcomp
