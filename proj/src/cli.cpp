#include "pcomp/cli.hpp"

#include <chrono>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcomp/compensator.hpp"
#include "pcomp/config.hpp"
#include "pcomp/errors.hpp"
#include "pcomp/io.hpp"
#include "pcomp/random.hpp"
#include "pcomp/simulate.hpp"

namespace pcomp {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

template <class F>
int guard(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const UnsupportedModel& e) {
    err << "error: unsupported model: " << e.what() << "\n";
    return kExitConfig;
  } catch (const StrictSimplicityError& e) {
    err << "error: pattern is not strictly simple: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

// Configuration with --seed applied before parsing, so the hash covers it.
ExperimentConfig effective_config(const CliOptions& opt) {
  if (!opt.config) throw ConfigurationError("--config is required for this command");
  const std::string text = read_text(*opt.config);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigurationError(opt.config->string() + ": " + e.what());
  }
  if (opt.seed) j["seed"] = *opt.seed;
  return parse_config(j, opt.config->parent_path());
}

fs::path output_dir(const CliOptions& opt, const ExperimentConfig* config) {
  if (opt.out) return *opt.out;
  if (config) return config->output_dir;
  return "out";
}

void write_manifest(const fs::path& dir, const std::string& command, const std::string& hash, Clock::time_point start,
                    const std::vector<std::string>& outputs) {
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  write_atomic(dir / "manifest.json", manifest_json(command, hash, seconds, outputs).dump(2) + "\n");
}

json driver_json(const std::optional<RealizedDriver>& d) {
  if (!d) return nullptr;
  return {{"family", d->family}, {"values", d->values}};
}

struct LoadedPattern {
  PointPattern pattern;
  json metadata;  // empty object without a sidecar
};

LoadedPattern load_pattern(const CliOptions& opt, const ExperimentConfig* config) {
  if (!opt.pattern) throw ConfigurationError("--pattern is required for this command");
  const std::string text = read_text(*opt.pattern);
  json meta = json::object();
  std::optional<Window> window;
  const fs::path side = sidecar_path(*opt.pattern);
  if (fs::exists(side)) {
    try {
      meta = json::parse(read_text(side));
    } catch (const json::parse_error& e) {
      throw ConfigurationError(side.string() + ": " + e.what());
    }
    if (meta.contains("window")) {
      const auto& w = meta.at("window");
      if (!w.is_array() || w.size() != 2) throw ConfigurationError(side.string() + ": window must be [x, y]");
      window = Window(w[0].get<double>(), w[1].get<double>());
    }
  }
  if (config) {
    if (window && !(*window == config->window)) {
      throw ConfigurationError("pattern window differs from the configured window");
    }
    window = config->window;
  }
  if (!window) throw ConfigurationError("no window for " + opt.pattern->string() + ": add a sidecar or --config");
  return {pattern_from_csv(text, *window), std::move(meta)};
}

}  // namespace

int cmd_simulate(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    const auto start = Clock::now();
    const ExperimentConfig c = effective_config(opt);
    const fs::path dir = output_dir(opt, &c);
    const std::size_t count = opt.count.value_or(c.simulate_count);
    if (c.model.jump_1d) throw UnsupportedModel("single_jump_1d is a process on the line, not a planar pattern");

    std::vector<std::string> outputs;
    for (std::size_t r = 0; r < count; ++r) {
      Rng rng = make_stream(c.seed, r);
      PatternSample sample{PointPattern(c.window), std::nullopt, 0};
      json extra = json::object();
      if (c.model.pattern) {
        sample = sample_pattern(*c.model.pattern, rng);
      } else {
        const Point tau = sample_single_jump(*c.model.jump_2d, rng);
        extra["jump"] = {tau.x, tau.y};
        if (c.window.contains_open(tau)) sample.pattern = PointPattern(c.window, {tau});
      }
      const std::string stem = "pattern_" + std::to_string(r);
      json meta{{"window", {c.window.x_max, c.window.y_max}},
                {"seed", c.seed},
                {"replicate", r},
                {"stream_seed", stream_seed(c.seed, r)},
                {"model", c.model.kind},
                {"points", sample.pattern.size()},
                {"realized_driver", driver_json(sample.driver)},
                {"resamples", sample.resamples}};
      meta.update(extra);
      write_atomic(dir / (stem + ".csv"), pattern_to_csv(sample.pattern));
      write_atomic(dir / (stem + ".json"), meta.dump(2) + "\n");
      outputs.push_back(stem + ".csv");
      outputs.push_back(stem + ".json");
    }
    write_manifest(dir, "simulate", config_hash(c.source), start, outputs);
    out << "wrote " << count << " pattern(s) to " << dir.string() << "\n";
    return kExitOk;
  });
}

int cmd_decompose(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    const auto start = Clock::now();
    std::optional<ExperimentConfig> c;
    if (opt.config) c = effective_config(opt);
    const LoadedPattern loaded = load_pattern(opt, c ? &*c : nullptr);
    const fs::path dir = output_dir(opt, c ? &*c : nullptr);
    const SingleLineDecomposition d = decompose(loaded.pattern);

    std::vector<std::string> outputs{"lines.csv", "xi.csv"};
    write_atomic(dir / "lines.csv", lines_to_csv(d));
    write_atomic(dir / "xi.csv", stages_to_csv(d));
    if (opt.svg) {
      write_atomic(dir / "decomposition.svg", decomposition_svg(loaded.pattern, d));
      outputs.push_back("decomposition.svg");
    }
    write_manifest(dir, "decompose", c ? config_hash(c->source) : config_hash(json::object()), start, outputs);
    out << loaded.pattern.size() << " point(s) in " << d.lines.size() << " line(s):";
    for (const auto& line : d.lines) out << " " << line.size();
    out << "\n";
    return kExitOk;
  });
}

int cmd_compensate(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    const auto start = Clock::now();
    const ExperimentConfig c = effective_config(opt);
    if (!c.model.pattern) {
      throw UnsupportedModel(c.model.kind + " has no pattern-level provider; its compensator is a per-jump formula "
                             "checked by the single_jump_mean test");
    }
    const LoadedPattern loaded = load_pattern(opt, &c);
    const fs::path dir = output_dir(opt, &c);

    std::unique_ptr<ConditionalHazardProvider> provider;
    if (const auto* cox = std::get_if<CoxModel>(&*c.model.pattern)) {
      const json& drv = loaded.metadata.value("realized_driver", json());
      if (!drv.is_object()) {
        throw UnsupportedModel("a cox compensator needs the realized driver from the pattern sidecar");
      }
      const std::string family = drv.at("family").get<std::string>();
      const RealizedDriver realized = realized_from_values(cox->driver, drv.at("values").get<std::vector<double>>());
      if (realized.family != family) throw ConfigurationError("sidecar driver family differs from the configuration");
      provider = cox_provider(realized);
    } else {
      provider = provider_for(*c.model.pattern, PatternSample{loaded.pattern, std::nullopt, 0});
    }
    const auto grid = regular_grid(c.window, c.grid_nx, c.grid_ny);
    const auto path = star_compensator_path(loaded.pattern, *provider, grid);
    write_atomic(dir / "compensator.csv", compensator_path_to_csv(path));
    write_manifest(dir, "compensate", config_hash(c.source), start, {"compensator.csv"});
    out << "evaluated " << path.size() << " grid point(s) with provider " << provider->name() << "\n";
    return kExitOk;
  });
}

int cmd_verify(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    const auto start = Clock::now();
    const ExperimentConfig c = effective_config(opt);
    const fs::path dir = output_dir(opt, &c);

    std::vector<ReportEntry> entries;
    for (std::size_t i = 0; i < c.tests.size(); ++i) {
      auto got = run_test(c, c.tests[i], test_seed(c.seed, i), opt.jobs);
      entries.insert(entries.end(), got.begin(), got.end());
    }
    std::string records;
    bool failed = false, inconclusive = false;
    for (const auto& e : entries) {
      records += report_record(e) + "\n";
      const Outcome o = outcome_of(e);
      failed |= o == Outcome::unexpected;
      inconclusive |= o == Outcome::inconclusive;
    }
    const std::string summary = summary_table(entries);
    write_atomic(dir / "report.txt", records);
    write_atomic(dir / "summary.txt", summary);
    write_manifest(dir, "verify", config_hash(c.source), start, {"report.txt", "summary.txt"});
    out << summary;
    if (failed) return kExitTestFailure;
    if (inconclusive && !opt.allow_inconclusive) return kExitTestFailure;
    return kExitOk;
  });
}

}  // namespace pcomp
