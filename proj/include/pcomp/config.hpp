#pragma once

// Experiment configuration (JSON). Layout:
//
//   {
//     "window": [x_max, y_max],
//     "seed": 42,
//     "output_dir": "out",
//     "model": { "kind": "poisson", "hazard": { "form": "product", "rate": 1 } },
//     "grid": { "nx": 3, "ny": 3 },
//     "simulate": { "count": 3 },
//     "verify": { "sigma": 3, "tests": [ { "kind": "avoidance_factorization", ... } ] }
//   }
//
// Unknown keys are rejected; diagnostics name the offending JSON path.
// The full schema is config.schema.json in the repository root.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcomp/distributions.hpp"
#include "pcomp/hazard.hpp"
#include "pcomp/io.hpp"
#include "pcomp/simulate.hpp"
#include "pcomp/verify.hpp"

namespace pcomp {

struct ModelSpec {
  std::string kind;  // poisson, cox, single_line, single_jump_1d, single_jump_2d
  std::optional<PatternModel> pattern;
  std::optional<SingleJump1D> jump_1d;
  std::optional<SingleJump2D> jump_2d;
};

struct TestSpec {
  std::string kind;  // avoidance_factorization, strong_martingale, f4_diagnostic, reconstruction,
                     // single_jump_mean, line_avoidance
  Verdict expect = Verdict::pass;
  nlohmann::json params = nlohmann::json::object();
  std::string path;  // JSON path used in diagnostics
};

struct ExperimentConfig {
  nlohmann::json source;  // effective configuration, overrides applied
  std::filesystem::path base_dir;
  Window window{1.0, 1.0};
  ModelSpec model;
  std::size_t grid_nx = 3;
  std::size_t grid_ny = 3;
  std::size_t simulate_count = 1;
  std::optional<double> sigma;  // overrides per-test defaults
  std::vector<TestSpec> tests;
  bool default_battery = false;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
};

// Throws ConfigurationError with the JSON path of the first problem. Test
// parameters are checked here too, before anything runs.
ExperimentConfig parse_config(const nlohmann::json& config, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

HazardMeasure parse_hazard(const nlohmann::json& spec, const Window& window, const std::filesystem::path& base_dir,
                           const std::string& path);
Law1D parse_law(const nlohmann::json& spec, const std::string& path);

// Tests run when the configuration lists none: the identities that apply to
// the model kind, each equality paired with a perturbed control expected
// to fail.
std::vector<TestSpec> default_battery(const ExperimentConfig& config);

// Seed of the index-th test under the master seed, unless the test sets
// its own "seed".
std::uint64_t test_seed(std::uint64_t master, std::size_t index);

std::vector<ReportEntry> run_test(const ExperimentConfig& config, const TestSpec& test, std::uint64_t seed,
                                  unsigned jobs);

}  // namespace pcomp
