#pragma once

// Seeded samplers for Poisson, Cox, single line and single jump processes.
//
// Every sampler is a pure function of (model, generator state). Coordinate
// collisions (probability zero in exact arithmetic, possible after float
// quantization) trigger a full resample of the pattern; the number of
// resamples is reported with the sample.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcomp/distributions.hpp"
#include "pcomp/geometry.hpp"
#include "pcomp/hazard.hpp"
#include "pcomp/random.hpp"

namespace pcomp {

// gamma = W * base, W drawn once per replicate.
struct ScaleMixtureDriver {
  HazardMeasure base;
  Law1D w;
};

// Independent constant intensities on the four blocks cut by `split`.
struct TwoRegionDriver {
  Window window;
  Point split;
  Law1D intensity;
};

using CoxDriver = std::variant<ScaleMixtureDriver, TwoRegionDriver>;

Window driver_window(const CoxDriver& driver);

// The realized driving measure of one Cox replicate; the initial
// information of the process.
struct RealizedDriver {
  std::string family;          // "scale_mixture" or "two_region"
  std::vector<double> values;  // W, or the four block intensities (row-major)
  HazardMeasure measure;
};

RealizedDriver realize_driver(const CoxDriver& driver, Rng& rng);
// The driver realization with the given values (as recorded in metadata).
RealizedDriver realized_from_values(const CoxDriver& driver, std::vector<double> values);

struct PoissonModel {
  HazardMeasure hazard;
};

struct CoxModel {
  CoxDriver driver;
};

// First line of a Poisson process with mean measure `hazard`.
struct SingleLineModel {
  HazardMeasure hazard;
};

using PatternModel = std::variant<PoissonModel, CoxModel, SingleLineModel>;

Window model_window(const PatternModel& model);
std::string model_kind(const PatternModel& model);

struct PatternSample {
  PointPattern pattern;
  std::optional<RealizedDriver> driver;
  std::size_t resamples = 0;
};

PatternSample sample_poisson(const HazardMeasure& h, Rng& rng);
PatternSample sample_poisson(const HazardMeasure& h, std::uint64_t seed);

PatternSample sample_cox(const CoxDriver& driver, Rng& rng);
PatternSample sample_cox(const CoxDriver& driver, std::uint64_t seed);

PatternSample sample_single_line(const HazardMeasure& h, Rng& rng);
PatternSample sample_single_line(const HazardMeasure& h, std::uint64_t seed);

double sample_single_jump(const SingleJump1D& model, Rng& rng);
Point sample_single_jump(const SingleJump2D& model, Rng& rng);

PatternSample sample_pattern(const PatternModel& model, Rng& rng);

}  // namespace pcomp
