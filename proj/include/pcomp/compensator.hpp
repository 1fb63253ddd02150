#pragma once

// Compensator formulas.
//
// One dimension: the single jump compensator Lambda(t ^ tau) and the
// regenerative sum over conditional cumulative hazards of successive jumps.
//
// Two dimensions: the weak and * compensators of a single jump process as
// integrals of dF / (1 - F) and dF / S, and the regenerative *-compensator
// of a general strictly simple pattern:
//
//   N*(t) = sum_{k >= 1} Lambda_k(A_t  intersect  xi_k) 1{t not in xi_{k-1}}
//
// where Lambda_k, the conditional cumulative hazard of the k-th single line
// given the history up to xi_{k-1}, is supported on xi_{k-1}^+ \ xi_{k-1}.
// The sum is finite on a bounded window: xi_{n+1} is the whole window for a
// pattern with n points, so terms k > n + 1 vanish.

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pcomp/distributions.hpp"
#include "pcomp/geometry.hpp"
#include "pcomp/hazard.hpp"
#include "pcomp/simulate.hpp"

namespace pcomp {

// Source of the conditional cumulative hazards Lambda_k for one realized
// pattern (and, for Cox models, one realized driver).
class ConditionalHazardProvider {
 public:
  virtual ~ConditionalHazardProvider() = default;

  virtual const Window& window() const = 0;
  virtual std::string name() const = 0;

  // Lambda_k(A_t intersect L), given xi_{k-1} = prev and xi_{k-1}^+ = prev_plus.
  virtual double conditional_mass(std::size_t k, const Staircase& prev, const Staircase& prev_plus,
                                  const Point& t, const Staircase& L) const = 0;
};

// Lambda_k(B) = base(B intersect prev_plus \ prev) for k <= max_line, zero
// beyond. Realizes the Poisson provider (deterministic base), the Cox
// provider (realized driver as base) and, with max_line = 1, the single
// line process with cumulative hazard `base`.
class MeasureProvider final : public ConditionalHazardProvider {
 public:
  MeasureProvider(HazardMeasure base, std::string name, std::size_t max_line = 0);

  const Window& window() const override { return base_.window(); }
  std::string name() const override { return name_; }
  double conditional_mass(std::size_t k, const Staircase& prev, const Staircase& prev_plus, const Point& t,
                          const Staircase& L) const override;

  const HazardMeasure& base() const { return base_; }

 private:
  HazardMeasure base_;
  std::string name_;
  std::size_t max_line_;  // 0 means unbounded
};

// User-supplied Lambda_k for models outside the shipped menu.
class CallbackProvider final : public ConditionalHazardProvider {
 public:
  using Callback = std::function<double(std::size_t k, const Staircase& prev, const Staircase& prev_plus,
                                        const Point& t, const Staircase& L)>;

  CallbackProvider(Window window, Callback callback, std::string name = "callback");

  const Window& window() const override { return window_; }
  std::string name() const override { return name_; }
  double conditional_mass(std::size_t k, const Staircase& prev, const Staircase& prev_plus, const Point& t,
                          const Staircase& L) const override;

 private:
  Window window_;
  Callback callback_;
  std::string name_;
};

std::unique_ptr<ConditionalHazardProvider> poisson_provider(const HazardMeasure& mean_measure);
std::unique_ptr<ConditionalHazardProvider> cox_provider(const RealizedDriver& driver);
std::unique_ptr<ConditionalHazardProvider> single_line_provider(const HazardMeasure& cumulative_hazard);

// Provider matching the model that generated `sample`.
std::unique_ptr<ConditionalHazardProvider> provider_for(const PatternModel& model, const PatternSample& sample);

// xi_k and xi_k^+ for k = 0 .. n+1, computed once per pattern.
struct StageGeometry {
  explicit StageGeometry(const PointPattern& pattern);

  Window window;
  std::vector<Staircase> xi;
  std::vector<Staircase> xi_plus;
};

struct CompensatorEvaluation {
  Point t;
  double value = 0.0;
  // per_line[k-1] is the contribution of line k, k = 1 .. n+1.
  std::vector<double> per_line;
};

CompensatorEvaluation star_compensator(const StageGeometry& stages, const ConditionalHazardProvider& provider,
                                       const Point& t);
CompensatorEvaluation star_compensator(const PointPattern& pattern, const ConditionalHazardProvider& provider,
                                       const Point& t);

// N*((s, t]) by four-corner inclusion-exclusion.
double star_compensator_increment(const StageGeometry& stages, const ConditionalHazardProvider& provider,
                                  const Point& s, const Point& t);

// Evaluations at every grid point, in the order given.
std::vector<CompensatorEvaluation> star_compensator_path(const PointPattern& pattern,
                                                         const ConditionalHazardProvider& provider,
                                                         std::span<const Point> grid);

// Interior grid (i x_max / nx, j y_max / ny), i = 1..nx, j = 1..ny, in
// lexicographic order.
std::vector<Point> regular_grid(const Window& window, std::size_t nx, std::size_t ny);

using CumulativeHazard1D = std::function<double(double)>;

// -ln(1 - F(min(t, tau))). Throws SingularHazard when F reaches one there.
double compensator_1d_single_jump(const std::function<double(double)>& cdf, double tau, double t);

// sum_n Lambda_n(min(t, tau_n)) 1{tau_{n-1} < t}, tau_0 = 0 and
// tau_n = infinity past the last jump. hazards[n-1] is Lambda_n.
double compensator_1d_regenerative(std::span<const CumulativeHazard1D> hazards, std::span<const double> jumps,
                                   double t);

// Lambda_n(u) = rate (u - tau_{n-1})^+ for n = 1 .. jumps.size() + 1.
std::vector<CumulativeHazard1D> poisson_conditional_hazards(double rate, std::span<const double> jumps);
// Lambda_n(u) = H(u - tau_{n-1}) for u > tau_{n-1}, H the interarrival
// cumulative hazard.
std::vector<CumulativeHazard1D> renewal_conditional_hazards(const Law1D& interarrival,
                                                            std::span<const double> jumps);

enum class CompensatorMode { weak, star };

// Integral over [0, t ^ tau] of f(u) / (1 - F(u)) (weak) or f(u) / S(u)
// (star) by nested adaptive Gauss-Kronrod quadrature (relative tolerance
// 1e-10 inner, 1e-9 outer). Throws SingularIntegral when the denominator
// vanishes in the region.
double compensator_2d_single_jump(const SingleJump2D& model, const Point& tau, const Point& t,
                                  CompensatorMode mode);

}  // namespace pcomp
