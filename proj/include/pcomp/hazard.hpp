#pragma once

// Continuous measures on the observation window.
//
// A HazardMeasure is anything whose rectangle masses are nonnegative and
// whose lines carry no mass: a cumulative hazard Lambda, a Poisson mean
// measure, or a realized Cox driving measure. Every evaluation reduces to
// rect_mass on half-open rectangles (s, t]; region_mass extends it to
// A_t intersected with a staircase by a disjoint slab decomposition.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pcomp/geometry.hpp"

namespace pcomp {

// Piecewise-linear nondecreasing function through (knots[i], values[i]),
// knots[0] = 0 and values[0] = 0. Represents a one-dimensional cumulative
// mass with piecewise-constant density.
class Cumulative1D {
 public:
  Cumulative1D(std::vector<double> knots, std::vector<double> values);
  // G(u) = rate * u on [0, length].
  static Cumulative1D linear(double rate, double length);

  double operator()(double u) const;
  // Smallest u with G(u) >= v, for v in [0, G(length)].
  double inverse(double v) const;
  double density(double u) const;
  double length() const { return knots_.back(); }
  double total() const { return values_.back(); }
  std::span<const double> knots() const { return knots_; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
};

struct ProductForm {
  Cumulative1D x;
  Cumulative1D y;
};

// Piecewise-constant density on a rectangular mesh. density is row-major:
// cell (i, j) spanning [x_mesh[i], x_mesh[i+1]] x [y_mesh[j], y_mesh[j+1]]
// is density[j * (x_mesh.size() - 1) + i].
struct GridForm {
  std::vector<double> x_mesh;
  std::vector<double> y_mesh;
  std::vector<double> density;

  std::size_t nx() const { return x_mesh.size() - 1; }
  std::size_t ny() const { return y_mesh.size() - 1; }
  double cell(std::size_t i, std::size_t j) const { return density[j * nx() + i]; }
};

using ScalarField = std::function<double(const Point&)>;

struct AntiderivativeForm {
  ScalarField H;                     // H(t) = Lambda(A_t)
  ScalarField density;               // optional; used for sampling
  std::optional<double> density_bound;
  std::string label;
};

struct AntiderivativeOptions {
  ScalarField density;
  std::optional<double> density_bound;
  std::string label = "antiderivative";
  std::size_t check_resolution = 64;
};

enum class MeasureForm { product, grid, antiderivative };

class HazardMeasure {
 public:
  using Representation = std::variant<ProductForm, GridForm, AntiderivativeForm>;

  static HazardMeasure product(Window window, Cumulative1D x, Cumulative1D y, double scale = 1.0);
  // rate times Lebesgue measure.
  static HazardMeasure lebesgue(Window window, double rate = 1.0);
  static HazardMeasure zero(Window window);
  static HazardMeasure grid(Window window, std::vector<double> x_mesh, std::vector<double> y_mesh,
                            std::vector<double> density);
  // Validates nonnegative increments on a check grid and screens for mass on
  // lines (see check_line_continuity). Throws InvalidMeasure on failure.
  static HazardMeasure antiderivative(Window window, ScalarField H, AntiderivativeOptions options = {});

  const Window& window() const { return window_; }
  MeasureForm form() const;
  const Representation& representation() const { return *repr_; }
  double scale() const { return scale_; }
  HazardMeasure scaled(double factor) const;

  // Lambda((s, t]). Requires s <= t inside the closed window.
  double rect_mass(const Point& s, const Point& t) const;
  // Lambda(A_t).
  double mass(const Point& t) const { return rect_mass({0.0, 0.0}, t); }
  double total() const { return mass(window_.upper_corner()); }
  // Density at p when available (product, grid, antiderivative with a
  // density or a finite-difference fallback).
  double density(const Point& p) const;

 private:
  HazardMeasure(Window window, Representation repr, double scale);

  Window window_;
  std::shared_ptr<const Representation> repr_;
  double scale_ = 1.0;
};

// Lambda(A_t intersected with L).
double region_mass(const HazardMeasure& h, const Point& t, const Staircase& L);
double rect_mass(const HazardMeasure& h, const Point& s, const Point& t);

// P_0(t) = exp(-Lambda(A_t)).
double avoidance_from_hazard(const HazardMeasure& h, const Point& t);
// P(L inside xi_1(M)) = exp(-Lambda(L)).
double avoidance_from_hazard(const HazardMeasure& h, const Staircase& L);

// Avoidance function view over a hazard.
class AvoidanceFunction {
 public:
  explicit AvoidanceFunction(HazardMeasure hazard) : hazard_(std::move(hazard)) {}
  double operator()(const Point& t) const { return avoidance_from_hazard(hazard_, t); }
  const HazardMeasure& hazard() const { return hazard_; }
  const Window& window() const { return hazard_.window(); }

 private:
  HazardMeasure hazard_;
};

struct IncreasingCheck {
  bool ok = true;
  // Lower-left and upper-right corners of the first offending grid cell.
  Point violation_lower;
  Point violation_upper;
  double increment = 0.0;
};

// Scans every cell of a resolution x resolution grid and reports the first
// cell with a negative rectangle increment of H.
IncreasingCheck check_increasing(const ScalarField& H, const Window& window, std::size_t resolution);
IncreasingCheck check_increasing(const HazardMeasure& h, std::size_t resolution);

struct ContinuityCheck {
  bool ok = true;
  Point probe;
  double ratio = 0.0;
};

// Screens an antiderivative for mass carried by lines or points: for probe
// squares of side eps (relative to the window) the normalized mass
// m(eps) / eps must drop by at least a factor three between eps = 1e-2 and
// eps = 1e-3. A continuous density drops it tenfold; a line mass not at all.
ContinuityCheck check_line_continuity(const ScalarField& H, const Window& window);

// Builds the antiderivative-form hazard H = -ln p. Rejects p <= 0 or p != 1
// on the axes with DomainError, and a p whose negative log is not a
// continuous measure with InvalidAvoidance.
HazardMeasure hazard_from_avoidance(const ScalarField& p, const Window& window,
                                    std::size_t resolution = 64);

}  // namespace pcomp
