#pragma once

// Monte Carlo checks of the compensator identities.
//
// Replicate r of a test draws from make_stream(seed, r). Replicates may run
// on several threads, but results are stored by index and reduced serially
// in index order, so a report depends only on (inputs, seed, n).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pcomp/compensator.hpp"
#include "pcomp/distributions.hpp"
#include "pcomp/geometry.hpp"
#include "pcomp/hazard.hpp"
#include "pcomp/simulate.hpp"

namespace pcomp {

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

struct MCReport {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double target = 0.0;
  double z = 0.0;
  std::size_t n = 0;
  double sigma = 0.0;  // 0 for deterministic checks
  Verdict verdict = Verdict::inconclusive;
  std::uint64_t seed = 0;
  std::string note;
};

// Count, sum and sum of squares; merged associatively.
struct Moments {
  std::size_t n = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double v) {
    ++n;
    sum += v;
    sum_sq += v * v;
  }
  void merge(const Moments& other) {
    n += other.n;
    sum += other.sum;
    sum_sq += other.sum_sq;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  // Unbiased sample variance.
  double variance() const;
  double std_error() const;
};

// Verdict pass iff |estimate - target| <= sigma * std_error. With a zero
// standard error the two must agree to 1e-12 relative.
MCReport z_report(std::string name, const Moments& m, double target, double sigma, std::uint64_t seed,
                  std::string note = {});

// Calls fn(r) for r in [0, n) on up to `jobs` threads (0 means hardware
// concurrency). fn must only write to slot r of caller-owned storage.
void for_each_replicate(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

// The pattern seen through A_s, D_s or a staircase. Only points in the
// region are kept, and every query must stay inside the region.
class RegionRestriction {
 public:
  enum class Kind { rectangle, quadrant_complement, staircase };

  static RegionRestriction A(const PointPattern& pattern, const Point& s);
  static RegionRestriction D(const PointPattern& pattern, const Point& s);
  static RegionRestriction in(const PointPattern& pattern, const Staircase& L);

  Kind kind() const { return kind_; }
  bool region_contains(const Point& p) const;

  // Points in (lo.x, hi.x] x (lo.y, hi.y]. Throws MeasurabilityViolation
  // unless hi lies in the region (the box is then inside it).
  std::size_t count_in(const Point& lo, const Point& hi) const;
  const PointPattern& pattern() const { return restricted_; }

  // Restricting again to the same region changes nothing.
  RegionRestriction restrict_again() const;

 private:
  RegionRestriction(Kind kind, Point s, std::optional<Staircase> L, PointPattern restricted);

  Kind kind_;
  Point s_;
  std::optional<Staircase> staircase_;
  PointPattern restricted_;
};

struct Cell {
  Point lo;
  Point hi;
};

// Bounded functional of a region restriction.
class TestFunctional {
 public:
  using Fn = std::function<double(const RegionRestriction&)>;

  static TestFunctional constant(double c);
  static TestFunctional zero_indicator(const Cell& cell);
  static TestFunctional capped_count(const Cell& cell, std::size_t cap);
  static TestFunctional product(const Cell& a, const Cell& b);  // both cells empty

  const std::string& id() const { return id_; }
  double bound() const { return bound_; }
  double operator()(const RegionRestriction& r) const;

 private:
  TestFunctional(std::string id, double bound, Fn fn);

  std::string id_;
  double bound_;
  Fn fn_;
};

// Ten functionals measurable with respect to D_s: the constant one, empty
// and capped-count indicators of A_s, of the two strips of D_s \ A_s and of
// A_{s/2}, the product of the strip indicators, and a capped count of the
// full-height strip (0, s.x] x (0, y_max].
std::vector<TestFunctional> default_functionals(const Window& window, const Point& s);

struct RunOptions {
  std::size_t n = 100000;
  double sigma = 3.0;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

// Joint avoidance P(M(s) = 0, M(t) = 0) of the first line against
// P0(s) P0(t) / P0(s ^ t). target_scale perturbs the target (controls).
MCReport test_avoidance_factorization(const PatternModel& model, const Point& s, const Point& t,
                                      const RunOptions& opt, double target_scale = 1.0);

// For each Z: E[Z(pattern | D_s) ((N - c N*)(s, t])] against 0, with
// c = compensator_scale.
std::vector<MCReport> test_strong_martingale(const PatternModel& model, const Point& s, const Point& t,
                                             const std::vector<TestFunctional>& functionals, const RunOptions& opt,
                                             double compensator_scale = 1.0);

struct F4Options {
  bool reveal_driver = false;
  std::size_t cap = 5;
  std::size_t min_stratum = 30;
  std::size_t driver_bins = 10;
};

// Pooled within-stratum covariance of the capped counts in
// [0, t.x] x (t.y, y_max] and (t.x, x_max] x [0, t.y], strata given by the
// count in A_t (and the driver bin when revealed). Target 0.
MCReport test_f4_diagnostic(const PatternModel& model, const Point& t, const RunOptions& opt,
                            const F4Options& f4 = {});

// E[1{M_k(t) = 0} - exp(-c Lambda_k(A_t))] against 0, c = hazard_scale.
// Lambda_k(A_t) = -ln P(M_k(t) = 0 | history up to xi_{k-1}), so the
// conditional terms average to zero.
MCReport test_line_avoidance(const PatternModel& model, std::size_t k, const Point& t, const RunOptions& opt,
                             double hazard_scale = 1.0);

// Max over realizations and grid points of |N*(t) - Lambda(A_t)|, with
// Lambda the mean measure (Poisson) or the realized driver (Cox). Pass
// below `tolerance`.
MCReport test_poisson_reconstruction(const PatternModel& model, std::span<const Point> grid, const RunOptions& opt,
                                     double tolerance = 1e-9);

// Mean of the computed compensator at t against F(t) = E N(t).
MCReport test_single_jump_mean(const SingleJump1D& model, double t, const RunOptions& opt, double target_scale = 1.0);
MCReport test_single_jump_mean(const SingleJump2D& model, const Point& t, CompensatorMode mode,
                               const RunOptions& opt, double target_scale = 1.0);

}  // namespace pcomp
