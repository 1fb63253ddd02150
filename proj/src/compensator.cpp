#include "pcomp/compensator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pcomp/errors.hpp"

namespace pcomp {

MeasureProvider::MeasureProvider(HazardMeasure base, std::string name, std::size_t max_line)
    : base_(std::move(base)), name_(std::move(name)), max_line_(max_line) {}

double MeasureProvider::conditional_mass(std::size_t k, const Staircase& prev, const Staircase& prev_plus,
                                         const Point& t, const Staircase& L) const {
  if (max_line_ != 0 && k > max_line_) return 0.0;
  // prev is contained in prev_plus, so A_t n L n (prev_plus \ prev) has mass
  // base(A_t n L n prev_plus) - base(A_t n L n prev).
  const double upper = region_mass(base_, t, staircase_intersect(L, prev_plus));
  const double lower = region_mass(base_, t, staircase_intersect(L, prev));
  return std::max(0.0, upper - lower);
}

CallbackProvider::CallbackProvider(Window window, Callback callback, std::string name)
    : window_(window), callback_(std::move(callback)), name_(std::move(name)) {
  if (!callback_) throw ConfigurationError("callback provider: missing callback");
}

double CallbackProvider::conditional_mass(std::size_t k, const Staircase& prev, const Staircase& prev_plus,
                                          const Point& t, const Staircase& L) const {
  const double m = callback_(k, prev, prev_plus, t, L);
  if (!(m >= 0.0)) throw InvalidMeasure("callback provider returned a negative or NaN mass");
  return m;
}

std::unique_ptr<ConditionalHazardProvider> poisson_provider(const HazardMeasure& mean_measure) {
  return std::make_unique<MeasureProvider>(mean_measure, "poisson");
}

std::unique_ptr<ConditionalHazardProvider> cox_provider(const RealizedDriver& driver) {
  return std::make_unique<MeasureProvider>(driver.measure, "cox/" + driver.family);
}

std::unique_ptr<ConditionalHazardProvider> single_line_provider(const HazardMeasure& cumulative_hazard) {
  return std::make_unique<MeasureProvider>(cumulative_hazard, "single_line", 1);
}

std::unique_ptr<ConditionalHazardProvider> provider_for(const PatternModel& model, const PatternSample& sample) {
  return std::visit(
      [&](const auto& m) -> std::unique_ptr<ConditionalHazardProvider> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PoissonModel>) {
          return poisson_provider(m.hazard);
        } else if constexpr (std::is_same_v<T, CoxModel>) {
          if (!sample.driver) throw UnsupportedModel("cox provider needs the realized driver of the sample");
          return cox_provider(*sample.driver);
        } else {
          return single_line_provider(m.hazard);
        }
      },
      model);
}

StageGeometry::StageGeometry(const PointPattern& pattern) : window(pattern.window()) {
  SingleLineDecomposition d = decompose(pattern);
  xi = std::move(d.xi);
  xi_plus = std::move(d.xi_plus);
}

CompensatorEvaluation star_compensator(const StageGeometry& stages, const ConditionalHazardProvider& provider,
                                       const Point& t) {
  if (!(provider.window() == stages.window)) throw DomainError("star_compensator: provider and pattern windows differ");
  if (!stages.window.contains_closed(t)) throw DomainError("star_compensator: t outside the window");
  const std::size_t terms = stages.xi.size() - 1;
  CompensatorEvaluation eval{t, 0.0, std::vector<double>(terms, 0.0)};
  for (std::size_t k = 1; k <= terms; ++k) {
    // Once t lies in xi_{k-1} it lies in every later stage.
    if (stages.xi[k - 1].contains(t)) break;
    const double c = provider.conditional_mass(k, stages.xi[k - 1], stages.xi_plus[k - 1], t, stages.xi[k]);
    eval.per_line[k - 1] = c;
    eval.value += c;
  }
  return eval;
}

CompensatorEvaluation star_compensator(const PointPattern& pattern, const ConditionalHazardProvider& provider,
                                       const Point& t) {
  return star_compensator(StageGeometry(pattern), provider, t);
}

double star_compensator_increment(const StageGeometry& stages, const ConditionalHazardProvider& provider,
                                  const Point& s, const Point& t) {
  if (!leq(s, t)) throw DomainError("star_compensator_increment: s <= t violated");
  return star_compensator(stages, provider, t).value - star_compensator(stages, provider, {s.x, t.y}).value -
         star_compensator(stages, provider, {t.x, s.y}).value + star_compensator(stages, provider, s).value;
}

std::vector<CompensatorEvaluation> star_compensator_path(const PointPattern& pattern,
                                                         const ConditionalHazardProvider& provider,
                                                         std::span<const Point> grid) {
  const StageGeometry stages(pattern);
  std::vector<CompensatorEvaluation> path;
  path.reserve(grid.size());
  for (const Point& g : grid) path.push_back(star_compensator(stages, provider, g));
  return path;
}

std::vector<Point> regular_grid(const Window& window, std::size_t nx, std::size_t ny) {
  std::vector<Point> grid;
  grid.reserve(nx * ny);
  for (std::size_t i = 1; i <= nx; ++i) {
    for (std::size_t j = 1; j <= ny; ++j) {
      grid.push_back({window.x_max * static_cast<double>(i) / static_cast<double>(nx),
                      window.y_max * static_cast<double>(j) / static_cast<double>(ny)});
    }
  }
  return grid;
}

double compensator_1d_single_jump(const std::function<double(double)>& cdf, double tau, double t) {
  if (!(tau > 0.0)) throw DomainError("compensator_1d_single_jump: tau must be positive");
  if (t <= 0.0) return 0.0;
  const double f = cdf(std::min(t, tau));
  if (!(f < 1.0)) throw SingularHazard("compensator_1d_single_jump: F reaches one at min(t, tau)");
  return -std::log1p(-f);
}

double compensator_1d_regenerative(std::span<const CumulativeHazard1D> hazards, std::span<const double> jumps,
                                   double t) {
  double previous = 0.0;
  for (double tau : jumps) {
    if (!(tau > previous)) throw DomainError("compensator_1d_regenerative: jumps must be positive and strictly increasing");
    previous = tau;
  }
  double total = 0.0;
  double before = 0.0;  // tau_{n-1}
  for (std::size_t n = 1; before < t; ++n) {
    if (n > hazards.size()) throw DomainError("compensator_1d_regenerative: missing conditional hazard");
    const double tau_n = n <= jumps.size() ? jumps[n - 1] : std::numeric_limits<double>::infinity();
    total += hazards[n - 1](std::min(t, tau_n));
    before = tau_n;
  }
  return total;
}

std::vector<CumulativeHazard1D> poisson_conditional_hazards(double rate, std::span<const double> jumps) {
  std::vector<CumulativeHazard1D> out;
  double before = 0.0;
  for (std::size_t n = 0; n <= jumps.size(); ++n) {
    out.emplace_back([rate, before](double u) { return rate * std::max(0.0, u - before); });
    if (n < jumps.size()) before = jumps[n];
  }
  return out;
}

std::vector<CumulativeHazard1D> renewal_conditional_hazards(const Law1D& interarrival,
                                                            std::span<const double> jumps) {
  std::vector<CumulativeHazard1D> out;
  double before = 0.0;
  for (std::size_t n = 0; n <= jumps.size(); ++n) {
    out.emplace_back([interarrival, before](double u) {
      return u > before ? interarrival.cumulative_hazard(u - before) : 0.0;
    });
    if (n < jumps.size()) before = jumps[n];
  }
  return out;
}

double compensator_2d_single_jump(const SingleJump2D& model, const Point& tau, const Point& t,
                                  CompensatorMode mode) {
  using boost::math::quadrature::gauss_kronrod;
  const double hx = std::min(t.x, tau.x);
  const double hy = std::min(t.y, tau.y);
  if (!(hx > 0.0) || !(hy > 0.0)) return 0.0;

  const Distribution2D& dist = model.dist;
  auto denominator = [&](const Point& u) {
    return mode == CompensatorMode::weak ? 1.0 - dist.cdf(u) : dist.survival(u);
  };
  // Both denominators are nonincreasing, so the upper corner is the worst case.
  if (!(denominator({hx, hy}) > 1e-12)) {
    throw SingularIntegral("compensator_2d_single_jump: denominator vanishes inside the integration region");
  }
  auto integrand = [&](const Point& u) { return dist.density(u) / denominator(u); };
  auto inner = [&](double x) {
    return gauss_kronrod<double, 15>::integrate([&](double y) { return integrand({x, y}); }, 0.0, hy, 15, 1e-10);
  };
  return gauss_kronrod<double, 15>::integrate(inner, 0.0, hx, 15, 1e-9);
}

}  // namespace pcomp
