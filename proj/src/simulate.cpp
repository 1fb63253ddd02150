#include "pcomp/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pcomp/errors.hpp"

namespace pcomp {

namespace {

constexpr std::size_t kMaxResamples = 1000;
constexpr std::size_t kMaxRejections = 100000000;

// Draws one point from Lambda / Lambda(window).
class PointDrawer {
 public:
  explicit PointDrawer(const HazardMeasure& h) : h_(h) {
    if (const auto* grid = std::get_if<GridForm>(&h.representation())) {
      const Window& w = h.window();
      double running = 0.0;
      for (std::size_t j = 0; j < grid->ny(); ++j) {
        for (std::size_t i = 0; i < grid->nx(); ++i) {
          const double x0 = grid->x_mesh[i], x1 = std::min(grid->x_mesh[i + 1], w.x_max);
          const double y0 = grid->y_mesh[j], y1 = std::min(grid->y_mesh[j + 1], w.y_max);
          const double m = (x1 > x0 && y1 > y0) ? grid->cell(i, j) * (x1 - x0) * (y1 - y0) : 0.0;
          running += m;
          cumulative_.push_back(running);
          cells_.push_back({Point{x0, y0}, Point{x1, y1}});
        }
      }
    } else if (const auto* anti = std::get_if<AntiderivativeForm>(&h.representation())) {
      if (!anti->density_bound) {
        throw ConfigurationError("sampling an antiderivative-form measure requires a density bound");
      }
      bound_ = *anti->density_bound * h.scale();
    }
  }

  Point operator()(Rng& rng) const {
    const Window& w = h_.window();
    return std::visit(
        [&](const auto& form) -> Point {
          using T = std::decay_t<decltype(form)>;
          if constexpr (std::is_same_v<T, ProductForm>) {
            const double x = form.x.inverse(uniform_open(rng) * form.x(w.x_max));
            const double y = form.y.inverse(uniform_open(rng) * form.y(w.y_max));
            return {x, y};
          } else if constexpr (std::is_same_v<T, GridForm>) {
            const double target = uniform_open(rng) * cumulative_.back();
            auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
            if (it == cumulative_.end()) --it;
            const auto& [lo, hi] = cells_[static_cast<std::size_t>(it - cumulative_.begin())];
            return {lo.x + uniform_open(rng) * (hi.x - lo.x), lo.y + uniform_open(rng) * (hi.y - lo.y)};
          } else {
            for (std::size_t attempt = 0; attempt < kMaxRejections; ++attempt) {
              const Point p{uniform_open(rng) * w.x_max, uniform_open(rng) * w.y_max};
              const double f = h_.density(p);
              if (f > bound_) throw ConfigurationError("density bound exceeded during rejection sampling");
              if (uniform_open(rng) * bound_ <= f) return p;
            }
            throw ConfigurationError("rejection sampler failed to accept a point");
          }
        },
        h_.representation());
  }

 private:
  const HazardMeasure& h_;
  std::vector<double> cumulative_;
  std::vector<std::pair<Point, Point>> cells_;
  double bound_ = 0.0;
};

}  // namespace

Window driver_window(const CoxDriver& driver) {
  return std::visit(
      [](const auto& d) -> Window {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ScaleMixtureDriver>) {
          return d.base.window();
        } else {
          return d.window;
        }
      },
      driver);
}

RealizedDriver realize_driver(const CoxDriver& driver, Rng& rng) {
  if (const auto* d = std::get_if<ScaleMixtureDriver>(&driver)) return realized_from_values(driver, {d->w.sample(rng)});
  const auto& d = std::get<TwoRegionDriver>(driver);
  std::vector<double> values(4);
  for (double& v : values) v = d.intensity.sample(rng);
  return realized_from_values(driver, std::move(values));
}

RealizedDriver realized_from_values(const CoxDriver& driver, std::vector<double> values) {
  return std::visit(
      [&](const auto& d) -> RealizedDriver {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ScaleMixtureDriver>) {
          if (values.size() != 1) throw ConfigurationError("scale-mixture driver takes one value");
          if (!(values[0] > 0.0)) throw InvalidMeasure("scale-mixture driver weight must be positive");
          return {"scale_mixture", values, d.base.scaled(values[0])};
        } else {
          if (values.size() != 4) throw ConfigurationError("two-region driver takes four values");
          if (!d.window.contains_open(d.split)) throw ConfigurationError("two-region split must be inside the window");
          HazardMeasure m = HazardMeasure::grid(d.window, {0.0, d.split.x, d.window.x_max},
                                                {0.0, d.split.y, d.window.y_max}, values);
          return {"two_region", std::move(values), std::move(m)};
        }
      },
      driver);
}

Window model_window(const PatternModel& model) {
  return std::visit(
      [](const auto& m) -> Window {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CoxModel>) {
          return driver_window(m.driver);
        } else {
          return m.hazard.window();
        }
      },
      model);
}

std::string model_kind(const PatternModel& model) {
  switch (model.index()) {
    case 0: return "poisson";
    case 1: return "cox";
    default: return "single_line";
  }
}

PatternSample sample_poisson(const HazardMeasure& h, Rng& rng) {
  const double mean = h.total();
  if (!(mean > 0.0)) return {PointPattern(h.window()), std::nullopt, 0};
  const PointDrawer draw(h);
  std::poisson_distribution<long long> counts(mean);
  const auto n = static_cast<std::size_t>(counts(rng));
  for (std::size_t attempt = 0; attempt <= kMaxResamples; ++attempt) {
    std::vector<Point> points(n);
    for (Point& p : points) p = draw(rng);
    try {
      return {PointPattern(h.window(), std::move(points)), std::nullopt, attempt};
    } catch (const StrictSimplicityError&) {
      // collision or boundary hit after rounding; redraw the whole pattern
    }
  }
  throw InvariantViolation("sample_poisson: too many coordinate collisions");
}

PatternSample sample_poisson(const HazardMeasure& h, std::uint64_t seed) {
  Rng rng(seed);
  return sample_poisson(h, rng);
}

PatternSample sample_cox(const CoxDriver& driver, Rng& rng) {
  RealizedDriver realized = realize_driver(driver, rng);
  PatternSample sample = sample_poisson(realized.measure, rng);
  sample.driver = std::move(realized);
  return sample;
}

PatternSample sample_cox(const CoxDriver& driver, std::uint64_t seed) {
  Rng rng(seed);
  return sample_cox(driver, rng);
}

PatternSample sample_single_line(const HazardMeasure& h, Rng& rng) {
  PatternSample sample = sample_poisson(h, rng);
  const Antichain first = min_antichain(sample.pattern.points());
  sample.pattern = PointPattern(h.window(), {first.points().begin(), first.points().end()});
  return sample;
}

PatternSample sample_single_line(const HazardMeasure& h, std::uint64_t seed) {
  Rng rng(seed);
  return sample_single_line(h, rng);
}

double sample_single_jump(const SingleJump1D& model, Rng& rng) { return model.law.sample(rng); }

Point sample_single_jump(const SingleJump2D& model, Rng& rng) { return model.dist.sample(rng); }

PatternSample sample_pattern(const PatternModel& model, Rng& rng) {
  return std::visit(
      [&](const auto& m) -> PatternSample {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PoissonModel>) {
          return sample_poisson(m.hazard, rng);
        } else if constexpr (std::is_same_v<T, CoxModel>) {
          return sample_cox(m.driver, rng);
        } else {
          return sample_single_line(m.hazard, rng);
        }
      },
      model);
}

}  // namespace pcomp
