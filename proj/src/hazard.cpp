#include "pcomp/hazard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pcomp/errors.hpp"

namespace pcomp {

Cumulative1D::Cumulative1D(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  if (knots_.size() < 2 || knots_.size() != values_.size()) {
    throw InvalidMeasure("cumulative: need at least two knots and one value per knot");
  }
  if (knots_.front() != 0.0 || values_.front() != 0.0) {
    throw InvalidMeasure("cumulative: must start at (0, 0)");
  }
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i] > knots_[i - 1]) || !std::isfinite(knots_[i])) {
      throw InvalidMeasure("cumulative: knots must be finite and strictly increasing");
    }
    if (!(values_[i] >= values_[i - 1]) || !std::isfinite(values_[i])) {
      throw InvalidMeasure("cumulative: values must be finite and nondecreasing");
    }
  }
}

Cumulative1D Cumulative1D::linear(double rate, double length) {
  if (!(rate >= 0.0)) throw InvalidMeasure("cumulative: negative rate");
  return Cumulative1D({0.0, length}, {0.0, rate * length});
}

double Cumulative1D::operator()(double u) const {
  if (u <= 0.0) return 0.0;
  if (u >= knots_.back()) return values_.back();
  const auto hi = static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), u) - knots_.begin());
  const std::size_t lo = hi - 1;
  const double w = (u - knots_[lo]) / (knots_[hi] - knots_[lo]);
  return values_[lo] + w * (values_[hi] - values_[lo]);
}

double Cumulative1D::inverse(double v) const {
  if (v <= 0.0) return 0.0;
  if (v >= values_.back()) {
    const auto it = std::lower_bound(values_.begin(), values_.end(), values_.back());
    return knots_[static_cast<std::size_t>(it - values_.begin())];
  }
  const auto hi = static_cast<std::size_t>(std::lower_bound(values_.begin(), values_.end(), v) - values_.begin());
  const std::size_t lo = hi - 1;
  const double w = (v - values_[lo]) / (values_[hi] - values_[lo]);
  return knots_[lo] + w * (knots_[hi] - knots_[lo]);
}

double Cumulative1D::density(double u) const {
  if (u < 0.0 || u >= knots_.back()) return 0.0;
  const auto hi = static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), u) - knots_.begin());
  const std::size_t lo = hi - 1;
  return (values_[hi] - values_[lo]) / (knots_[hi] - knots_[lo]);
}

HazardMeasure::HazardMeasure(Window window, Representation repr, double scale)
    : window_(window), repr_(std::make_shared<const Representation>(std::move(repr))), scale_(scale) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw InvalidMeasure("measure scale must be finite and nonnegative");
}

HazardMeasure HazardMeasure::product(Window window, Cumulative1D x, Cumulative1D y, double scale) {
  if (x.length() < window.x_max || y.length() < window.y_max) {
    throw InvalidMeasure("product measure: cumulatives must cover the window");
  }
  return HazardMeasure(window, ProductForm{std::move(x), std::move(y)}, scale);
}

HazardMeasure HazardMeasure::lebesgue(Window window, double rate) {
  return product(window, Cumulative1D::linear(1.0, window.x_max), Cumulative1D::linear(1.0, window.y_max),
                 rate);
}

HazardMeasure HazardMeasure::zero(Window window) { return lebesgue(window, 0.0); }

HazardMeasure HazardMeasure::grid(Window window, std::vector<double> x_mesh, std::vector<double> y_mesh,
                                  std::vector<double> density) {
  auto check_mesh = [](const std::vector<double>& mesh, double extent, const char* axis) {
    if (mesh.size() < 2 || mesh.front() != 0.0 || mesh.back() < extent) {
      std::ostringstream msg;
      msg << "grid measure: " << axis << " mesh must start at 0 and cover the window";
      throw InvalidMeasure(msg.str());
    }
    for (std::size_t i = 1; i < mesh.size(); ++i) {
      if (!(mesh[i] > mesh[i - 1])) throw InvalidMeasure("grid measure: mesh must be strictly increasing");
    }
  };
  check_mesh(x_mesh, window.x_max, "x");
  check_mesh(y_mesh, window.y_max, "y");
  if (density.size() != (x_mesh.size() - 1) * (y_mesh.size() - 1)) {
    throw InvalidMeasure("grid measure: density must have one value per cell");
  }
  for (double d : density) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw InvalidMeasure("grid measure: densities must be finite and nonnegative");
  }
  return HazardMeasure(window, GridForm{std::move(x_mesh), std::move(y_mesh), std::move(density)}, 1.0);
}

HazardMeasure HazardMeasure::antiderivative(Window window, ScalarField H, AntiderivativeOptions options) {
  if (!H) throw InvalidMeasure("antiderivative measure: missing function");
  const double top = std::abs(H(window.upper_corner()));
  const double tol = 1e-12 * (1.0 + top);
  for (int i = 0; i <= 8; ++i) {
    const double f = i / 8.0;
    if (std::abs(H({f * window.x_max, 0.0})) > tol || std::abs(H({0.0, f * window.y_max})) > tol) {
      throw InvalidMeasure("antiderivative measure: H must vanish on the axes");
    }
  }
  const IncreasingCheck inc = check_increasing(H, window, options.check_resolution);
  if (!inc.ok) {
    std::ostringstream msg;
    msg << "antiderivative measure: negative increment " << inc.increment << " on cell ("
        << inc.violation_lower.x << ", " << inc.violation_lower.y << ") - (" << inc.violation_upper.x << ", "
        << inc.violation_upper.y << ")";
    throw InvalidMeasure(msg.str());
  }
  const ContinuityCheck cont = check_line_continuity(H, window);
  if (!cont.ok) {
    std::ostringstream msg;
    msg << "antiderivative measure: mass concentrates near (" << cont.probe.x << ", " << cont.probe.y
        << "); normalized strip mass ratio " << cont.ratio;
    throw InvalidMeasure(msg.str());
  }
  if (options.density_bound && !(*options.density_bound > 0.0)) {
    throw InvalidMeasure("antiderivative measure: density bound must be positive");
  }
  return HazardMeasure(window,
                       AntiderivativeForm{std::move(H), std::move(options.density), options.density_bound,
                                          std::move(options.label)},
                       1.0);
}

MeasureForm HazardMeasure::form() const {
  return static_cast<MeasureForm>(repr_->index());
}

HazardMeasure HazardMeasure::scaled(double factor) const {
  HazardMeasure copy = *this;
  if (!(factor >= 0.0) || !std::isfinite(factor)) throw InvalidMeasure("scale factor must be finite and nonnegative");
  copy.scale_ = scale_ * factor;
  return copy;
}

namespace {

double overlap(double lo, double hi, double a, double b) {
  return std::max(0.0, std::min(hi, b) - std::max(lo, a));
}

struct RectMassVisitor {
  const Point& s;
  const Point& t;

  double operator()(const ProductForm& f) const { return (f.x(t.x) - f.x(s.x)) * (f.y(t.y) - f.y(s.y)); }

  double operator()(const GridForm& f) const {
    double total = 0.0;
    for (std::size_t j = 0; j < f.ny(); ++j) {
      const double wy = overlap(f.y_mesh[j], f.y_mesh[j + 1], s.y, t.y);
      if (wy == 0.0) continue;
      for (std::size_t i = 0; i < f.nx(); ++i) {
        const double wx = overlap(f.x_mesh[i], f.x_mesh[i + 1], s.x, t.x);
        if (wx == 0.0) continue;
        total += f.cell(i, j) * wx * wy;
      }
    }
    return total;
  }

  double operator()(const AntiderivativeForm& f) const {
    const double a = f.H(t);
    const double b = f.H({s.x, t.y});
    const double c = f.H({t.x, s.y});
    const double d = f.H(s);
    const double m = a - b - c + d;
    if (m < 0.0) {
      const double tol = 1e-12 * (1.0 + std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}));
      if (m < -tol) throw InvalidMeasure("antiderivative measure: negative rectangle mass");
      return 0.0;
    }
    return m;
  }
};

}  // namespace

double HazardMeasure::rect_mass(const Point& s, const Point& t) const {
  if (!leq(s, t)) throw DomainError("rect_mass: s <= t violated");
  if (!window_.contains_closed(s) || !window_.contains_closed(t)) {
    throw DomainError("rect_mass: rectangle outside the window");
  }
  if (scale_ == 0.0) return 0.0;
  return scale_ * std::visit(RectMassVisitor{s, t}, *repr_);
}

double HazardMeasure::density(const Point& p) const {
  struct Visitor {
    const HazardMeasure& self;
    const Point& p;
    double operator()(const ProductForm& f) const { return f.x.density(p.x) * f.y.density(p.y); }
    double operator()(const GridForm& f) const {
      const auto i = std::upper_bound(f.x_mesh.begin(), f.x_mesh.end(), p.x) - f.x_mesh.begin() - 1;
      const auto j = std::upper_bound(f.y_mesh.begin(), f.y_mesh.end(), p.y) - f.y_mesh.begin() - 1;
      if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= f.nx() || static_cast<std::size_t>(j) >= f.ny()) {
        return 0.0;
      }
      return f.cell(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
    double operator()(const AntiderivativeForm& f) const {
      if (f.density) return f.density(p);
      // Mixed central difference, shrunk at the window edges.
      const Window& w = self.window();
      const double hx = 1e-5 * w.x_max;
      const double hy = 1e-5 * w.y_max;
      const Point lo{std::max(0.0, p.x - hx), std::max(0.0, p.y - hy)};
      const Point hi{std::min(w.x_max, p.x + hx), std::min(w.y_max, p.y + hy)};
      const double area = (hi.x - lo.x) * (hi.y - lo.y);
      return (f.H(hi) - f.H({lo.x, hi.y}) - f.H({hi.x, lo.y}) + f.H(lo)) / area;
    }
  };
  return scale_ * std::visit(Visitor{*this, p}, *repr_);
}

double rect_mass(const HazardMeasure& h, const Point& s, const Point& t) { return h.rect_mass(s, t); }

double region_mass(const HazardMeasure& h, const Point& t, const Staircase& L) {
  if (!(h.window() == L.window())) throw DomainError("region_mass: measure and staircase windows differ");
  if (!h.window().contains_closed(t)) throw DomainError("region_mass: t outside the window");

  // Corners strictly below-left of t form a contiguous run of the canonical
  // order; only they cut A_t.
  std::vector<Point> cuts;
  for (const Point& a : L.corners().points()) {
    if (strictly_below(a, t)) cuts.push_back(a);
  }
  if (cuts.empty()) return h.mass(t);

  // A_t intersected with L as disjoint columns: (0, a_1.x] at full height,
  // then (a_i.x, a_{i+1}.x] up to a_i.y, the last one ending at t.x.
  double total = h.rect_mass({0.0, 0.0}, {cuts.front().x, t.y});
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double right = i + 1 < cuts.size() ? cuts[i + 1].x : t.x;
    total += h.rect_mass({cuts[i].x, 0.0}, {right, cuts[i].y});
  }
  return total;
}

double avoidance_from_hazard(const HazardMeasure& h, const Point& t) { return std::exp(-h.mass(t)); }

double avoidance_from_hazard(const HazardMeasure& h, const Staircase& L) {
  return std::exp(-region_mass(h, h.window().upper_corner(), L));
}

IncreasingCheck check_increasing(const ScalarField& H, const Window& window, std::size_t resolution) {
  if (resolution == 0) throw DomainError("check_increasing: resolution must be positive");
  const std::size_t n = resolution + 1;
  std::vector<double> values(n * n);
  double largest = 0.0;
  auto at = [&](std::size_t i, std::size_t j) -> double& { return values[j * n + i]; };
  auto coord = [&](std::size_t i, double extent) { return extent * static_cast<double>(i) / resolution; };
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      at(i, j) = H({coord(i, window.x_max), coord(j, window.y_max)});
      largest = std::max(largest, std::abs(at(i, j)));
    }
  }
  const double tol = 1e-12 * (1.0 + largest);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double inc = at(i + 1, j + 1) - at(i, j + 1) - at(i + 1, j) + at(i, j);
      if (inc < -tol || std::isnan(inc)) {
        return {false,
                {coord(i, window.x_max), coord(j, window.y_max)},
                {coord(i + 1, window.x_max), coord(j + 1, window.y_max)},
                inc};
      }
    }
  }
  return {};
}

IncreasingCheck check_increasing(const HazardMeasure& h, std::size_t resolution) {
  return check_increasing([&h](const Point& t) { return h.mass(t); }, h.window(), resolution);
}

ContinuityCheck check_line_continuity(const ScalarField& H, const Window& window) {
  constexpr double kLarge = 1e-2;
  constexpr double kSmall = 1e-3;
  constexpr double kMaxRatio = 1.0 / 3.0;
  const double total = std::abs(H(window.upper_corner()));
  const double floor = 1e-10 * (1.0 + total);

  auto square_mass = [&](const Point& c, double eps) {
    const double hx = 0.5 * eps * window.x_max;
    const double hy = 0.5 * eps * window.y_max;
    const Point lo{c.x - hx, c.y - hy};
    const Point hi{c.x + hx, c.y + hy};
    return H(hi) - H({lo.x, hi.y}) - H({hi.x, lo.y}) + H(lo);
  };

  ContinuityCheck worst;
  for (int j = 1; j <= 9; ++j) {
    for (int i = 1; i <= 9; ++i) {
      const Point probe{window.x_max * i / 10.0, window.y_max * j / 10.0};
      const double large = square_mass(probe, kLarge);
      if (large <= floor) continue;
      const double ratio = (square_mass(probe, kSmall) / kSmall) / (large / kLarge);
      if (ratio > worst.ratio) {
        worst.ratio = ratio;
        worst.probe = probe;
      }
    }
  }
  worst.ok = worst.ratio <= kMaxRatio;
  return worst;
}

HazardMeasure hazard_from_avoidance(const ScalarField& p, const Window& window, std::size_t resolution) {
  if (!p) throw DomainError("hazard_from_avoidance: missing function");
  const std::size_t n = std::max<std::size_t>(resolution, 1);
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t i = 0; i <= n; ++i) {
      const Point g{window.x_max * static_cast<double>(i) / n, window.y_max * static_cast<double>(j) / n};
      const double v = p(g);
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError("hazard_from_avoidance: avoidance function must be strictly positive");
      }
      if ((i == 0 || j == 0) && std::abs(v - 1.0) > 1e-12) {
        throw DomainError("hazard_from_avoidance: avoidance function must equal one on the axes");
      }
    }
  }
  ScalarField H = [p](const Point& t) { return -std::log(p(t)); };
  try {
    AntiderivativeOptions options;
    options.label = "-ln P0";
    options.check_resolution = n;
    return HazardMeasure::antiderivative(window, std::move(H), std::move(options));
  } catch (const InvalidMeasure& e) {
    throw InvalidAvoidance(std::string("not an avoidance function of a single line process: ") + e.what());
  }
}

}  // namespace pcomp
