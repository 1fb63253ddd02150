#pragma once

// Continuous laws used for single jump processes and Cox mixing variables.

#include <string>

#include "pcomp/geometry.hpp"
#include "pcomp/random.hpp"

namespace pcomp {

class Law1D {
 public:
  enum class Kind { constant, exponential, uniform, weibull, gamma, lognormal };

  static Law1D constant(double value);
  static Law1D exponential(double rate);
  static Law1D uniform(double low, double high);
  static Law1D weibull(double shape, double scale);
  static Law1D gamma(double shape, double scale);
  static Law1D lognormal(double mu, double sigma);

  Kind kind() const { return kind_; }
  std::string name() const;
  double param(int i) const { return i == 0 ? a_ : b_; }

  double cdf(double u) const;
  double survival(double u) const { return 1.0 - cdf(u); }
  double density(double u) const;
  // -ln(1 - F(u)); +inf where F reaches one.
  double cumulative_hazard(double u) const;
  double quantile(double p) const;
  double mean() const;
  double variance() const;
  double sample(Rng& rng) const;

  // Screen for concentrated mass: the largest probability carried by one of
  // 1000 equal bins over [0, q(0.999)] must not exceed 0.1. Constant laws
  // always fail.
  bool screen_continuous() const;

 private:
  Law1D(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

  Kind kind_;
  double a_;
  double b_;
};

// Law of a single jump point tau in the positive quadrant.
class Distribution2D {
 public:
  enum class Kind { product, fgm };

  static Distribution2D product(Law1D x, Law1D y);
  // Farlie-Gumbel-Morgenstern copula with parameter theta in [-1, 1].
  static Distribution2D fgm(double theta, Law1D x, Law1D y);

  Kind kind() const { return kind_; }
  const Law1D& x() const { return x_; }
  const Law1D& y() const { return y_; }
  double theta() const { return theta_; }

  // F(u) = P(tau <= u)
  double cdf(const Point& u) const;
  // S(u) = P(tau >= u)
  double survival(const Point& u) const;
  double density(const Point& u) const;
  Point sample(Rng& rng) const;

 private:
  Distribution2D(Kind kind, double theta, Law1D x, Law1D y)
      : kind_(kind), theta_(theta), x_(std::move(x)), y_(std::move(y)) {}

  Kind kind_;
  double theta_;
  Law1D x_;
  Law1D y_;
};

// One-dimensional single jump process with a continuous jump time law.
struct SingleJump1D {
  explicit SingleJump1D(Law1D law);
  Law1D law;
};

// Planar single jump process with a continuous jump point law.
struct SingleJump2D {
  explicit SingleJump2D(Distribution2D dist);
  Distribution2D dist;
};

}  // namespace pcomp
