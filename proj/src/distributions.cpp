#include "pcomp/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/lognormal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "pcomp/errors.hpp"

namespace pcomp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* what) {
  if (!ok) throw ConfigurationError(what);
}

}  // namespace

Law1D Law1D::constant(double value) {
  require(value > 0.0 && std::isfinite(value), "constant law: value must be positive and finite");
  return {Kind::constant, value, 0.0};
}

Law1D Law1D::exponential(double rate) {
  require(rate > 0.0 && std::isfinite(rate), "exponential law: rate must be positive and finite");
  return {Kind::exponential, rate, 0.0};
}

Law1D Law1D::uniform(double low, double high) {
  require(low >= 0.0 && high > low && std::isfinite(high), "uniform law: need 0 <= low < high");
  return {Kind::uniform, low, high};
}

Law1D Law1D::weibull(double shape, double scale) {
  require(shape > 0.0 && scale > 0.0, "weibull law: shape and scale must be positive");
  return {Kind::weibull, shape, scale};
}

Law1D Law1D::gamma(double shape, double scale) {
  require(shape > 0.0 && scale > 0.0, "gamma law: shape and scale must be positive");
  return {Kind::gamma, shape, scale};
}

Law1D Law1D::lognormal(double mu, double sigma) {
  require(std::isfinite(mu) && sigma > 0.0, "lognormal law: sigma must be positive");
  return {Kind::lognormal, mu, sigma};
}

std::string Law1D::name() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::constant: out << "constant(" << a_ << ")"; break;
    case Kind::exponential: out << "exponential(" << a_ << ")"; break;
    case Kind::uniform: out << "uniform(" << a_ << "," << b_ << ")"; break;
    case Kind::weibull: out << "weibull(" << a_ << "," << b_ << ")"; break;
    case Kind::gamma: out << "gamma(" << a_ << "," << b_ << ")"; break;
    case Kind::lognormal: out << "lognormal(" << a_ << "," << b_ << ")"; break;
  }
  return out.str();
}

double Law1D::cdf(double u) const {
  switch (kind_) {
    case Kind::constant: return u >= a_ ? 1.0 : 0.0;
    case Kind::exponential: return u <= 0.0 ? 0.0 : -std::expm1(-a_ * u);
    case Kind::uniform: return std::clamp((u - a_) / (b_ - a_), 0.0, 1.0);
    case Kind::weibull: return u <= 0.0 ? 0.0 : -std::expm1(-std::pow(u / b_, a_));
    case Kind::gamma: return u <= 0.0 ? 0.0 : boost::math::cdf(boost::math::gamma_distribution<>(a_, b_), u);
    case Kind::lognormal:
      return u <= 0.0 ? 0.0 : boost::math::cdf(boost::math::lognormal_distribution<>(a_, b_), u);
  }
  return 0.0;
}

double Law1D::density(double u) const {
  switch (kind_) {
    case Kind::constant: return u == a_ ? kInf : 0.0;
    case Kind::exponential: return u < 0.0 ? 0.0 : a_ * std::exp(-a_ * u);
    case Kind::uniform: return (u >= a_ && u < b_) ? 1.0 / (b_ - a_) : 0.0;
    case Kind::weibull:
      return u <= 0.0 ? 0.0 : (a_ / b_) * std::pow(u / b_, a_ - 1.0) * std::exp(-std::pow(u / b_, a_));
    case Kind::gamma: return u <= 0.0 ? 0.0 : boost::math::pdf(boost::math::gamma_distribution<>(a_, b_), u);
    case Kind::lognormal:
      return u <= 0.0 ? 0.0 : boost::math::pdf(boost::math::lognormal_distribution<>(a_, b_), u);
  }
  return 0.0;
}

double Law1D::cumulative_hazard(double u) const {
  switch (kind_) {
    case Kind::exponential: return u <= 0.0 ? 0.0 : a_ * u;
    case Kind::weibull: return u <= 0.0 ? 0.0 : std::pow(u / b_, a_);
    case Kind::uniform:
      if (u <= a_) return 0.0;
      if (u >= b_) return kInf;
      return -std::log((b_ - u) / (b_ - a_));
    case Kind::gamma:
      if (u <= 0.0) return 0.0;
      return -std::log(boost::math::cdf(boost::math::complement(boost::math::gamma_distribution<>(a_, b_), u)));
    case Kind::lognormal:
      if (u <= 0.0) return 0.0;
      return -std::log(
          boost::math::cdf(boost::math::complement(boost::math::lognormal_distribution<>(a_, b_), u)));
    case Kind::constant: return u >= a_ ? kInf : 0.0;
  }
  return 0.0;
}

double Law1D::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile: probability outside [0, 1]");
  switch (kind_) {
    case Kind::constant: return a_;
    case Kind::exponential: return -std::log1p(-p) / a_;
    case Kind::uniform: return a_ + p * (b_ - a_);
    case Kind::weibull: return b_ * std::pow(-std::log1p(-p), 1.0 / a_);
    case Kind::gamma:
      if (p == 1.0) return kInf;
      return boost::math::quantile(boost::math::gamma_distribution<>(a_, b_), p);
    case Kind::lognormal:
      if (p == 1.0) return kInf;
      if (p == 0.0) return 0.0;
      return boost::math::quantile(boost::math::lognormal_distribution<>(a_, b_), p);
  }
  return 0.0;
}

double Law1D::mean() const {
  switch (kind_) {
    case Kind::constant: return a_;
    case Kind::exponential: return 1.0 / a_;
    case Kind::uniform: return 0.5 * (a_ + b_);
    case Kind::weibull: return b_ * std::tgamma(1.0 + 1.0 / a_);
    case Kind::gamma: return a_ * b_;
    case Kind::lognormal: return std::exp(a_ + 0.5 * b_ * b_);
  }
  return 0.0;
}

double Law1D::variance() const {
  switch (kind_) {
    case Kind::constant: return 0.0;
    case Kind::exponential: return 1.0 / (a_ * a_);
    case Kind::uniform: return (b_ - a_) * (b_ - a_) / 12.0;
    case Kind::weibull: {
      const double g1 = std::tgamma(1.0 + 1.0 / a_);
      return b_ * b_ * (std::tgamma(1.0 + 2.0 / a_) - g1 * g1);
    }
    case Kind::gamma: return a_ * b_ * b_;
    case Kind::lognormal: return std::expm1(b_ * b_) * std::exp(2.0 * a_ + b_ * b_);
  }
  return 0.0;
}

double Law1D::sample(Rng& rng) const {
  if (kind_ == Kind::constant) return a_;
  return quantile(uniform_open(rng));
}

bool Law1D::screen_continuous() const {
  if (kind_ == Kind::constant) return false;
  constexpr int kBins = 1000;
  const double top = quantile(0.999);
  double previous = 0.0;
  for (int i = 1; i <= kBins; ++i) {
    const double current = cdf(top * i / kBins);
    if (current - previous > 0.1) return false;
    previous = current;
  }
  return true;
}

Distribution2D Distribution2D::product(Law1D x, Law1D y) {
  return Distribution2D(Kind::product, 0.0, std::move(x), std::move(y));
}

Distribution2D Distribution2D::fgm(double theta, Law1D x, Law1D y) {
  require(theta >= -1.0 && theta <= 1.0, "fgm law: theta must lie in [-1, 1]");
  return Distribution2D(Kind::fgm, theta, std::move(x), std::move(y));
}

double Distribution2D::cdf(const Point& u) const {
  const double a = x_.cdf(u.x);
  const double b = y_.cdf(u.y);
  if (kind_ == Kind::product) return a * b;
  return a * b * (1.0 + theta_ * (1.0 - a) * (1.0 - b));
}

double Distribution2D::survival(const Point& u) const {
  const double a = x_.cdf(u.x);
  const double b = y_.cdf(u.y);
  const double s = (1.0 - a) * (1.0 - b);
  if (kind_ == Kind::product) return s;
  return s * (1.0 + theta_ * a * b);
}

double Distribution2D::density(const Point& u) const {
  const double f = x_.density(u.x) * y_.density(u.y);
  if (kind_ == Kind::product) return f;
  const double a = x_.cdf(u.x);
  const double b = y_.cdf(u.y);
  return f * (1.0 + theta_ * (1.0 - 2.0 * a) * (1.0 - 2.0 * b));
}

Point Distribution2D::sample(Rng& rng) const {
  const double a = uniform_open(rng);
  const double v = uniform_open(rng);
  double b = v;
  if (kind_ == Kind::fgm) {
    // Invert the conditional copula law b -> b (1 + k (1 - b)), k = theta (1 - 2a).
    const double k = theta_ * (1.0 - 2.0 * a);
    if (std::abs(k) > 1e-12) b = ((1.0 + k) - std::sqrt((1.0 + k) * (1.0 + k) - 4.0 * k * v)) / (2.0 * k);
  }
  return {x_.quantile(a), y_.quantile(b)};
}

SingleJump1D::SingleJump1D(Law1D l) : law(std::move(l)) {
  if (!law.screen_continuous()) {
    throw InvalidMeasure("single jump law " + law.name() + " is not continuous");
  }
}

SingleJump2D::SingleJump2D(Distribution2D d) : dist(std::move(d)) {
  if (!dist.x().screen_continuous() || !dist.y().screen_continuous()) {
    throw InvalidMeasure("single jump law has a non-continuous margin");
  }
}

}  // namespace pcomp
