#include <gtest/gtest.h>

#include <cmath>

#include "pcomp/distributions.hpp"
#include "pcomp/errors.hpp"
#include "pcomp/simulate.hpp"
#include "pcomp/verify.hpp"

using namespace pcomp;

namespace {

const Window kUnit{1, 1};

bool is_antichain(const PointPattern& p) {
  for (const Point& a : p.points()) {
    for (const Point& b : p.points()) {
      if (!(a == b) && leq(a, b)) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Law1D, ClosedForms) {
  const auto e = Law1D::exponential(2.0);
  EXPECT_NEAR(e.cdf(0.5), 1 - std::exp(-1.0), 1e-14);
  EXPECT_NEAR(e.cumulative_hazard(0.5), 1.0, 1e-14);
  EXPECT_NEAR(e.mean(), 0.5, 1e-15);
  const auto u = Law1D::uniform(0, 1);
  EXPECT_TRUE(std::isinf(u.cumulative_hazard(1.0)));
  EXPECT_NEAR(u.quantile(0.3), 0.3, 1e-15);
  EXPECT_NEAR(Law1D::gamma(2, 0.5).variance(), 0.5, 1e-14);
  EXPECT_TRUE(Law1D::weibull(1.5, 1).screen_continuous());
  EXPECT_FALSE(Law1D::constant(1.0).screen_continuous());
  EXPECT_FALSE(Law1D::lognormal(0, 1e-4).screen_continuous());
}

TEST(Distribution2D, ProductAndFgm) {
  const auto d = Distribution2D::product(Law1D::uniform(0, 1), Law1D::uniform(0, 1));
  EXPECT_NEAR(d.cdf({0.5, 0.4}), 0.2, 1e-15);
  EXPECT_NEAR(d.survival({0.5, 0.4}), 0.3, 1e-15);
  const auto f = Distribution2D::fgm(0.5, Law1D::uniform(0, 1), Law1D::uniform(0, 1));
  // C(u,v) = uv(1 + theta (1-u)(1-v))
  EXPECT_NEAR(f.cdf({0.5, 0.5}), 0.25 * (1 + 0.5 * 0.25), 1e-15);
  EXPECT_NEAR(f.survival({0.5, 0.5}), f.cdf({0.5, 0.5}), 1e-15);  // symmetric copula at the center
  EXPECT_THROW(Distribution2D::fgm(1.5, Law1D::uniform(0, 1), Law1D::uniform(0, 1)), ConfigurationError);
}

TEST(Simulate, DeterministicUnderSeed) {
  const auto h = HazardMeasure::lebesgue(kUnit, 5.0);
  const auto a = sample_poisson(h, 99), b = sample_poisson(h, 99), c = sample_poisson(h, 100);
  ASSERT_EQ(a.pattern.size(), b.pattern.size());
  for (std::size_t i = 0; i < a.pattern.size(); ++i) EXPECT_EQ(a.pattern.points()[i], b.pattern.points()[i]);
  EXPECT_FALSE(a.pattern.size() == c.pattern.size() &&
               std::equal(a.pattern.points().begin(), a.pattern.points().end(), c.pattern.points().begin()));
}

TEST(Simulate, ZeroMeasureIsEmpty) {
  for (std::uint64_t s = 0; s < 20; ++s) EXPECT_TRUE(sample_poisson(HazardMeasure::zero(kUnit), s).pattern.empty());
}

TEST(Simulate, PoissonMeanCount) {
  const auto h = HazardMeasure::lebesgue(kUnit);
  Moments m;
  for (std::size_t r = 0; r < 20000; ++r) {
    Rng rng = make_stream(5, r);
    m.add(static_cast<double>(sample_poisson(h, rng).pattern.size()));
  }
  EXPECT_LE(std::abs(m.mean() - 1.0), 3 * m.std_error());
}

TEST(Simulate, CoxOverdispersion) {
  const CoxDriver driver = ScaleMixtureDriver{HazardMeasure::lebesgue(kUnit), Law1D::uniform(0, 2)};
  Moments m;
  for (std::size_t r = 0; r < 20000; ++r) {
    Rng rng = make_stream(6, r);
    const auto s = sample_cox(driver, rng);
    ASSERT_TRUE(s.driver.has_value());
    EXPECT_EQ(s.driver->family, "scale_mixture");
    m.add(static_cast<double>(s.pattern.size()));
  }
  EXPECT_LE(std::abs(m.mean() - 1.0), 3 * m.std_error());
  // Var N = E W + Var W = 4/3
  EXPECT_GT(m.variance(), 1.0 + 0.1);
}

TEST(Simulate, RealizedDriverFromValues) {
  const CoxDriver driver = TwoRegionDriver{Window{2, 1}, {1, 0.5}, Law1D::gamma(2, 0.5)};
  const auto d = realized_from_values(driver, {1, 2, 3, 4});
  EXPECT_NEAR(d.measure.total(), 0.5 * (1 + 2 + 3 + 4), 1e-14);
  EXPECT_THROW(realized_from_values(driver, {1, 2}), ConfigurationError);
  Rng rng(3);
  const auto r = realize_driver(driver, rng);
  EXPECT_NEAR(realized_from_values(driver, r.values).measure.total(), r.measure.total(), 1e-14);
}

TEST(Simulate, SingleLineIsAntichain) {
  const auto h = HazardMeasure::lebesgue(kUnit, 8.0);
  for (std::uint64_t s = 0; s < 200; ++s) EXPECT_TRUE(is_antichain(sample_single_line(h, s).pattern));
}

TEST(Simulate, SingleLineAvoidance) {
  const auto h = HazardMeasure::lebesgue(kUnit);
  Moments m;
  for (std::size_t r = 0; r < 20000; ++r) {
    Rng rng = make_stream(8, r);
    m.add(count(sample_single_line(h, rng).pattern, {1, 1}) == 0 ? 1.0 : 0.0);
  }
  EXPECT_LE(std::abs(m.mean() - std::exp(-1.0)), 3 * m.std_error());
}

TEST(Simulate, SingleJumpSamples) {
  const SingleJump1D one(Law1D::exponential(1.0));
  const SingleJump2D two(Distribution2D::product(Law1D::uniform(0, 1), Law1D::uniform(0, 1)));
  Moments mean, upper;
  Rng rng(12);
  for (int i = 0; i < 20000; ++i) {
    mean.add(sample_single_jump(one, rng));
    const Point tau = sample_single_jump(two, rng);
    upper.add(tau.x >= 0.5 && tau.y >= 0.5 ? 1.0 : 0.0);
  }
  EXPECT_LE(std::abs(mean.mean() - 1.0), 3 * mean.std_error());
  EXPECT_LE(std::abs(upper.mean() - 0.25), 3 * upper.std_error());
  EXPECT_THROW(SingleJump1D(Law1D::constant(1.0)), InvalidMeasure);
}
