#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pcomp/errors.hpp"
#include "pcomp/verify.hpp"

using namespace pcomp;

namespace {

const Window kUnit{1, 1};

PatternModel unit_poisson() { return PoissonModel{HazardMeasure::lebesgue(kUnit)}; }

}  // namespace

TEST(Moments, MatchesDirectFormulas) {
  Moments a, b, all;
  const std::vector<double> xs{1, 4, 2, 8, 5, 7};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    (i < 2 ? a : b).add(xs[i]);
    all.add(xs[i]);
  }
  a.merge(b);
  EXPECT_EQ(a.n, all.n);
  EXPECT_DOUBLE_EQ(a.mean(), 4.5);
  // sum of squared deviations 37.5 over n - 1
  EXPECT_NEAR(a.variance(), 37.5 / 5, 1e-12);
  EXPECT_NEAR(a.std_error(), std::sqrt(37.5 / 5 / 6), 1e-12);
}

TEST(ZReport, Verdicts) {
  Moments m;
  for (double v : {1.0, 2.0, 3.0, 4.0}) m.add(v);
  const auto pass = z_report("x", m, 2.5, 3, 1);
  EXPECT_EQ(pass.verdict, Verdict::pass);
  EXPECT_DOUBLE_EQ(pass.z, 0.0);
  const auto fail = z_report("x", m, 10.0, 3, 1);
  EXPECT_EQ(fail.verdict, Verdict::fail);
  Moments flat;
  for (int i = 0; i < 5; ++i) flat.add(0.5);
  EXPECT_EQ(z_report("c", flat, 0.5, 3, 1).verdict, Verdict::pass);
  EXPECT_EQ(z_report("c", flat, 0.6, 3, 1).verdict, Verdict::fail);
}

TEST(ForEachReplicate, SameResultForAnyJobs) {
  std::vector<double> serial(5000), parallel(5000);
  auto fill = [](std::vector<double>& out) {
    return [&out](std::size_t r) {
      Rng rng = make_stream(77, r);
      out[r] = uniform_open(rng);
    };
  };
  for_each_replicate(serial.size(), 1, fill(serial));
  for_each_replicate(parallel.size(), 4, fill(parallel));
  EXPECT_EQ(serial, parallel);
  EXPECT_THROW(for_each_replicate(10, 3, [](std::size_t r) {
                 if (r == 7) throw DomainError("boom");
               }),
               DomainError);
}

TEST(RegionRestriction, EnforcesMeasurability) {
  const PointPattern p(kUnit, {{0.2, 0.9}, {0.3, 0.3}, {0.8, 0.7}, {0.9, 0.2}});
  const auto A = RegionRestriction::A(p, {0.5, 0.5});
  EXPECT_EQ(A.pattern().size(), 1u);
  EXPECT_EQ(A.count_in({0, 0}, {0.5, 0.5}), 1u);
  EXPECT_THROW(A.count_in({0, 0}, {0.6, 0.5}), MeasurabilityViolation);

  const auto D = RegionRestriction::D(p, {0.5, 0.5});
  EXPECT_EQ(D.pattern().size(), 3u);  // (0.8, 0.7) lies strictly above-right
  EXPECT_EQ(D.count_in({0, 0}, {0.5, 1.0}), 2u);
  EXPECT_EQ(D.count_in({0, 0}, {1.0, 0.5}), 2u);
  EXPECT_THROW(D.count_in({0, 0}, {0.6, 0.6}), MeasurabilityViolation);

  const auto again = D.restrict_again();
  EXPECT_EQ(again.pattern().size(), D.pattern().size());
  EXPECT_EQ(again.kind(), D.kind());
}

TEST(TestFunctional, BoundsAndValues) {
  const PointPattern p(kUnit, {{0.2, 0.9}, {0.3, 0.3}, {0.4, 0.1}});
  const auto D = RegionRestriction::D(p, {0.5, 0.5});
  const Cell left{{0, 0.5}, {0.5, 1}};
  const Cell corner{{0, 0}, {0.5, 0.5}};
  EXPECT_EQ(TestFunctional::constant(1)(D), 1.0);
  EXPECT_EQ(TestFunctional::zero_indicator(left)(D), 0.0);
  EXPECT_EQ(TestFunctional::capped_count(corner, 1)(D), 1.0);
  EXPECT_EQ(TestFunctional::capped_count(corner, 1).bound(), 1.0);
  EXPECT_EQ(TestFunctional::product(left, corner)(D), 0.0);
  const auto menu = default_functionals(kUnit, {0.5, 0.5});
  EXPECT_EQ(menu.size(), 10u);
  for (const auto& f : menu) EXPECT_LE(std::abs(f(D)), f.bound());
}

TEST(VerifyTests, DeterministicAcrossJobs) {
  RunOptions a{4000, 3, 9, 1}, b{4000, 3, 9, 3};
  const auto fs = default_functionals(kUnit, {0.5, 0.5});
  const auto ra = test_strong_martingale(unit_poisson(), {0.5, 0.5}, {1, 1}, fs, a);
  const auto rb = test_strong_martingale(unit_poisson(), {0.5, 0.5}, {1, 1}, fs, b);
  ASSERT_EQ(ra.size(), rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    EXPECT_EQ(ra[i].estimate, rb[i].estimate);
    EXPECT_EQ(ra[i].std_error, rb[i].std_error);
  }
}

TEST(VerifyTests, ZeroMeasureTrivialities) {
  const PatternModel zero = SingleLineModel{HazardMeasure::zero(kUnit)};
  const auto r = test_avoidance_factorization(zero, {0.5, 1}, {1, 0.5}, RunOptions{200, 3, 1, 1});
  EXPECT_EQ(r.estimate, 1.0);
  EXPECT_EQ(r.target, 1.0);
  EXPECT_EQ(r.verdict, Verdict::pass);
  const auto grid = regular_grid(kUnit, 3, 3);
  const auto rec = test_poisson_reconstruction(PoissonModel{HazardMeasure::zero(kUnit)}, grid, RunOptions{50, 3, 1, 1});
  EXPECT_EQ(rec.estimate, 0.0);
  EXPECT_EQ(rec.verdict, Verdict::pass);
}

TEST(VerifyTests, RejectsComparablePoints) {
  EXPECT_THROW(test_avoidance_factorization(unit_poisson(), {0.5, 0.5}, {0.5, 0.5}, RunOptions{10, 3, 1, 1}),
               DomainError);
}

TEST(VerifyTests, SingleJumpAtOrigin) {
  const SingleJump1D one(Law1D::exponential(1.0));
  const auto r = test_single_jump_mean(one, 0.0, RunOptions{100, 3, 1, 1});
  EXPECT_EQ(r.estimate, 0.0);
  EXPECT_EQ(r.target, 0.0);
  EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(VerifyTests, SingleStratumEqualsPlainCovariance) {
  // A_t is almost always empty and the cap never binds, so only one stratum
  // qualifies and the statistic is the sample covariance over it.
  const PatternModel m = PoissonModel{HazardMeasure::lebesgue(kUnit, 2.0)};
  const Point t{0.05, 0.05};
  const RunOptions opt{3000, 3, 4, 1};
  F4Options f4;
  f4.cap = 100;
  f4.min_stratum = 2950;  // only the empty-A_t stratum qualifies
  const auto r = test_f4_diagnostic(m, t, opt, f4);

  Moments a, b, ab;
  std::size_t used = 0;
  for (std::size_t i = 0; i < opt.n; ++i) {
    Rng rng = make_stream(opt.seed, i);
    const PointPattern p = sample_pattern(m, rng).pattern;
    if (count(p, t) != 0) continue;
    double u = 0, v = 0;
    for (const Point& q : p.points()) {
      if (q.x <= t.x && q.y > t.y) u += 1;
      if (q.x > t.x && q.y <= t.y) v += 1;
    }
    a.add(u);
    b.add(v);
    ab.add(u * v);
    ++used;
  }
  ASSERT_GE(used, f4.min_stratum);
  const double nc = static_cast<double>(used);
  const double cov = (ab.mean() - a.mean() * b.mean()) * nc / (nc - 1.0);
  EXPECT_NEAR(r.estimate, cov, 1e-12);
}
