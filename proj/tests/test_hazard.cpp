#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pcomp/errors.hpp"
#include "pcomp/hazard.hpp"
#include "support.hpp"

using namespace pcomp;

namespace {

const Window kUnit{1, 1};

HazardMeasure checkerboard() {
  return HazardMeasure::grid(kUnit, {0, 0.5, 1}, {0, 0.5, 1}, {0.5, 1.5, 1.5, 0.5});
}

Staircase random_staircase(Rng& rng, const Window& w) {
  const std::size_t m = 1 + rng() % 4;
  std::vector<Point> c;
  for (std::size_t i = 0; i < m; ++i) c.push_back({uniform_open(rng) * w.x_max, uniform_open(rng) * w.y_max});
  return Staircase(w, minimal_elements(c));
}

}  // namespace

TEST(Cumulative1D, InterpolatesAndInverts) {
  const Cumulative1D g({0, 1, 3}, {0, 2, 3});
  EXPECT_DOUBLE_EQ(g(0.5), 1.0);
  EXPECT_DOUBLE_EQ(g(2.0), 2.5);
  EXPECT_DOUBLE_EQ(g.inverse(2.5), 2.0);
  EXPECT_DOUBLE_EQ(g.density(2.0), 0.5);
  EXPECT_THROW(Cumulative1D({0, 1}, {0, -1}), InvalidMeasure);
  EXPECT_THROW(Cumulative1D({0.1, 1}, {0, 1}), InvalidMeasure);
}

TEST(Hazard, RectMassExamples) {
  const auto leb = HazardMeasure::lebesgue(kUnit);
  EXPECT_DOUBLE_EQ(leb.rect_mass({0.5, 0.5}, {1, 1}), 0.25);
  EXPECT_DOUBLE_EQ(leb.rect_mass({0.3, 0.4}, {0.3, 0.4}), 0.0);
  const auto two = HazardMeasure::grid(kUnit, {0, 1}, {0, 1}, {2});
  EXPECT_NEAR(two.rect_mass({0, 0}, {1, 0.5}), 1.0, 1e-15);
  EXPECT_THROW(leb.rect_mass({0.6, 0}, {0.5, 1}), DomainError);
}

TEST(Hazard, RegionMassExamples) {
  const Window w{2, 2};
  const auto leb = HazardMeasure::lebesgue(w);
  const Staircase L(w, Antichain({{1, 1.5}}));
  EXPECT_NEAR(region_mass(leb, {2, 2}, L), 3.5, 1e-12);
  EXPECT_NEAR(region_mass(leb, {1.3, 1.7}, Staircase::whole(w)), 1.3 * 1.7, 1e-12);
  EXPECT_NEAR(region_mass(leb, {0.9, 1.9}, L), 0.9 * 1.9, 1e-12);
  EXPECT_NEAR(avoidance_from_hazard(leb, L), std::exp(-3.5), 1e-12);
}

TEST(Hazard, AvoidanceExamples) {
  const auto leb = HazardMeasure::lebesgue(kUnit);
  EXPECT_NEAR(avoidance_from_hazard(leb, {1, 1}), 0.36787944117144233, 1e-15);
  EXPECT_DOUBLE_EQ(avoidance_from_hazard(leb, {0, 0.7}), 1.0);
}

TEST(Hazard, RegionMassMatchesQuadratureOracle) {
  Rng rng(11);
  const Window w{1, 1};
  auto power = HazardMeasure::antiderivative(
      w, [](const Point& t) { return 2.0 * std::pow(t.x * t.y, 1.5); },
      {[](const Point& t) { return 4.5 * std::sqrt(t.x * t.y); }, 4.5, "power", 64});
  const std::vector<HazardMeasure> measures{
      HazardMeasure::lebesgue(w, 1.7), checkerboard(),
      HazardMeasure::product(w, Cumulative1D({0, 0.3, 1}, {0, 0.9, 1.2}), Cumulative1D::linear(2.0, 1.0)), power};
  for (const auto& h : measures) {
    for (int rep = 0; rep < 25; ++rep) {
      const Staircase L = random_staircase(rng, w);
      const Point t{uniform_open(rng), uniform_open(rng)};
      std::vector<double> xb{0.3, 0.5}, yb{0.5};
      for (const Point& c : L.corners().points()) {
        xb.push_back(c.x);
        yb.push_back(c.y);
      }
      const double quad = oracle::quadrature_mass([&](const Point& p) { return h.density(p); },
                                                   [&](const Point& p) { return L.contains(p); }, t, xb, yb, 400);
      const double got = region_mass(h, t, L);
      EXPECT_NEAR(got, quad, std::max(1e-2 * quad, 1e-6));
    }
  }
}

TEST(Hazard, FromAvoidanceRoundTrip) {
  const auto h = hazard_from_avoidance([](const Point& t) { return std::exp(-t.x * t.y); }, kUnit);
  const auto leb = HazardMeasure::lebesgue(kUnit);
  for (double a : {0.1, 0.35, 0.8}) {
    for (double b : {0.2, 0.6, 1.0}) {
      EXPECT_NEAR(h.rect_mass({a / 2, b / 3}, {a, b}), leb.rect_mass({a / 2, b / 3}, {a, b}), 1e-12);
    }
  }
  const auto zero = hazard_from_avoidance([](const Point&) { return 1.0; }, kUnit);
  EXPECT_DOUBLE_EQ(zero.total(), 0.0);
}

TEST(Hazard, FromAvoidanceRejectsLineMass) {
  EXPECT_THROW(hazard_from_avoidance([](const Point& t) { return std::exp(-std::min(t.x, t.y)); }, kUnit),
               InvalidAvoidance);
  EXPECT_THROW(hazard_from_avoidance([](const Point& t) { return std::exp(-t.x - t.y); }, kUnit), DomainError);
  EXPECT_THROW(hazard_from_avoidance([](const Point&) { return 0.0; }, kUnit), DomainError);
}

TEST(Hazard, CheckIncreasing) {
  EXPECT_TRUE(check_increasing(HazardMeasure::lebesgue(kUnit), 16).ok);
  const auto bad = check_increasing([](const Point& t) { return t.x + t.y - t.x * t.y; }, kUnit, 1);
  EXPECT_FALSE(bad.ok);
  EXPECT_NEAR(bad.increment, -1.0, 1e-12);
  EXPECT_TRUE(check_increasing([](const Point& t) { return t.x * t.x * t.y * t.y; }, kUnit, 32).ok);
}

TEST(Hazard, ScaledAndZero) {
  const auto h = checkerboard().scaled(2.0);
  EXPECT_NEAR(h.total(), 2.0, 1e-14);
  EXPECT_DOUBLE_EQ(HazardMeasure::zero(kUnit).total(), 0.0);
  EXPECT_THROW(checkerboard().scaled(-1.0), InvalidMeasure);
}

TEST(Hazard, ContinuityScreen) {
  EXPECT_TRUE(check_line_continuity([](const Point& t) { return t.x * t.y; }, kUnit).ok);
  EXPECT_FALSE(check_line_continuity([](const Point& t) { return std::min(t.x, t.y); }, kUnit).ok);
}
