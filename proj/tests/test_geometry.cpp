#include <gtest/gtest.h>

#include <vector>

#include "pcomp/errors.hpp"
#include "pcomp/geometry.hpp"
#include "support.hpp"

using namespace pcomp;

namespace {

const Window kW6{6.0, 6.0};

PointPattern p5() { return PointPattern(kW6, {{1, 5}, {2, 3}, {4, 1}, {3, 4}, {5, 2}}); }

std::vector<Point> corners(const Staircase& L) { return {L.corners().points().begin(), L.corners().points().end()}; }
std::vector<Point> pts(const Antichain& a) { return {a.points().begin(), a.points().end()}; }

}  // namespace

TEST(Geometry, CountP5) {
  EXPECT_EQ(count(p5(), {3, 4}), 2u);
  EXPECT_EQ(count(p5(), {0, 0}), 0u);
  EXPECT_EQ(count(p5(), {6, 6}), 5u);
}

TEST(Geometry, RectangleIncrementHalfOpen) {
  EXPECT_EQ(rectangle_increment(p5(), {2, 2}, {5, 5}), 1u);
  EXPECT_EQ(rectangle_increment(p5(), {3, 3}, {3, 3}), 0u);
  EXPECT_EQ(rectangle_increment(p5(), {0, 0}, {6, 6}), 5u);
  EXPECT_THROW(rectangle_increment(p5(), {3, 1}, {2, 5}), DomainError);
}

TEST(Geometry, MinAntichain) {
  const PointPattern p = p5();
  EXPECT_EQ(pts(min_antichain(p.points())), (std::vector<Point>{{1, 5}, {2, 3}, {4, 1}}));
  const std::vector<Point> one{{0.3, 0.7}};
  EXPECT_EQ(pts(min_antichain(one)), one);
  const std::vector<Point> chain{{1, 1}, {2, 2}, {3, 3}};
  EXPECT_EQ(pts(min_antichain(chain)), (std::vector<Point>{{1, 1}}));
  const std::vector<Point> tied{{1, 1}, {1, 2}};
  EXPECT_THROW(min_antichain(tied), StrictSimplicityError);
}

TEST(Geometry, ExposedPointsP5) {
  EXPECT_EQ(pts(exposed_points(p5(), 1)), (std::vector<Point>{{1, 5}, {2, 3}, {4, 1}}));
  EXPECT_EQ(pts(exposed_points(p5(), 2)), (std::vector<Point>{{2, 5}, {3, 4}, {4, 3}, {5, 2}}));
  EXPECT_TRUE(exposed_points(p5(), 6).empty());
}

TEST(Geometry, XiMembershipP5) {
  EXPECT_FALSE(xi(p5(), 1).contains({3, 4}));
  EXPECT_TRUE(xi(p5(), 2).contains({3, 4}));
  EXPECT_TRUE(xi(p5(), 6).is_whole());
  EXPECT_EQ(xi(p5(), 0), Staircase::axes(kW6));
}

TEST(Geometry, XiPlusP5) {
  EXPECT_EQ(corners(xi_plus(p5(), 1)), (std::vector<Point>{{2, 5}, {4, 3}}));
  EXPECT_TRUE(xi_plus(p5(), 0).is_whole());
  EXPECT_TRUE(xi_plus(PointPattern(kW6, {{2, 2}}), 1).is_whole());
}

TEST(Geometry, StaircaseContains) {
  const Window w{3, 3};
  const Staircase L(w, Antichain({{1, 1.5}}));
  EXPECT_TRUE(L.contains({2, 1}));
  EXPECT_FALSE(L.contains({2, 2}));
  const Staircase M(kW6, Antichain({{2, 5}, {4, 3}}));
  EXPECT_TRUE(M.contains({3, 4}));
  EXPECT_FALSE(M.contains({4.5, 3.5}));
  EXPECT_FALSE(M.contains({7, 0}));
}

TEST(Geometry, StaircaseIntersect) {
  const Staircase a(kW6, Antichain({{2, 5}}));
  const Staircase b(kW6, Antichain({{4, 3}}));
  EXPECT_EQ(corners(staircase_intersect(a, b)), (std::vector<Point>{{2, 5}, {4, 3}}));
  EXPECT_EQ(staircase_intersect(Staircase::whole(kW6), b), b);
  EXPECT_EQ(staircase_intersect(a, a), a);
  EXPECT_THROW(staircase_intersect(a, Staircase::whole(Window{1, 1})), DomainError);
}

TEST(Geometry, RejectsNonSimplePatterns) {
  EXPECT_THROW(PointPattern(kW6, {{1, 2}, {1, 3}}), StrictSimplicityError);
  EXPECT_THROW(PointPattern(kW6, {{1, 2}, {3, 2}}), StrictSimplicityError);
  EXPECT_THROW(PointPattern(kW6, {{0, 2}}), StrictSimplicityError);
  EXPECT_THROW(PointPattern(kW6, {{7, 2}}), DomainError);
  EXPECT_THROW(Antichain({{1, 1}, {2, 2}}), DomainError);
}

TEST(Geometry, DecomposeP5) {
  const auto d = decompose(p5());
  ASSERT_EQ(d.lines.size(), 2u);
  EXPECT_EQ(pts(d.lines[0]), (std::vector<Point>{{1, 5}, {2, 3}, {4, 1}}));
  EXPECT_EQ(pts(d.lines[1]), (std::vector<Point>{{3, 4}, {5, 2}}));
  EXPECT_EQ(d.xi.size(), 7u);
  EXPECT_EQ(d.xi_plus.size(), 7u);
}

TEST(Geometry, DecomposeTrivialCases) {
  const auto empty = decompose(PointPattern(kW6));
  EXPECT_TRUE(empty.lines.empty());
  EXPECT_TRUE(empty.xi[1].is_whole());
  const auto anti = decompose(PointPattern(kW6, {{1, 4}, {2, 3}, {3, 2}, {4, 1}}));
  ASSERT_EQ(anti.lines.size(), 1u);
  EXPECT_EQ(anti.lines[0].size(), 4u);
}

TEST(Geometry, OracleAgreementOnRandomPatterns) {
  Rng rng(7);
  const Window w{1, 1};
  for (int rep = 0; rep < 60; ++rep) {
    const PointPattern p = oracle::random_pattern(rng, w, 10);
    const std::vector<Point> all(p.points().begin(), p.points().end());
    for (std::size_t k = 1; k <= p.size() + 1; ++k) {
      EXPECT_EQ(pts(exposed_points(p, k)), oracle::brute_exposed(all, k));
      const Staircase X = xi(p, k), Xp = xi_plus(p, k);
      const auto exposed = oracle::brute_exposed(all, k);
      for (int i = 0; i < 30; ++i) {
        for (int j = 0; j < 30; ++j) {
          const Point t{(i + 0.5) / 30.0, (j + 0.5) / 30.0};
          ASSERT_EQ(X.contains(t), oracle::in_xi(p, k, t));
          ASSERT_EQ(Xp.contains(t), oracle::in_xi_plus(exposed, w, t));
        }
      }
    }
    const auto d = decompose(p);
    const auto lines = oracle::brute_lines(p);
    ASSERT_EQ(d.lines.size(), lines.size());
    for (std::size_t k = 0; k < lines.size(); ++k) EXPECT_EQ(pts(d.lines[k]), lines[k]);
  }
}

TEST(Geometry, RestrictToKeepsPointsInside) {
  const Staircase L(kW6, Antichain({{2, 3}}));
  const PointPattern r = p5().restrict_to(L);
  for (const Point& q : r.points()) EXPECT_TRUE(L.contains(q));
  EXPECT_EQ(r.size(), 4u);
}
