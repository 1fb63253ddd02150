#pragma once

// Partial-order geometry of finite planar point patterns.
//
// Points are ordered componentwise: s <= t iff s.x <= t.x and s.y <= t.y,
// and s << t iff both inequalities are strict. A staircase is a closed
// lower layer L = { t : for every corner a, t.x <= a.x or t.y <= a.y }
// clipped to the observation window; it is stored as the antichain of its
// corners in canonical order (x ascending, hence y descending).

#include <cstddef>
#include <span>
#include <vector>

namespace pcomp {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline bool leq(const Point& s, const Point& t) { return s.x <= t.x && s.y <= t.y; }
inline bool strictly_below(const Point& s, const Point& t) { return s.x < t.x && s.y < t.y; }
inline bool incomparable(const Point& s, const Point& t) { return !leq(s, t) && !leq(t, s); }
Point join(const Point& s, const Point& t);  // coordinatewise max
Point meet(const Point& s, const Point& t);  // coordinatewise min

struct Window {
  double x_max = 1.0;
  double y_max = 1.0;

  Window() = default;
  Window(double x, double y);

  Point upper_corner() const { return {x_max, y_max}; }
  // Closed window [0,x_max] x [0,y_max].
  bool contains_closed(const Point& p) const;
  // Open window (0,x_max) x (0,y_max).
  bool contains_open(const Point& p) const;

  friend bool operator==(const Window&, const Window&) = default;
};

// Pairwise incomparable points in canonical order.
class Antichain {
 public:
  Antichain() = default;
  // Validates canonical order (x strictly ascending, y strictly descending).
  explicit Antichain(std::vector<Point> points);

  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }

  friend bool operator==(const Antichain&, const Antichain&) = default;

 private:
  std::vector<Point> points_;
};

// Minimal elements under <= of an arbitrary point set, ties allowed
// (a point weakly dominated by another distinct-or-equal point is dropped,
// duplicates collapse). Result is canonical.
Antichain minimal_elements(std::span<const Point> points);

// Minimal elements of a strictly simple point set. Throws
// StrictSimplicityError when two points share a coordinate.
Antichain min_antichain(std::span<const Point> points);

class Staircase {
 public:
  // The whole window (no corners).
  explicit Staircase(Window window);
  // Corners outside the closed window are rejected.
  Staircase(Window window, Antichain corners);

  static Staircase whole(Window window) { return Staircase(window); }
  // The coordinate axes: the single corner at the origin.
  static Staircase axes(Window window);

  const Window& window() const { return window_; }
  const Antichain& corners() const { return corners_; }
  bool is_whole() const { return corners_.empty(); }

  // t in L. O(log m) by binary search over the canonical corners.
  bool contains(const Point& t) const;

  friend bool operator==(const Staircase&, const Staircase&) = default;

 private:
  Window window_;
  Antichain corners_;
};

bool staircase_contains(const Staircase& L, const Point& t);
// Throws DomainError on window mismatch.
Staircase staircase_intersect(const Staircase& a, const Staircase& b);

// Strictly simple finite configuration of points inside an open window.
class PointPattern {
 public:
  explicit PointPattern(Window window, std::vector<Point> points = {});

  const Window& window() const { return window_; }
  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  // Points of this pattern lying in L.
  PointPattern restrict_to(const Staircase& L) const;

 private:
  Window window_;
  std::vector<Point> points_;
};

// #{ tau : tau <= t }. t must lie in the closed window.
std::size_t count(const PointPattern& pattern, const Point& t);

// Points in the half-open rectangle (s.x,t.x] x (s.y,t.y]. Requires s <= t.
std::size_t rectangle_increment(const PointPattern& pattern, const Point& s, const Point& t);

// Minimal points of { u : count(pattern,u) >= k }, k >= 1.
Antichain exposed_points(const PointPattern& pattern, std::size_t k);

// Stopping set xi_k: points with fewer than k pattern points strictly
// below-left. k = 0 is the axes.
Staircase xi(const PointPattern& pattern, std::size_t k);

// xi_k^+: intersection of D-sets of pairwise joins of exposed points.
// Whole window when k = 0 or when E_k has at most one point.
Staircase xi_plus(const PointPattern& pattern, std::size_t k);

// Same as xi_plus, from an already computed E_k.
Staircase xi_plus_from_exposed(const Window& window, const Antichain& exposed);

// Single line decomposition N = sum_k M_k.
struct SingleLineDecomposition {
  // lines[k-1] = J(M_k). Intermediate empty lines are kept; trailing ones
  // are dropped.
  std::vector<Antichain> lines;
  // xi[k] and xi_plus[k] for k = 0 .. n+1, n = number of pattern points.
  std::vector<Staircase> xi;
  std::vector<Staircase> xi_plus;
};

// Throws InvariantViolation if xi_k != xi_{k-1}^+ intersect xi_1(M_k) for
// some k, or if the lines fail to partition the points.
SingleLineDecomposition decompose(const PointPattern& pattern);

}  // namespace pcomp
