#include "pcomp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "pcomp/errors.hpp"

namespace pcomp {

Point join(const Point& s, const Point& t) { return {std::max(s.x, t.x), std::max(s.y, t.y)}; }

Point meet(const Point& s, const Point& t) { return {std::min(s.x, t.x), std::min(s.y, t.y)}; }

Window::Window(double x, double y) : x_max(x), y_max(y) {
  if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError("window dimensions must be finite and strictly positive");
  }
}

bool Window::contains_closed(const Point& p) const {
  return p.x >= 0.0 && p.y >= 0.0 && p.x <= x_max && p.y <= y_max;
}

bool Window::contains_open(const Point& p) const {
  return p.x > 0.0 && p.y > 0.0 && p.x < x_max && p.y < y_max;
}

Antichain::Antichain(std::vector<Point> points) : points_(std::move(points)) {
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i - 1].x < points_[i].x && points_[i - 1].y > points_[i].y)) {
      throw DomainError("antichain points must have x strictly ascending and y strictly descending");
    }
  }
}

Antichain minimal_elements(std::span<const Point> points) {
  std::vector<Point> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  std::vector<Point> result;
  double lowest = std::numeric_limits<double>::infinity();
  for (const Point& p : sorted) {
    if (p.y < lowest) {
      result.push_back(p);
      lowest = p.y;
    }
  }
  return Antichain(std::move(result));
}

namespace {

// Throws on the first pair sharing a coordinate, naming both indices.
void check_distinct_coordinates(std::span<const Point> points) {
  std::vector<std::size_t> order(points.size());
  auto report = [&](const char* axis, std::size_t a, std::size_t b) {
    std::ostringstream msg;
    msg << "strict simplicity violated: points " << std::min(a, b) << " and " << std::max(a, b)
        << " share their " << axis << " coordinate";
    throw StrictSimplicityError(msg.str());
  };
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a].x < points[b].x; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (points[order[i - 1]].x == points[order[i]].x) report("x", order[i - 1], order[i]);
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a].y < points[b].y; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (points[order[i - 1]].y == points[order[i]].y) report("y", order[i - 1], order[i]);
  }
}

}  // namespace

Antichain min_antichain(std::span<const Point> points) {
  check_distinct_coordinates(points);
  return minimal_elements(points);
}

Staircase::Staircase(Window window) : window_(window) {}

Staircase::Staircase(Window window, Antichain corners)
    : window_(window), corners_(std::move(corners)) {
  for (const Point& c : corners_.points()) {
    if (!window_.contains_closed(c)) throw DomainError("staircase corner outside the window");
  }
}

Staircase Staircase::axes(Window window) {
  return Staircase(window, Antichain({Point{0.0, 0.0}}));
}

bool Staircase::contains(const Point& t) const {
  if (!window_.contains_closed(t)) return false;
  const auto pts = corners_.points();
  // Among corners with a.x < t.x the last one has the smallest y.
  auto it = std::lower_bound(pts.begin(), pts.end(), t.x,
                             [](const Point& a, double x) { return a.x < x; });
  if (it == pts.begin()) return true;
  return !(std::prev(it)->y < t.y);
}

bool staircase_contains(const Staircase& L, const Point& t) { return L.contains(t); }

Staircase staircase_intersect(const Staircase& a, const Staircase& b) {
  if (!(a.window() == b.window())) throw DomainError("staircase windows differ");
  std::vector<Point> all(a.corners().points().begin(), a.corners().points().end());
  all.insert(all.end(), b.corners().points().begin(), b.corners().points().end());
  return Staircase(a.window(), minimal_elements(all));
}

PointPattern::PointPattern(Window window, std::vector<Point> points)
    : window_(window), points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!window_.contains_open(points_[i])) {
      std::ostringstream msg;
      msg << "point " << i << " (" << points_[i].x << ", " << points_[i].y
          << ") is not strictly inside the window";
      throw StrictSimplicityError(msg.str());
    }
  }
  check_distinct_coordinates(points_);
}

PointPattern PointPattern::restrict_to(const Staircase& L) const {
  std::vector<Point> kept;
  for (const Point& p : points_) {
    if (L.contains(p)) kept.push_back(p);
  }
  return PointPattern(window_, std::move(kept));
}

std::size_t count(const PointPattern& pattern, const Point& t) {
  if (!pattern.window().contains_closed(t)) throw DomainError("count: t outside the window");
  return static_cast<std::size_t>(std::count_if(pattern.points().begin(), pattern.points().end(),
                                                [&](const Point& p) { return leq(p, t); }));
}

std::size_t rectangle_increment(const PointPattern& pattern, const Point& s, const Point& t) {
  if (!leq(s, t)) throw DomainError("rectangle_increment: s <= t violated");
  return static_cast<std::size_t>(
      std::count_if(pattern.points().begin(), pattern.points().end(), [&](const Point& p) {
        return p.x > s.x && p.x <= t.x && p.y > s.y && p.y <= t.y;
      }));
}

Antichain exposed_points(const PointPattern& pattern, std::size_t k) {
  if (k == 0) throw DomainError("exposed_points: k must be at least 1");
  if (k > pattern.size()) return {};
  std::vector<Point> sorted(pattern.points().begin(), pattern.points().end());
  std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) { return a.x < b.x; });

  // The lowest level reaching k points at abscissa x is the k-th smallest
  // ordinate among points with abscissa <= x. Exposed points sit where that
  // level strictly drops.
  std::priority_queue<double> k_smallest;
  std::vector<Point> exposed;
  double level = std::numeric_limits<double>::infinity();
  for (const Point& p : sorted) {
    k_smallest.push(p.y);
    if (k_smallest.size() > k) k_smallest.pop();
    if (k_smallest.size() == k && k_smallest.top() < level) {
      level = k_smallest.top();
      exposed.push_back({p.x, level});
    }
  }
  return Antichain(std::move(exposed));
}

Staircase xi(const PointPattern& pattern, std::size_t k) {
  if (k == 0) return Staircase::axes(pattern.window());
  return Staircase(pattern.window(), exposed_points(pattern, k));
}

Staircase xi_plus_from_exposed(const Window& window, const Antichain& exposed) {
  if (exposed.size() <= 1) return Staircase::whole(window);
  // Canonically adjacent joins are the minimal pairwise joins.
  std::vector<Point> joins;
  joins.reserve(exposed.size() - 1);
  for (std::size_t i = 0; i + 1 < exposed.size(); ++i) {
    joins.push_back({exposed[i + 1].x, exposed[i].y});
  }
  return Staircase(window, Antichain(std::move(joins)));
}

Staircase xi_plus(const PointPattern& pattern, std::size_t k) {
  if (k == 0) return Staircase::whole(pattern.window());
  return xi_plus_from_exposed(pattern.window(), exposed_points(pattern, k));
}

SingleLineDecomposition decompose(const PointPattern& pattern) {
  const Window& window = pattern.window();
  const std::size_t n = pattern.size();
  const auto points = pattern.points();

  SingleLineDecomposition out;
  out.xi.reserve(n + 2);
  out.xi_plus.reserve(n + 2);
  out.xi.push_back(Staircase::axes(window));
  out.xi_plus.push_back(Staircase::whole(window));

  std::vector<bool> assigned(n, false);
  std::size_t n_assigned = 0;
  for (std::size_t k = 1; k <= n + 1; ++k) {
    const Antichain exposed = k <= n ? exposed_points(pattern, k) : Antichain{};
    out.xi.emplace_back(window, exposed);
    out.xi_plus.push_back(xi_plus_from_exposed(window, exposed));

    const Staircase& prev = out.xi[k - 1];
    const Staircase& prev_plus = out.xi_plus[k - 1];
    std::vector<Point> candidates;
    std::vector<std::size_t> candidate_index;
    for (std::size_t i = 0; i < n; ++i) {
      if (prev_plus.contains(points[i]) && !prev.contains(points[i])) {
        candidates.push_back(points[i]);
        candidate_index.push_back(i);
      }
    }
    Antichain line = min_antichain(candidates);
    for (const Point& p : line.points()) {
      const auto pos = std::find(candidates.begin(), candidates.end(), p) - candidates.begin();
      const std::size_t i = candidate_index[static_cast<std::size_t>(pos)];
      if (assigned[i]) throw InvariantViolation("decompose: point assigned to two lines");
      assigned[i] = true;
      ++n_assigned;
    }

    const Staircase line_layer(window, line);
    if (!(staircase_intersect(prev_plus, line_layer) == out.xi[k])) {
      std::ostringstream msg;
      msg << "decompose: xi_" << k << " != xi_" << k - 1 << "^+ intersect xi_1(M_" << k << ")";
      throw InvariantViolation(msg.str());
    }
    out.lines.push_back(std::move(line));
  }
  if (n_assigned != n) throw InvariantViolation("decompose: lines do not cover the pattern");
  while (!out.lines.empty() && out.lines.back().empty()) out.lines.pop_back();
  return out;
}

}  // namespace pcomp
