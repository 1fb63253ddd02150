#pragma once

// Random fixtures and brute-force oracles shared by the unit tests and the
// acceptance binary. Oracles work from definitions only and do not call
// the library routines they check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "pcomp/geometry.hpp"
#include "pcomp/random.hpp"

namespace pcomp::oracle {

inline PointPattern random_pattern(Rng& rng, const Window& w, std::size_t max_points) {
  const std::size_t n = static_cast<std::size_t>(rng() % (max_points + 1));
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({uniform_open(rng) * w.x_max, uniform_open(rng) * w.y_max});
  return PointPattern(w, std::move(pts));
}

// Number of pattern points strictly below-left of t.
inline std::size_t strict_count(const PointPattern& p, const Point& t) {
  std::size_t c = 0;
  for (const Point& q : p.points()) c += (q.x < t.x && q.y < t.y) ? 1 : 0;
  return c;
}

inline std::size_t weak_count(const std::vector<Point>& pts, const Point& t) {
  std::size_t c = 0;
  for (const Point& q : pts) c += (q.x <= t.x && q.y <= t.y) ? 1 : 0;
  return c;
}

inline bool in_xi(const PointPattern& p, std::size_t k, const Point& t) {
  return p.window().contains_closed(t) && strict_count(p, t) < k;
}

// Minimal elements of { u : #{q <= u} >= k } by scanning the candidate
// points (x_i, y_j). Sorted x ascending.
inline std::vector<Point> brute_exposed(const std::vector<Point>& pts, std::size_t k) {
  std::vector<Point> hits;
  for (const Point& a : pts) {
    for (const Point& b : pts) {
      const Point u{a.x, b.y};
      if (weak_count(pts, u) >= k) hits.push_back(u);
    }
  }
  std::vector<Point> minimal;
  for (const Point& u : hits) {
    bool dominated = false;
    for (const Point& v : hits) {
      if (!(v == u) && v.x <= u.x && v.y <= u.y) dominated = true;
    }
    if (!dominated && std::find(minimal.begin(), minimal.end(), u) == minimal.end()) minimal.push_back(u);
  }
  std::sort(minimal.begin(), minimal.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
  return minimal;
}

// Intersection of D_{e_i v e_j} over all pairs of exposed points.
inline bool in_xi_plus(const std::vector<Point>& exposed, const Window& w, const Point& t) {
  if (!w.contains_closed(t)) return false;
  for (std::size_t i = 0; i < exposed.size(); ++i) {
    for (std::size_t j = i + 1; j < exposed.size(); ++j) {
      const Point jn{std::max(exposed[i].x, exposed[j].x), std::max(exposed[i].y, exposed[j].y)};
      if (t.x > jn.x && t.y > jn.y) return false;
    }
  }
  return true;
}

// Lines straight from the definition: J(M_k) is the set of minimal pattern
// points in xi_{k-1}^+ \ xi_{k-1}, with xi_0 the axes and xi_0^+ the window.
inline std::vector<std::vector<Point>> brute_lines(const PointPattern& p) {
  const std::vector<Point> pts(p.points().begin(), p.points().end());
  std::vector<std::vector<Point>> lines;
  std::size_t assigned = 0;
  for (std::size_t k = 1; assigned < pts.size(); ++k) {
    const auto exposed = k == 1 ? std::vector<Point>{} : brute_exposed(pts, k - 1);
    std::vector<Point> band;
    for (const Point& q : pts) {
      const bool in_prev = k == 1 ? false : in_xi(p, k - 1, q);
      const bool in_prev_plus = k == 1 ? true : in_xi_plus(exposed, p.window(), q);
      if (in_prev_plus && !in_prev) band.push_back(q);
    }
    std::vector<Point> line;
    for (const Point& q : band) {
      bool minimal = true;
      for (const Point& r : band) {
        if (!(r == q) && r.x <= q.x && r.y <= q.y) minimal = false;
      }
      if (minimal) line.push_back(q);
    }
    std::sort(line.begin(), line.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
    assigned += line.size();
    lines.push_back(std::move(line));
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

// Midpoint rule for the integral of density over A_t intersected with the
// lower layer given by `inside`. Each axis is cut at the supplied
// breakpoints and every piece is split into cells no wider than
// extent / resolution, so piecewise-constant densities aligned with the
// breakpoints are integrated exactly.
inline double quadrature_mass(const std::function<double(const Point&)>& density,
                              const std::function<bool(const Point&)>& inside, const Point& t,
                              std::vector<double> x_breaks, std::vector<double> y_breaks, std::size_t resolution) {
  auto mesh = [&](std::vector<double> b, double top) {
    b.push_back(0.0);
    b.push_back(top);
    std::vector<double> kept;
    for (double v : b) {
      if (v >= 0.0 && v <= top) kept.push_back(v);
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    std::vector<double> out{0.0};
    for (std::size_t i = 1; i < kept.size(); ++i) {
      const double lo = kept[i - 1], hi = kept[i];
      const std::size_t pieces =
          std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / top * resolution)));
      for (std::size_t j = 1; j <= pieces; ++j) out.push_back(j == pieces ? hi : lo + (hi - lo) * j / pieces);
    }
    return out;
  };
  if (t.x <= 0.0 || t.y <= 0.0) return 0.0;
  const auto xs = mesh(std::move(x_breaks), t.x);
  const auto ys = mesh(std::move(y_breaks), t.y);
  double total = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    for (std::size_t j = 1; j < ys.size(); ++j) {
      const Point mid{0.5 * (xs[i - 1] + xs[i]), 0.5 * (ys[j - 1] + ys[j])};
      if (inside(mid)) total += density(mid) * (xs[i] - xs[i - 1]) * (ys[j] - ys[j - 1]);
    }
  }
  return total;
}

}  // namespace pcomp::oracle
