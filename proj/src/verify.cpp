#include "pcomp/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "pcomp/errors.hpp"
#include "pcomp/random.hpp"

namespace pcomp {

namespace {

std::string fmt_point(const Point& p) {
  std::ostringstream out;
  out << "(" << p.x << "," << p.y << ")";
  return out.str();
}

const HazardMeasure& first_line_hazard(const PatternModel& model) {
  if (const auto* p = std::get_if<PoissonModel>(&model)) return p->hazard;
  if (const auto* l = std::get_if<SingleLineModel>(&model)) return l->hazard;
  throw UnsupportedModel("avoidance factorization needs a poisson or single_line model with a known hazard");
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

double Moments::variance() const {
  if (n < 2) return 0.0;
  const double nn = static_cast<double>(n);
  const double m = sum / nn;
  return std::max(0.0, (sum_sq - nn * m * m) / (nn - 1.0));
}

double Moments::std_error() const { return n ? std::sqrt(variance() / static_cast<double>(n)) : 0.0; }

MCReport z_report(std::string name, const Moments& m, double target, double sigma, std::uint64_t seed,
                  std::string note) {
  MCReport r;
  r.name = std::move(name);
  r.estimate = m.mean();
  r.std_error = m.std_error();
  r.target = target;
  r.n = m.n;
  r.sigma = sigma;
  r.seed = seed;
  r.note = std::move(note);
  if (m.n == 0) {
    r.verdict = Verdict::inconclusive;
  } else if (r.std_error > 0.0) {
    r.z = (r.estimate - target) / r.std_error;
    r.verdict = std::abs(r.z) <= sigma ? Verdict::pass : Verdict::fail;
  } else {
    const bool same = std::abs(r.estimate - target) <= 1e-12 * (1.0 + std::abs(target));
    r.verdict = same ? Verdict::pass : Verdict::fail;
  }
  return r;
}

void for_each_replicate(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  if (jobs == 1 || n < 2) {
    for (std::size_t r = 0; r < n; ++r) fn(r);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    constexpr std::size_t kChunk = 256;
    while (!failed.load()) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= n) return;
      const std::size_t end = std::min(n, begin + kChunk);
      try {
        for (std::size_t r = begin; r < end; ++r) fn(r);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

RegionRestriction::RegionRestriction(Kind kind, Point s, std::optional<Staircase> L, PointPattern restricted)
    : kind_(kind), s_(s), staircase_(std::move(L)), restricted_(std::move(restricted)) {}

RegionRestriction RegionRestriction::A(const PointPattern& pattern, const Point& s) {
  if (!pattern.window().contains_closed(s)) throw DomainError("restriction corner outside the window");
  std::vector<Point> kept;
  for (const Point& p : pattern.points()) {
    if (leq(p, s)) kept.push_back(p);
  }
  return {Kind::rectangle, s, std::nullopt, PointPattern(pattern.window(), std::move(kept))};
}

RegionRestriction RegionRestriction::D(const PointPattern& pattern, const Point& s) {
  if (!pattern.window().contains_closed(s)) throw DomainError("restriction corner outside the window");
  const Staircase L(pattern.window(), Antichain({s}));
  return {Kind::quadrant_complement, s, L, pattern.restrict_to(L)};
}

RegionRestriction RegionRestriction::in(const PointPattern& pattern, const Staircase& L) {
  if (!(pattern.window() == L.window())) throw DomainError("restriction staircase window differs from the pattern");
  return {Kind::staircase, {}, L, pattern.restrict_to(L)};
}

bool RegionRestriction::region_contains(const Point& p) const {
  if (kind_ == Kind::rectangle) return restricted_.window().contains_closed(p) && leq(p, s_);
  return staircase_->contains(p);
}

std::size_t RegionRestriction::count_in(const Point& lo, const Point& hi) const {
  if (!leq(lo, hi)) throw DomainError("count_in: lo <= hi violated");
  if (!region_contains(hi)) {
    throw MeasurabilityViolation("functional reads the box up to " + fmt_point(hi) + " outside its region");
  }
  return rectangle_increment(restricted_, lo, hi);
}

RegionRestriction RegionRestriction::restrict_again() const {
  switch (kind_) {
    case Kind::rectangle: return A(restricted_, s_);
    case Kind::quadrant_complement: return D(restricted_, s_);
    case Kind::staircase: return in(restricted_, *staircase_);
  }
  return *this;
}

TestFunctional::TestFunctional(std::string id, double bound, Fn fn)
    : id_(std::move(id)), bound_(bound), fn_(std::move(fn)) {}

TestFunctional TestFunctional::constant(double c) {
  std::ostringstream id;
  id << "const(" << c << ")";
  return TestFunctional(id.str(), std::abs(c), [c](const RegionRestriction&) { return c; });
}

TestFunctional TestFunctional::zero_indicator(const Cell& cell) {
  return TestFunctional("zero" + fmt_point(cell.lo) + fmt_point(cell.hi), 1.0, [cell](const RegionRestriction& r) {
    return r.count_in(cell.lo, cell.hi) == 0 ? 1.0 : 0.0;
  });
}

TestFunctional TestFunctional::capped_count(const Cell& cell, std::size_t cap) {
  return TestFunctional("count" + fmt_point(cell.lo) + fmt_point(cell.hi) + "^" + std::to_string(cap),
                        static_cast<double>(cap), [cell, cap](const RegionRestriction& r) {
                          return static_cast<double>(std::min(cap, r.count_in(cell.lo, cell.hi)));
                        });
}

TestFunctional TestFunctional::product(const Cell& a, const Cell& b) {
  return TestFunctional("zero" + fmt_point(a.lo) + fmt_point(a.hi) + "*zero" + fmt_point(b.lo) + fmt_point(b.hi),
                        1.0, [a, b](const RegionRestriction& r) {
                          return (r.count_in(a.lo, a.hi) == 0 && r.count_in(b.lo, b.hi) == 0) ? 1.0 : 0.0;
                        });
}

double TestFunctional::operator()(const RegionRestriction& r) const {
  const double v = fn_(r);
  if (!(std::abs(v) <= bound_)) throw InvariantViolation("functional " + id_ + " exceeded its declared bound");
  return v;
}

std::vector<TestFunctional> default_functionals(const Window& window, const Point& s) {
  if (!window.contains_open(s)) throw DomainError("default_functionals: s must be interior");
  const Point origin{0.0, 0.0};
  const Cell square{origin, s};
  const Cell left{{0.0, s.y}, {s.x, window.y_max}};
  const Cell bottom{{s.x, 0.0}, {window.x_max, s.y}};
  const Cell quarter{origin, {0.5 * s.x, 0.5 * s.y}};
  const Cell column{origin, {s.x, window.y_max}};
  return {
      TestFunctional::constant(1.0),
      TestFunctional::zero_indicator(square),
      TestFunctional::capped_count(square, 3),
      TestFunctional::zero_indicator(left),
      TestFunctional::zero_indicator(bottom),
      TestFunctional::capped_count(left, 2),
      TestFunctional::capped_count(bottom, 2),
      TestFunctional::product(left, bottom),
      TestFunctional::zero_indicator(quarter),
      TestFunctional::capped_count(column, 3),
  };
}

MCReport test_avoidance_factorization(const PatternModel& model, const Point& s, const Point& t,
                                      const RunOptions& opt, double target_scale) {
  if (!incomparable(s, t)) throw DomainError("avoidance factorization needs incomparable s and t");
  const HazardMeasure& h = first_line_hazard(model);
  if (!h.window().contains_closed(s) || !h.window().contains_closed(t)) {
    throw DomainError("avoidance factorization: s or t outside the window");
  }
  const double target = target_scale * avoidance_from_hazard(h, s) * avoidance_from_hazard(h, t) /
                        avoidance_from_hazard(h, meet(s, t));

  std::vector<double> hits(opt.n);
  for_each_replicate(opt.n, opt.jobs, [&](std::size_t r) {
    Rng rng = make_stream(opt.seed, r);
    const PatternSample sample = sample_pattern(model, rng);
    hits[r] = (count(sample.pattern, s) == 0 && count(sample.pattern, t) == 0) ? 1.0 : 0.0;
  });
  Moments m;
  for (double v : hits) m.add(v);
  std::string note;
  if (target_scale != 1.0) note = "target_scale=" + std::to_string(target_scale);
  return z_report("avoidance_factorization s=" + fmt_point(s) + " t=" + fmt_point(t), m, target, opt.sigma,
                  opt.seed, note);
}

std::vector<MCReport> test_strong_martingale(const PatternModel& model, const Point& s, const Point& t,
                                             const std::vector<TestFunctional>& functionals, const RunOptions& opt,
                                             double compensator_scale) {
  if (!leq(s, t)) throw DomainError("strong martingale test needs s <= t");
  const Window window = model_window(model);
  if (!window.contains_closed(s) || !window.contains_closed(t)) {
    throw DomainError("strong martingale test: s or t outside the window");
  }
  const std::size_t nf = functionals.size();
  std::vector<double> products(opt.n * nf);
  for_each_replicate(opt.n, opt.jobs, [&](std::size_t r) {
    Rng rng = make_stream(opt.seed, r);
    const PatternSample sample = sample_pattern(model, rng);
    const auto provider = provider_for(model, sample);
    const StageGeometry stages(sample.pattern);
    const double x = static_cast<double>(rectangle_increment(sample.pattern, s, t)) -
                     compensator_scale * star_compensator_increment(stages, *provider, s, t);
    const RegionRestriction past = RegionRestriction::D(sample.pattern, s);
    for (std::size_t i = 0; i < nf; ++i) products[r * nf + i] = functionals[i](past) * x;
  });
  std::string note = "model=" + model_kind(model);
  if (compensator_scale != 1.0) note += " compensator_scale=" + std::to_string(compensator_scale);
  std::vector<MCReport> reports;
  for (std::size_t i = 0; i < nf; ++i) {
    Moments m;
    for (std::size_t r = 0; r < opt.n; ++r) m.add(products[r * nf + i]);
    reports.push_back(z_report("strong_martingale Z=" + functionals[i].id() + " s=" + fmt_point(s) +
                                   " t=" + fmt_point(t),
                               m, 0.0, opt.sigma, opt.seed, note));
  }
  return reports;
}

MCReport test_f4_diagnostic(const PatternModel& model, const Point& t, const RunOptions& opt, const F4Options& f4) {
  const Window window = model_window(model);
  if (!window.contains_open(t)) throw DomainError("f4 diagnostic needs t interior to the window");
  const ScaleMixtureDriver* mixture = nullptr;
  if (f4.reveal_driver) {
    const auto* cox = std::get_if<CoxModel>(&model);
    if (cox) mixture = std::get_if<ScaleMixtureDriver>(&cox->driver);
    if (!mixture) throw UnsupportedModel("revealed-driver f4 strata are defined for scale-mixture cox models only");
    if (f4.driver_bins == 0) throw ConfigurationError("f4 diagnostic: driver_bins must be positive");
  }

  struct Draw {
    std::size_t count = 0;
    std::size_t bin = 0;
    double u = 0.0;
    double v = 0.0;
  };
  std::vector<Draw> draws(opt.n);
  const Point top_lo{0.0, t.y}, top_hi{t.x, window.y_max};
  const Point right_lo{t.x, 0.0}, right_hi{window.x_max, t.y};
  for_each_replicate(opt.n, opt.jobs, [&](std::size_t r) {
    Rng rng = make_stream(opt.seed, r);
    const PatternSample sample = sample_pattern(model, rng);
    Draw d;
    d.count = count(sample.pattern, t);
    d.u = static_cast<double>(std::min(f4.cap, rectangle_increment(sample.pattern, top_lo, top_hi)));
    d.v = static_cast<double>(std::min(f4.cap, rectangle_increment(sample.pattern, right_lo, right_hi)));
    if (mixture) {
      const double q = mixture->w.cdf(sample.driver->values.at(0));
      d.bin = std::min(f4.driver_bins - 1, static_cast<std::size_t>(q * static_cast<double>(f4.driver_bins)));
    }
    draws[r] = d;
  });

  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<double, double>>> strata;
  for (const Draw& d : draws) strata[{d.count, d.bin}].emplace_back(d.u, d.v);

  std::size_t used = 0, kept = 0, dropped = 0;
  for (const auto& [key, obs] : strata) {
    if (obs.size() >= f4.min_stratum) {
      used += obs.size();
      ++kept;
    } else {
      ++dropped;
    }
  }
  std::ostringstream note;
  note << "strata_used=" << kept << " strata_dropped=" << dropped << " cap=" << f4.cap
       << (f4.reveal_driver ? " driver=revealed" : " driver=hidden");

  MCReport rep;
  rep.name = "f4_diagnostic t=" + fmt_point(t);
  rep.n = used;
  rep.sigma = opt.sigma;
  rep.seed = opt.seed;
  rep.target = 0.0;
  if (used == 0) {
    rep.verdict = Verdict::inconclusive;
    rep.note = note.str() + " no stratum reached the minimum occupancy";
    return rep;
  }
  double estimate = 0.0, variance = 0.0;
  for (const auto& [key, obs] : strata) {
    if (obs.size() < f4.min_stratum) continue;
    const double nc = static_cast<double>(obs.size());
    double mu = 0.0, mv = 0.0;
    for (const auto& [u, v] : obs) {
      mu += u;
      mv += v;
    }
    mu /= nc;
    mv /= nc;
    Moments prod;
    for (const auto& [u, v] : obs) prod.add((u - mu) * (v - mv));
    const double cov = prod.sum / (nc - 1.0);
    const double w = nc / static_cast<double>(used);
    estimate += w * cov;
    variance += w * w * prod.variance() / nc;
  }
  rep.estimate = estimate;
  rep.std_error = std::sqrt(variance);
  rep.note = note.str();
  if (rep.std_error > 0.0) {
    rep.z = estimate / rep.std_error;
    rep.verdict = std::abs(rep.z) <= opt.sigma ? Verdict::pass : Verdict::fail;
  } else {
    rep.verdict = std::abs(estimate) <= 1e-12 ? Verdict::pass : Verdict::fail;
  }
  return rep;
}

MCReport test_line_avoidance(const PatternModel& model, std::size_t k, const Point& t, const RunOptions& opt,
                             double hazard_scale) {
  if (k == 0) throw DomainError("line avoidance: k must be at least 1");
  const Window window = model_window(model);
  if (!window.contains_closed(t)) throw DomainError("line avoidance: t outside the window");
  std::vector<double> diffs(opt.n);
  for_each_replicate(opt.n, opt.jobs, [&](std::size_t r) {
    Rng rng = make_stream(opt.seed, r);
    const PatternSample sample = sample_pattern(model, rng);
    const auto provider = provider_for(model, sample);
    const SingleLineDecomposition d = decompose(sample.pattern);
    bool empty = true;
    if (k <= d.lines.size()) {
      for (const Point& p : d.lines[k - 1].points()) empty &= !leq(p, t);
    }
    double lambda = 0.0;
    if (k - 1 < d.xi.size()) {
      lambda = provider->conditional_mass(k, d.xi[k - 1], d.xi_plus[k - 1], t, Staircase::whole(window));
    }
    diffs[r] = (empty ? 1.0 : 0.0) - std::exp(-hazard_scale * lambda);
  });
  Moments m;
  for (double v : diffs) m.add(v);
  std::string note = "model=" + model_kind(model);
  if (hazard_scale != 1.0) note += " hazard_scale=" + std::to_string(hazard_scale);
  return z_report("line_avoidance k=" + std::to_string(k) + " t=" + fmt_point(t), m, 0.0, opt.sigma, opt.seed, note);
}

MCReport test_poisson_reconstruction(const PatternModel& model, std::span<const Point> grid, const RunOptions& opt,
                                     double tolerance) {
  if (std::holds_alternative<SingleLineModel>(model)) {
    throw UnsupportedModel("reconstruction identity holds for poisson and cox models only");
  }
  std::vector<double> worst(opt.n, 0.0);
  for_each_replicate(opt.n, opt.jobs, [&](std::size_t r) {
    Rng rng = make_stream(opt.seed, r);
    const PatternSample sample = sample_pattern(model, rng);
    const HazardMeasure& target =
        sample.driver ? sample.driver->measure : std::get<PoissonModel>(model).hazard;
    const auto provider = provider_for(model, sample);
    const StageGeometry stages(sample.pattern);
    double w = 0.0;
    for (const Point& g : grid) {
      w = std::max(w, std::abs(star_compensator(stages, *provider, g).value - target.mass(g)));
    }
    worst[r] = w;
  });
  MCReport rep;
  rep.name = "reconstruction model=" + model_kind(model);
  rep.estimate = opt.n ? *std::max_element(worst.begin(), worst.end()) : 0.0;
  rep.target = 0.0;
  rep.n = opt.n * grid.size();
  rep.seed = opt.seed;
  rep.verdict = rep.estimate < tolerance ? Verdict::pass : Verdict::fail;
  std::ostringstream note;
  note << "max_abs_error tolerance=" << tolerance << " realizations=" << opt.n << " grid_points=" << grid.size();
  rep.note = note.str();
  return rep;
}

MCReport test_single_jump_mean(const SingleJump1D& model, double t, const RunOptions& opt, double target_scale) {
  if (t < 0.0) throw DomainError("single jump mean: t must be nonnegative");
  std::vector<double> values(opt.n);
  const auto cdf = [&](double u) { return model.law.cdf(u); };
  for_each_replicate(opt.n, opt.jobs, [&](std::size_t r) {
    Rng rng = make_stream(opt.seed, r);
    values[r] = compensator_1d_single_jump(cdf, sample_single_jump(model, rng), t);
  });
  Moments m;
  for (double v : values) m.add(v);
  std::ostringstream name;
  name << "single_jump_mean_1d law=" << model.law.name() << " t=" << t;
  std::string note;
  if (target_scale != 1.0) note = "target_scale=" + std::to_string(target_scale);
  return z_report(name.str(), m, target_scale * model.law.cdf(t), opt.sigma, opt.seed, note);
}

MCReport test_single_jump_mean(const SingleJump2D& model, const Point& t, CompensatorMode mode,
                               const RunOptions& opt, double target_scale) {
  if (!leq({0.0, 0.0}, t)) throw DomainError("single jump mean: t must lie in the quadrant");
  std::vector<double> values(opt.n);
  for_each_replicate(opt.n, opt.jobs, [&](std::size_t r) {
    Rng rng = make_stream(opt.seed, r);
    values[r] = compensator_2d_single_jump(model, sample_single_jump(model, rng), t, mode);
  });
  Moments m;
  for (double v : values) m.add(v);
  std::string note = mode == CompensatorMode::star ? "mode=star" : "mode=weak";
  if (target_scale != 1.0) note += " target_scale=" + std::to_string(target_scale);
  return z_report("single_jump_mean_2d t=" + fmt_point(t), m, target_scale * model.dist.cdf(t), opt.sigma, opt.seed,
                  note);
}

}  // namespace pcomp
