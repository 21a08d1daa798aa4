#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "polyrellich/forms.hpp"
#include "polyrellich/pseudodistance.hpp"
#include "polyrellich/spectral.hpp"
#include "polyrellich/spherequad.hpp"
#include "polyrellich/tracebounds.hpp"
#include "polyrellich/whitney.hpp"

namespace polyrellich::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::string> details;
  double seconds = 0.0;  // console only; never written to reports
  double budget = 0.0;
};

struct Options {
  std::uint64_t seed = 0;
  bool quick = false;
};

namespace detail {

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

class Checker {
 public:
  explicit Checker(CriterionResult& r) : r_(r) {}
  void check(bool ok, const std::string& what) {
    if (!ok) all_ = false;
    r_.details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { r_.details.push_back("note " + what); }
  bool ok() const { return all_; }

 private:
  CriterionResult& r_;
  bool all_ = true;
};

// Smallest positive root of cos k cosh k = 1 beyond 0, by bisection on [4, 5].
inline double clamped_beam_root() {
  auto f = [](double k) { return std::cos(k) * std::cosh(k) - 1.0; };
  double lo = 4.0, hi = 5.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int depth = 50) {
  auto simpson = [&](double x0, double x1, double f0, double fm, double f1) {
    return (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
  };
  std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double x0, double x1, double f0, double fm, double f1, double whole, double eps, int d) {
        const double xm = 0.5 * (x0 + x1);
        const double fl = f(0.5 * (x0 + xm)), fr = f(0.5 * (xm + x1));
        const double left = simpson(x0, xm, f0, fl, fm), right = simpson(xm, x1, fm, fr, f1);
        if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
        return rec(x0, xm, f0, fl, fm, left, 0.5 * eps, d - 1) + rec(xm, x1, fm, fr, f1, right, 0.5 * eps, d - 1);
      };
  const double f0 = f(a), fm = f(0.5 * (a + b)), f1 = f(b);
  return rec(a, b, f0, fm, f1, simpson(a, b, f0, fm, f1), tol, depth);
}

// sup_x K(t,x,x) <= t^{-1/2m} e^{-1/2m} (2m-1)^{1/2m-1} / sin(pi/2m) in one
// dimension, from |f(x)|^2 <= (2 pi)^{-1} int (1 + eps xi^{2m})^{-1} dxi
// (||f||^2 + eps Q(f)) applied to f = exp(-tH/2) g and optimized over eps.
inline double sobolev_kernel_constant(int m) {
  const double q = 1.0 / (2.0 * m);
  return std::exp(-q) * std::pow(2.0 * m - 1.0, q - 1.0) / std::sin(M_PI * q);
}

}  // namespace detail

inline CriterionResult moment_constant(const Options& opt) {
  CriterionResult r{1, "moment constant", false, {}, 0, 1.0};
  detail::Checker c(r);
  Rng rng = Rng::stream(opt.seed, 101);
  double worst = 0.0;
  for (int m = 1; m <= 3; ++m)
    for (int dim = 1; dim <= 3; ++dim) {
      const auto rule = build_rule(dim, default_resolution(m));
      const double mc = hardy_constants(m, dim).moment_constant;
      for (int s = 0; s < 20; ++s) {
        Point xi = Point::zero(dim);
        for (int i = 0; i < dim; ++i) xi[i] = rng.uniform(-2.0, 2.0);
        if (s < dim) {
          xi = Point::zero(dim);
          xi[s] = 1.0;
        }
        const double want = mc * std::pow(norm(xi), 2 * m);
        worst = std::max(worst, std::abs(moment(rule, xi, m) - want) / want);
      }
    }
  c.check(worst <= 1e-10, "max relative moment error " + detail::sci(worst) + " <= 1e-10 over (m,N) in {1,2,3}^2");
  const double a12 = moment(build_rule(2, default_resolution(1)), Point{1.0, 0.0}, 1);
  const double a23 = moment(build_rule(3, default_resolution(2)), Point{0.0, 0.0, 1.0}, 2);
  c.check(std::abs(a12 - 0.5) <= 1e-10 * 0.5, "m=1 N=2 anchor " + detail::num(a12) + " = 1/2");
  c.check(std::abs(a23 - 0.2) <= 1e-10 * 0.2, "m=2 N=3 anchor " + detail::num(a23) + " = 1/5");
  r.pass = c.ok();
  return r;
}

inline CriterionResult half_space_pseudodistance(const Options& opt) {
  CriterionResult r{2, "half-space pseudodistance", false, {}, 0, 1.0};
  detail::Checker c(r);
  Rng rng = Rng::stream(opt.seed, 202);
  double worst = 0.0;
  for (int m = 1; m <= 2; ++m)
    for (int dim = 2; dim <= 3; ++dim) {
      const auto rule = build_rule(dim, default_resolution(m));
      const auto hc = hardy_constants(m, dim);
      const double factor = std::pow(hc.P / hc.D, 1.0 / (2.0 * m));
      for (int s = 0; s < 25; ++s) {
        Point n = Point::zero(dim);
        for (int i = 0; i < dim; ++i) n[i] = rng.uniform(-1.0, 1.0);
        if (s == 0) {
          n = Point::zero(dim);
          n[dim - 1] = 1.0;
        }
        const double off = rng.uniform(-1.0, 1.0);
        const Region h = Region::half_space(n, off);
        const auto& hs = *h.as<HalfSpace>();
        const double depth = std::pow(10.0, rng.uniform(-3.0, 2.0));
        Point x = Point::zero(dim);
        for (int i = 0; i < dim; ++i) x[i] = rng.uniform(-1.0, 1.0);
        const double shift = depth + hs.offset - dot(hs.normal, x);
        for (int i = 0; i < dim; ++i) x[i] += shift * hs.normal[i];
        const double d = distance(h, x);
        const double a = pseudodistance(h, x, m, rule);
        worst = std::max(worst, std::abs(a - factor * d) / (factor * d));
      }
    }
  c.check(worst <= 1e-8, "max relative error of a_m against d (P/D)^{1/2m}: " + detail::sci(worst) + " <= 1e-8");
  r.pass = c.ok();
  return r;
}

inline CriterionResult pointwise_comparisons(const Options& opt) {
  CriterionResult r{3, "pointwise comparisons", false, {}, 0, 30.0};
  detail::Checker c(r);
  struct Named {
    std::string name;
    Region region;
  };
  const std::vector<Named> regions{
      {"disk", Region::ball(Point{0.0, 0.0}, 1.0)},
      {"square", Region::box(Point{0.0, 0.0}, Point{1.0, 1.0})},
      {"box", Region::box(Point{0.0, 0.0}, Point{1.0, 3.0})},
  };
  const auto rule = build_rule(2, default_resolution(3));
  for (std::size_t k = 0; k < regions.size(); ++k) {
    const auto& reg = regions[k].region;
    const auto pts = sample_interior(reg, 10000, opt.seed + k);
    std::vector<std::array<double, 4>> vals(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
      vals[i][0] = distance(reg, pts[i]);
      for (int m = 1; m <= 3; ++m) vals[i][static_cast<std::size_t>(m)] = pseudodistance(reg, pts[i], m, rule);
    });
    std::size_t below_d = 0, not_monotone = 0, above_convex = 0;
    for (const auto& v : vals)
      for (int m = 1; m <= 3; ++m) {
        const double a = v[static_cast<std::size_t>(m)];
        const auto hc = hardy_constants(m, 2);
        if (a < v[0] * (1.0 - 1e-9)) ++below_d;
        if (m < 3 && v[static_cast<std::size_t>(m + 1)] > a * (1.0 + 1e-9)) ++not_monotone;
        if (a > std::pow(hc.P / hc.D, 1.0 / (2.0 * m)) * v[0] * (1.0 + 1e-9)) ++above_convex;
      }
    const std::string tag = regions[k].name + " (" + std::to_string(pts.size()) + " samples): ";
    c.check(below_d == 0, tag + std::to_string(below_d) + " violations of a_m >= d");
    c.check(not_monotone == 0, tag + std::to_string(not_monotone) + " violations of a_{m+1} <= a_m");
    c.check(above_convex == 0, tag + std::to_string(above_convex) + " violations of a_m <= (P/D)^{1/2m} d");
  }
  r.pass = c.ok();
  return r;
}

inline CriterionResult whitney_decomposition(const Options& opt) {
  CriterionResult r{4, "whitney decomposition", false, {}, 0, 30.0};
  detail::Checker c(r);
  const Region i03 = Region::intervals({{0.0, 3.0}});
  const auto d03 = decompose(i03);
  bool exact = d03.cubes.size() == 2 && d03.cubes[0].level == -1 && d03.cubes[0].index[0] == 0 &&
               d03.cubes[1].level == 0 && d03.cubes[1].index[0] == 2 && d03.residual_measure == 0.0 &&
               d03.collar.empty();
  c.check(exact, "(0,3) decomposes into (0,2) at level -1 and (2,3) at level 0 with zero residual");
  const auto v03 = verify_partition(d03, i03, 1000, opt.seed);
  c.check(v03.ok(), "(0,3) partition checks pass");

  const Region disk = Region::ball(Point{0.0, 0.0}, 1.0);
  const auto dec = decompose(disk, 8);
  const auto rep = verify_partition(dec, disk, 10000, opt.seed + 1);
  c.note("disk level cap 8: " + std::to_string(dec.cubes.size()) + " cubes, " + std::to_string(dec.collar.size()) +
         " collar cubes");
  c.check(rep.disjoint, "disk cubes pairwise disjoint (integer index test)");
  c.check(rep.coverage_failures == 0, "disk coverage: " + std::to_string(rep.coverage_failures) + " of " +
                                          std::to_string(rep.coverage_samples) + " samples outside cubes and collar");
  c.check(rep.distance_violations == 0, "disk d(x) <= 2 sqrt(N) side: " + std::to_string(rep.distance_violations) +
                                            " violations in " + std::to_string(rep.distance_samples) +
                                            " samples, max ratio " + detail::num(rep.max_distance_ratio));
  const auto gap = coverage_gap_estimate(dec, disk, opt.quick ? 400000 : 1000000, opt.seed + 2);
  c.check(std::abs(gap.value - dec.residual_measure) <= 3.0 * gap.sigma,
          "residual measure " + detail::num(dec.residual_measure) + " vs Monte Carlo gap " + detail::num(gap.value) +
              " +- " + detail::num(gap.sigma) + " (3 sigma)");
  const double collar = M_PI * (1.0 - std::pow(1.0 - std::ldexp(1.0, -8), 2));
  c.check(dec.residual_measure <= collar,
          "residual measure <= measure of the 2^-8 boundary collar " + detail::num(collar));
  r.pass = c.ok();
  return r;
}

inline CriterionResult eigenvalue_sandwich(const Options&) {
  CriterionResult r{5, "eigenvalue sandwich", false, {}, 0, 30.0};
  detail::Checker c(r);
  for (int m = 1; m <= 3; ++m) {
    const auto t = eigenvalues_1d(m, 10, 256);
    const auto t_half = eigenvalues_1d(m, 10, 128);
    std::size_t outside = 0, not_monotone = 0;
    for (int n = 1; n <= 10; ++n) {
      const auto i = static_cast<std::size_t>(n - 1);
      const auto [lo, hi] = eigenvalue_bounds(m, n);
      if (t.values[i] < lo - t.residuals[i] || t.values[i] > hi + t.residuals[i]) ++outside;
      if (t.values[i] > t_half.values[i]) ++not_monotone;
    }
    c.check(outside == 0, "m=" + std::to_string(m) + ": " + std::to_string(outside) +
                              " of 10 values outside [(n pi)^{2m}, ((m+n-1) pi)^{2m}] with residual slack");
    c.check(not_monotone == 0, "m=" + std::to_string(m) + ": values non-increasing from basis 128 to 256");
    if (m == 1) {
      double worst = 0.0;
      for (int n = 1; n <= 10; ++n) {
        const double want = std::pow(n * M_PI, 2);
        worst = std::max(worst, std::abs(t.values[static_cast<std::size_t>(n - 1)] - want) / want);
      }
      c.check(worst <= 1e-8, "m=1 max relative error against (n pi)^2: " + detail::sci(worst));
    }
    if (m == 2) {
      const double k = detail::clamped_beam_root();
      const double want = std::pow(k, 4);
      const double rel = std::abs(t.values[0] - want) / want;
      c.check(rel <= 1e-3, "m=2 ground value " + detail::num(t.values[0]) + " vs cos k cosh k = 1 root " +
                               detail::num(want) + ", relative " + detail::sci(rel));
    }
  }
  r.pass = c.ok();
  return r;
}

inline CriterionResult hardy_fuzz(const Options& opt) {
  CriterionResult r{6, "hardy-rellich fuzz", false, {}, 0, 60.0};
  detail::Checker c(r);
  for (int m = 1; m <= 3; ++m) {
    std::vector<double> rho(100);
    parallel_for(rho.size(), [&](std::size_t i) {
      const auto fc = bump_fuzz_case(m, opt.seed + 7, i);
      rho[i] = hardy_ratio_1d(fc.f, fc.region, m);
    });
    const double worst = *std::max_element(rho.begin(), rho.end());
    c.check(worst <= 1.0 + 1e-6,
            "m=" + std::to_string(m) + ": max ratio " + detail::num(worst) + " over 100 cases <= 1 + 1e-6");
  }
  const auto s = GridFunction::sample([](double x) { return std::sin(M_PI * x); }, 0.0, 1.0, 2048, Extension::Odd, {}, 1);
  const double rho = hardy_ratio_1d(s, Region::intervals({{0.0, 1.0}}), 1);
  const double integral = detail::adaptive_simpson(
      [](double u) { return u == 0.0 ? 1.0 : std::pow(std::sin(u) / u, 2); }, 0.0, M_PI / 2, 1e-13);
  const double oracle = 0.25 * (2.0 * M_PI * integral) / (M_PI * M_PI / 2.0);
  c.check(std::abs(rho - 0.387) <= 0.005 && std::abs(rho - oracle) <= 0.005,
          "sin(pi x), m=1: ratio " + detail::num(rho) + ", adaptive-quadrature oracle " + detail::num(oracle) +
              ", target 0.387 +- 0.005");
  r.pass = c.ok();
  return r;
}

inline CriterionResult sharpness(const Options&) {
  CriterionResult r{7, "sharpness sequence", false, {}, 0, 60.0};
  detail::Checker c(r);
  std::vector<SharpnessRow> rows;
  for (int n = 4; n <= 1024; n *= 2) rows.push_back(sharpness_row(1, n));
  bool monotone = true;
  for (std::size_t i = 1; i < rows.size(); ++i) monotone = monotone && rows[i].ratio >= rows[i - 1].ratio;
  std::string ratios;
  for (const auto& row : rows) ratios += (ratios.empty() ? "" : " ") + detail::num(row.ratio);
  c.check(monotone, "m=1 ratio nondecreasing over n = 4..1024: " + ratios);
  std::vector<double> ln_n, num, den;
  for (const auto& row : rows)
    if (row.n >= 64) {
      ln_n.push_back(std::log(row.n));
      num.push_back(row.weighted);
      den.push_back(row.form);
    }
  const auto fit_num = least_squares(ln_n, num);
  const auto fit_den = least_squares(ln_n, den);
  c.check(fit_num.slope >= 0.45 && fit_num.slope <= 0.55,
          "numerator int g_n^2 / x^2 slope vs ln n for n >= 64: " + detail::num(fit_num.slope) + " in [0.45, 0.55]");
  c.note("the numerator is bounded below by int_{2/n}^1 dx/x = ln(n/2), whose slope in ln n is 1");
  c.note("form Q_1(g_n) slope vs ln n: " + detail::num(fit_den.slope) + ", fitted additive constant " +
         detail::num(fit_den.intercept));
  r.pass = c.ok();
  return r;
}

inline CriterionResult trace_sandwich(const Options& opt) {
  CriterionResult r{8, "heat trace sandwich", false, {}, 0, 60.0};
  detail::Checker c(r);
  const Region unit = Region::intervals({{0.0, 1.0}});
  const auto dec = decompose(unit);
  const auto rule = build_rule(1, default_resolution(2));
  const std::size_t samples = opt.quick ? 20000 : 100000;
  for (int m = 1; m <= 2; ++m) {
    const auto tc = m == 1 ? trace_constants(1, 1) : trace_constants(m, 1, detail::sobolev_kernel_constant(m));
    if (m == 2) c.note("m=2 kernel constant " + detail::num(tc.kernel_constant) + " from the Sobolev diagonal bound");
    for (double t : {0.01, 0.1, 1.0}) {
      const auto lo = lower_trace_bound(unit, t, dec, tc);
      const auto hi = upper_trace_bound(unit, t, tc, rule, samples, opt.seed + static_cast<std::uint64_t>(m));
      const auto ex = heat_trace_interval_detailed(m, t);
      const bool ok = lo.value <= ex.value + ex.error + 3.0 * lo.error && ex.value - ex.error <= hi.value + hi.error;
      c.check(ok, "m=" + std::to_string(m) + " t=" + detail::num(t) + ": " + detail::num(lo.value) + " <= " +
                      detail::num(ex.value) + " <= " + detail::num(hi.value) + " (3 sigma " + detail::num(hi.error) + ")");
    }
  }
  const double exact = heat_trace_interval(1, 0.1);
  c.check(std::abs(exact - 0.39213) <= 1e-5, "m=1 t=0.1 trace " + detail::num(exact) + " within 1e-5 of 0.39213");
  double series = 0.0;
  for (int n = 1; n <= 40; ++n) series += std::exp(-std::pow(n * M_PI, 2) * 0.1);
  c.note("direct series sum_{n<=40} exp(-(n pi)^2 / 10) = " + detail::num(series));
  bool constants = true;
  for (int dim = 1; dim <= 3; ++dim) {
    const auto tc = trace_constants(1, dim);
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-14 * std::abs(b); };
    constants = constants && close(tc.c, 8.0 * M_PI * M_PI * dim * dim) && close(tc.c_prime, dim / 8.0) &&
                close(tc.b_prime, std::pow(2.0 * M_PI, -0.5 * dim));
    if (dim == 1) constants = constants && close(tc.b, 1.0 / std::sqrt(8.0 * M_PI));
  }
  c.check(constants, "m=1 constants: c = 8 pi^2 N^2, c' = N/8, b' = (2 pi)^{-N/2}, b(N=1) = (8 pi)^{-1/2}");
  r.pass = c.ok();
  return r;
}

inline CriterionResult resolvent_sandwich(const Options& opt) {
  CriterionResult r{9, "resolvent sandwich", false, {}, 0, 30.0};
  detail::Checker c(r);
  const Region unit = Region::intervals({{0.0, 1.0}});
  const auto dec = decompose(unit);
  const auto rule = build_rule(1, default_resolution(1));
  const auto tc = trace_constants(1, 1);
  const auto b = resolvent_trace_bounds(unit, 1.0, tc, dec, rule, opt.quick ? 20000 : 100000, opt.seed + 9);
  const double exact = resolvent_series(1, 1.0).value;
  c.check(std::abs(exact - 1.0 / 6.0) <= 1e-14, "pi^{-2} zeta(2) = " + detail::num(exact) + " = 1/6");
  c.check(b.lower.value <= exact + 3.0 * b.lower.error && exact <= b.upper.value + b.upper.error,
          "m=1 gamma=1: " + detail::num(b.lower.value) + " <= 1/6 <= " + detail::num(b.upper.value));
  const auto mellin = mellin_trace_integral(1, 1.0);
  c.check(mellin.relative_error <= 1e-5, "Mellin integral " + detail::num(mellin.integral) + " vs Gamma(1)/6, relative " +
                                             detail::sci(mellin.relative_error));
  r.pass = c.ok();
  return r;
}

using CriterionFn = CriterionResult (*)(const Options&);

inline const std::vector<CriterionFn>& numerical_criteria() {
  static const std::vector<CriterionFn> list{moment_constant,      half_space_pseudodistance, pointwise_comparisons,
                                             whitney_decomposition, eigenvalue_sandwich,      hardy_fuzz,
                                             sharpness,             trace_sandwich,           resolvent_sandwich};
  return list;
}

inline CriterionResult run_timed(CriterionFn fn, const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = fn(opt);
  } catch (const std::exception& e) {
    r.name = "aborted";
    r.pass = false;
    r.details.push_back(std::string("FAIL exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Text report of criteria results. Deterministic: no timings.
inline std::string format_report(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << "criterion " << r.id << " (" << r.name << "): " << (r.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& d : r.details) os << "  " << d << "\n";
  }
  return os.str();
}

inline std::vector<CriterionResult> run_numerical(const Options& opt) {
  std::vector<CriterionResult> out;
  const auto& list = numerical_criteria();
  for (std::size_t i = 0; i < list.size(); ++i) {
    auto r = run_timed(list[i], opt);
    r.id = static_cast<int>(i) + 1;
    if (r.budget > 0.0 && r.seconds >= r.budget) {
      r.pass = false;
      r.details.push_back("FAIL runtime budget exceeded");
    }
    out.push_back(std::move(r));
  }
  return out;
}

/// Criterion 10: the quick suite twice with the same seed must give
/// byte-identical reports.
inline CriterionResult determinism(const Options& opt, const std::string& first_report) {
  CriterionResult r{10, "determinism", false, {}, 0, 0.0};
  detail::Checker c(r);
  Options quick = opt;
  quick.quick = true;
  const std::string a = opt.quick ? first_report : format_report(run_numerical(quick));
  const std::string b = format_report(run_numerical(quick));
  c.check(a == b, "two quick runs with seed " + std::to_string(opt.seed) + " produce identical reports (" +
                      std::to_string(a.size()) + " bytes)");
  r.pass = c.ok();
  return r;
}

inline std::vector<CriterionResult> run_all(const Options& opt) {
  auto results = run_numerical(opt);
  const auto start = std::chrono::steady_clock::now();
  auto det = determinism(opt, format_report(results));
  det.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  results.push_back(std::move(det));
  return results;
}

}  // namespace polyrellich::acceptance
