#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "polyrellich/dst.hpp"
#include "polyrellich/errors.hpp"
#include "polyrellich/gauss.hpp"
#include "polyrellich/pseudodistance.hpp"
#include "polyrellich/random.hpp"
#include "polyrellich/region.hpp"
#include "polyrellich/spherequad.hpp"

namespace polyrellich {

/// How samples continue past the grid ends. Compact: zero outside the
/// support. Odd: f(lo - s) = -f(lo + s) and likewise at hi, which keeps
/// functions such as sin(pi x) on (0,1) smooth under the sine transform.
enum class Extension { Compact, Odd };

/// Uniform samples x_j = lo + j h, j = 0..M, with an optional closed-form
/// evaluator used by the weighted quadratures.
class GridFunction {
 public:
  GridFunction(double lo, double hi, std::vector<double> samples, Extension ext = Extension::Compact,
               std::function<double(double)> exact = {}, std::vector<double> knots = {}, int boundary_order = 0)
      : lo_(lo), hi_(hi), samples_(std::move(samples)), ext_(ext), exact_(std::move(exact)), knots_(std::move(knots)),
        boundary_order_(boundary_order) {
    detail::require(lo < hi && std::isfinite(lo) && std::isfinite(hi), ErrorCode::InvalidArgument,
                    "GridFunction: need a finite interval lo < hi");
    detail::require(samples_.size() >= 9, ErrorCode::InvalidArgument, "GridFunction: need at least 9 samples");
    std::size_t first = samples_.size(), last = 0;
    for (std::size_t j = 0; j < samples_.size(); ++j)
      if (samples_[j] != 0.0) {
        first = std::min(first, j);
        last = j;
      }
    empty_ = first == samples_.size();
    if (!empty_) {
      // Closed support lies between the neighbouring zero samples.
      support_lo_ = first == 0 ? lo_ : x(first - 1);
      support_hi_ = last + 1 >= samples_.size() ? hi_ : x(last + 1);
    }
    if (ext_ == Extension::Compact && !empty_)
      detail::require(support_margin() >= 4.0 * spacing(), ErrorCode::SupportTooNarrow,
                      "GridFunction: support must stay at least 4h from both ends");
  }

  /// Samples `f` on M + 1 points of [lo, hi].
  static GridFunction sample(const std::function<double(double)>& f, double lo, double hi, int intervals,
                             Extension ext = Extension::Compact, std::vector<double> knots = {}, int boundary_order = 0) {
    detail::require(intervals >= 8, ErrorCode::InvalidArgument, "GridFunction: need at least 8 grid intervals");
    std::vector<double> s(static_cast<std::size_t>(intervals) + 1);
    const double h = (hi - lo) / intervals;
    for (int j = 0; j <= intervals; ++j) s[static_cast<std::size_t>(j)] = f(lo + j * h);
    if (ext == Extension::Odd) s.front() = s.back() = 0.0;
    return GridFunction(lo, hi, std::move(s), ext, f, std::move(knots), boundary_order);
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int intervals() const { return static_cast<int>(samples_.size()) - 1; }
  double spacing() const { return (hi_ - lo_) / intervals(); }
  double x(std::size_t j) const { return lo_ + static_cast<double>(j) * spacing(); }
  const std::vector<double>& samples() const { return samples_; }
  Extension extension() const { return ext_; }
  const std::vector<double>& knots() const { return knots_; }
  int boundary_order() const { return boundary_order_; }
  bool is_zero() const { return empty_; }
  double support_lo() const { return support_lo_; }
  double support_hi() const { return support_hi_; }

  /// Distance from the support to the grid ends (infinite for f = 0).
  double support_margin() const {
    if (empty_) return kInf;
    return std::min(support_lo_ - lo_, hi_ - support_hi_);
  }

  /// Sample with index j in Z, using the extension outside 0..M.
  double extended(long j) const {
    const long M = intervals();
    if (j >= 0 && j <= M) return samples_[static_cast<std::size_t>(j)];
    if (ext_ == Extension::Compact) return 0.0;
    // Odd reflection about both ends: period 2M.
    long r = ((j % (2 * M)) + 2 * M) % (2 * M);
    return r <= M ? samples_[static_cast<std::size_t>(r)] : -samples_[static_cast<std::size_t>(2 * M - r)];
  }

  /// Closed form when available, else degree-7 local Lagrange interpolation.
  double operator()(double xv) const {
    if (exact_) return exact_(xv);
    const double s = (xv - lo_) / spacing();
    const long base = static_cast<long>(std::floor(s)) - 3;
    double v = 0.0;
    for (long i = 0; i < 8; ++i) {
      double w = 1.0;
      for (long k = 0; k < 8; ++k)
        if (k != i) w *= (s - static_cast<double>(base + k)) / static_cast<double>(i - k);
      v += w * extended(base + i);
    }
    return v;
  }

 private:
  double lo_, hi_;
  std::vector<double> samples_;
  Extension ext_;
  std::function<double(double)> exact_;
  std::vector<double> knots_;
  int boundary_order_;
  bool empty_ = true;
  double support_lo_ = 0.0, support_hi_ = 0.0;
};

struct QuadraticForm {
  double spectral = 0.0;
  double finite_difference = 0.0;
};

namespace detail {

// Fourth-order central stencils for the first three derivatives.
inline const std::vector<double>& derivative_stencil(int m) {
  static const std::vector<double> d1{1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
  static const std::vector<double> d2{-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
  static const std::vector<double> d3{-1.0 / 8, 8.0 / 8, -13.0 / 8, 0.0, 13.0 / 8, -8.0 / 8, 1.0 / 8};
  return m == 1 ? d1 : m == 2 ? d2 : d3;
}

}  // namespace detail

/// int |f^{(m)}|^2 over the grid interval, from the sine series (DST-I) and
/// from fourth-order finite differences.
inline QuadraticForm qform_1d_detailed(const GridFunction& f, int m) {
  detail::require(m >= 1 && m <= 3, ErrorCode::InvalidArgument, "qform_1d: m must be 1, 2 or 3");
  if (f.is_zero()) return {0.0, 0.0};
  const double h = f.spacing();
  if (f.extension() == Extension::Compact)
    detail::require(f.support_margin() >= (m + 2) * h, ErrorCode::SupportTooNarrow,
                    "qform_1d: support margin below (m+2)h");
  const int M = f.intervals();
  const double len = f.hi() - f.lo();

  std::vector<double> interior(f.samples().begin() + 1, f.samples().end() - 1);
  const auto y = dst1(interior);
  QuadraticForm q;
  for (int k = 1; k < M; ++k) {
    const double b = y[static_cast<std::size_t>(k - 1)] / M;
    q.spectral += b * b * std::pow(k * M_PI / len, 2.0 * m);
  }
  q.spectral *= 0.5 * len;

  const auto& st = detail::derivative_stencil(m);
  const long half = static_cast<long>(st.size() / 2);
  const double scale = std::pow(h, -m);
  double fd = 0.0;
  for (long j = 0; j <= M; ++j) {
    double d = 0.0;
    for (long k = -half; k <= half; ++k) d += st[static_cast<std::size_t>(k + half)] * f.extended(j + k);
    d *= scale;
    fd += (j == 0 || j == M ? 0.5 : 1.0) * d * d;
  }
  q.finite_difference = fd * h;
  const double rel = std::abs(q.spectral - q.finite_difference) / std::max(std::abs(q.spectral), 1e-300);
  detail::require(rel <= 1e-4, ErrorCode::DifferentiationDisagreement,
                  "qform_1d: spectral and finite-difference values differ by " + std::to_string(rel) + " relative");
  return q;
}

inline double qform_1d(const GridFunction& f, int m) { return qform_1d_detailed(f, m).spectral; }

enum class Weight { InverseD, InverseAm };

namespace detail {

inline std::vector<Interval> interval_components(const Region& region) {
  require(region.dim() == 1, ErrorCode::DimensionMismatch, "expected a 1D region");
  auto list = as_intervals(region);
  return Region::merged_intervals(std::move(list)).as<IntervalUnion>()->intervals;
}

// Composite Gauss over [u, v], graded geometrically (ratio 1/2, 40 levels)
// toward both ends, with no panel wider than `hmax`.
template <class F>
double graded_integral(F&& f, double u, double v, double hmax) {
  const GaussRule& g = gauss_legendre(8);
  std::vector<double> cuts;
  const double half = 0.5 * (v - u);
  for (int j = 40; j >= 1; --j) cuts.push_back(u + half * std::ldexp(1.0, -j));
  cuts.push_back(u + half);
  for (int j = 1; j <= 40; ++j) cuts.push_back(v - half * std::ldexp(1.0, -j));
  cuts.insert(cuts.begin(), u);
  cuts.push_back(v);
  double total = 0.0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double a = cuts[c], b = cuts[c + 1];
    if (!(b > a)) continue;
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / hmax)));
    const double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + (p + 0.5) * w;
      double s = 0.0;
      for (std::size_t k = 0; k < g.nodes.size(); ++k) s += g.weights[k] * f(mid + 0.5 * w * g.nodes[k]);
      total += 0.5 * w * s;
    }
  }
  return total;
}

}  // namespace detail

/// int |f|^2 w over a 1D region with w = d^{-2m} or a_m^{-2m}, where in one
/// dimension a_m^{-2m} = ((x-a)^{-2m} + (b-x)^{-2m}) / 2 on a component (a,b).
inline double weighted_norm(const GridFunction& f, const Region& region, double m, Weight weight) {
  detail::require(m >= 1.0, ErrorCode::InvalidArgument, "weighted_norm: m must be >= 1");
  if (f.is_zero()) return 0.0;
  const auto comps = detail::interval_components(region);

  // Every nonzero sample must sit inside the region; only odd-extended
  // functions vanishing to order >= m may reach a boundary point.
  const bool may_touch = f.extension() == Extension::Odd && f.boundary_order() >= m;
  auto component_of = [&](double xv) -> const Interval* {
    for (const auto& iv : comps)
      if (iv.lo < xv && xv < iv.hi) return &iv;
    return nullptr;
  };
  for (std::size_t j = 0; j < f.samples().size(); ++j) {
    if (f.samples()[j] == 0.0) continue;
    const double xv = f.x(j);
    if (!component_of(xv))
      throw Error(ErrorCode::SupportTouchesBoundary, "weighted_norm: f is nonzero outside the region");
  }
  const double h = f.spacing();
  const SphericalRule rule = build_rule(1, default_resolution(m));
  double total = 0.0;
  for (const auto& iv : comps) {
    // Support of f within this component, bracketed by zero samples.
    long first = -1, last = -1;
    for (std::size_t j = 0; j < f.samples().size(); ++j)
      if (f.samples()[j] != 0.0 && f.x(j) > iv.lo && f.x(j) < iv.hi) {
        if (first < 0) first = static_cast<long>(j);
        last = static_cast<long>(j);
      }
    if (first < 0) continue;
    const double u = std::max(iv.lo, f.x(static_cast<std::size_t>(std::max(first - 1, 0L))));
    const double v = std::min(iv.hi, f.x(static_cast<std::size_t>(std::min<long>(last + 1, f.intervals()))));
    if (!may_touch)
      detail::require(u > iv.lo && v < iv.hi, ErrorCode::SupportTouchesBoundary,
                      "weighted_norm: support of f reaches the region boundary");
    std::vector<double> breaks{u, v};
    for (double k : f.knots())
      if (k > u && k < v) breaks.push_back(k);
    const double mid = 0.5 * (iv.lo + iv.hi);
    if (std::isfinite(mid) && mid > u && mid < v) breaks.push_back(mid);
    std::sort(breaks.begin(), breaks.end());
    auto integrand = [&](double xv) {
      const double fx = f(xv);
      if (fx == 0.0) return 0.0;
      const double dl = xv - iv.lo, dr = iv.hi - xv;
      double w;
      if (weight == Weight::InverseD)
        w = std::pow(std::min(dl, dr), -2.0 * m);
      else
        w = std::pow(pseudodistance(region, Point{xv}, m, rule), -2.0 * m);
      return fx * fx * w;
    };
    for (std::size_t b = 0; b + 1 < breaks.size(); ++b)
      total += detail::graded_integral(integrand, breaks[b], breaks[b + 1], 2.0 * h);
  }
  return total;
}

/// rho = (D^2 / 4^m) int |f|^2 w / int |f^{(m)}|^2; the inequality says rho <= 1.
inline double hardy_ratio_1d(const GridFunction& f, const Region& region, int m, Weight weight = Weight::InverseD) {
  const double q = qform_1d(f, m);
  detail::require(q > 0.0, ErrorCode::ZeroForm, "hardy_ratio_1d: quadratic form vanishes");
  const double d = odd_product(m);
  return d * d / std::pow(4.0, m) * weighted_norm(f, region, m, weight) / q;
}

/// Polynomial smoothstep of order n: 0 at u <= 0, 1 at u >= 1, with n
/// vanishing derivatives at both joins.
inline double smoothstep(double u, int n) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  double s = 0.0, binom_a = 1.0;  // C(n+k, k)
  for (int k = 0; k <= n; ++k) {
    double binom_b = 1.0;  // C(2n+1, n-k)
    for (int i = 0; i < n - k; ++i) binom_b = binom_b * (2 * n + 1 - i) / (i + 1);
    s += binom_a * binom_b * std::pow(-u, k);
    binom_a = binom_a * (n + k + 1) / (k + 1);
  }
  return s * std::pow(u, n + 1);
}

struct OptimalityParams {
  int m = 1;
  int n = 2;
  int order = 0;  // smoothstep order; 0 selects 2m + 1
};

/// Cutoff equal to 1 on [2/n, 1], 0 off [1/n, 2], with smoothstep joins.
inline double optimality_cutoff(double x, int n, int order) {
  const double u = 1.0 / n;
  if (x <= u || x >= 2.0) return 0.0;
  if (x < 2.0 * u) return smoothstep((x - u) / u, order);
  if (x <= 1.0) return 1.0;
  return smoothstep(2.0 - x, order);
}

/// g_n(x) = x^{m-1/2} phi_n(x) sampled on (0, 4).
inline GridFunction optimality_sequence(const OptimalityParams& p, int grid_size) {
  detail::require(p.m >= 1, ErrorCode::InvalidArgument, "optimality_sequence: m must be >= 1");
  detail::require(p.n >= 2, ErrorCode::InvalidArgument, "optimality_sequence: n must be >= 2");
  const double h = 4.0 / grid_size;
  detail::require(h <= 1.0 / (8.0 * p.n), ErrorCode::GridTooCoarse,
                  "optimality_sequence: grid spacing must be <= 1/(8n)");
  const int order = p.order > 0 ? p.order : 2 * p.m + 1;
  const int m = p.m, n = p.n;
  auto g = [m, n, order](double x) {
    const double c = optimality_cutoff(x, n, order);
    return c == 0.0 ? 0.0 : std::pow(x, m - 0.5) * c;
  };
  return GridFunction::sample(g, 0.0, 4.0, grid_size, Extension::Compact, {1.0 / n, 2.0 / n, 1.0, 2.0});
}

struct SharpnessRow {
  int n = 0;
  double weighted = 0.0;  // int g_n^2 / x^{2m}
  double form = 0.0;      // Q_m(g_n)
  double ratio = 0.0;     // (D^2/4^m) weighted / form
};

inline int sharpness_grid_size(int n) {
  int g = 256;
  while (g < 256 * n) g *= 2;
  return g;
}

inline SharpnessRow sharpness_row(int m, int n) {
  const auto g = optimality_sequence({m, n, 0}, sharpness_grid_size(n));
  const Region half_line = Region::intervals({{0.0, kInf}});
  SharpnessRow row;
  row.n = n;
  row.weighted = weighted_norm(g, half_line, m, Weight::InverseD);
  row.form = qform_1d(g, m);
  const double d = odd_product(m);
  row.ratio = d * d / std::pow(4.0, m) * row.weighted / row.form;
  return row;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

inline LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  detail::require(x.size() == y.size() && x.size() >= 2, ErrorCode::InvalidArgument, "least_squares: need 2+ points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

struct FuzzCase {
  Region region;
  GridFunction f;
};

/// Random superposition of 1-4 C-infinity bumps on (0,1), (a,b) or a
/// two-component interval union, seeded per case.
inline FuzzCase bump_fuzz_case(int m, std::uint64_t seed, std::uint64_t index, int intervals = 8192) {
  Rng rng = Rng::stream(seed, index);
  std::vector<Interval> comps;
  const auto kind = rng.below(3);
  if (kind == 0) {
    comps = {{0.0, 1.0}};
  } else if (kind == 1) {
    const double a = rng.uniform(-2.0, 2.0);
    comps = {{a, a + rng.uniform(0.2, 3.0)}};
  } else {
    const double gap = rng.uniform(0.02, 0.2);
    const double cut = rng.uniform(0.3, 0.7);
    comps = {{0.0, cut - 0.5 * gap}, {cut + 0.5 * gap, 1.0}};
  }
  const double lo = comps.front().lo, hi = comps.back().hi;
  const double h = (hi - lo) / intervals;
  struct Bump {
    double c, w, amp;
  };
  std::vector<Bump> bumps;
  const auto count = 1 + rng.below(4);
  for (std::uint64_t b = 0; b < count; ++b) {
    const Interval& iv = comps[rng.below(comps.size())];
    const double len = iv.hi - iv.lo;
    const double margin = (m + 6) * h;
    // widths scale with the whole grid so every bump spans >= 0.08 M grid cells
    const double w = std::min(rng.uniform(0.08, 0.3) * (hi - lo), 0.5 * len - margin);
    const double c = rng.uniform(iv.lo + margin + w, iv.hi - margin - w);
    bumps.push_back({c, w, rng.uniform(-1.0, 1.0)});
  }
  auto f = [bumps](double x) {
    double v = 0.0;
    for (const auto& b : bumps) {
      const double u = (x - b.c) / b.w;
      if (std::abs(u) < 1.0) v += b.amp * std::exp(1.0 - 1.0 / (1.0 - u * u));
    }
    return v;
  };
  return {Region::intervals(comps), GridFunction::sample(f, lo, hi, intervals)};
}

}  // namespace polyrellich
