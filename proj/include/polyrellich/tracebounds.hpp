#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "polyrellich/errors.hpp"
#include "polyrellich/forms.hpp"
#include "polyrellich/pseudodistance.hpp"
#include "polyrellich/sampling.hpp"
#include "polyrellich/spectral.hpp"
#include "polyrellich/spherequad.hpp"
#include "polyrellich/whitney.hpp"

namespace polyrellich {

/// Constants of the two-sided heat trace bound
///   b t^{-N/2m} int exp(-c t d^{-2m}) <= tr e^{-tH} <= b' t^{-N/2m} int exp(-c' t a_m^{-2m}).
struct TraceConstants {
  int m = 1;
  int dim = 1;
  double b = 0.0;
  double c = 0.0;
  double b_prime = 0.0;
  double c_prime = 0.0;
  double kernel_constant = 0.0;  // sup_x K(t,x,x) t^{N/2m}
};

namespace detail {

inline void require_close(double got, double want, const char* what) {
  require(std::abs(got - want) <= 1e-13 * std::abs(want), ErrorCode::InvariantViolation,
          std::string("m = 1 constant ") + what + " differs from its closed form");
}

}  // namespace detail

/// b = b_{m,1}^N N^{-N(m-1)/2m} with b_{m,1} = 2^{1/2m} Gamma(1 + 1/2m) / (2 pi),
/// c = (4 m N pi)^{2m} / 2, c' = 2^{-2m-1} P D, b' = 2^{N/2m} kernel_constant.
/// The kernel constant defaults to the Gaussian value (4 pi)^{-N/2} for m = 1
/// and must be supplied otherwise.
inline TraceConstants trace_constants(int m, int dim, std::optional<double> kernel_constant = std::nullopt) {
  detail::require(m >= 1 && dim >= 1, ErrorCode::InvalidArgument, "trace_constants: m, N must be >= 1");
  if (!kernel_constant) {
    detail::require(m == 1, ErrorCode::MissingKernelConstant,
                    "trace_constants: a heat kernel constant must be supplied for m >= 2");
    kernel_constant = std::pow(4.0 * M_PI, -0.5 * dim);
  }
  detail::require(*kernel_constant > 0.0 && std::isfinite(*kernel_constant), ErrorCode::InvalidArgument,
                  "trace_constants: kernel constant must be positive");
  const double q = 1.0 / (2.0 * m);
  const auto hc = hardy_constants(m, dim);
  TraceConstants tc;
  tc.m = m;
  tc.dim = dim;
  const double b1 = std::pow(2.0, q) * std::tgamma(1.0 + q) / (2.0 * M_PI);
  tc.b = std::pow(b1, dim) * std::pow(static_cast<double>(dim), -dim * (m - 1) * q);
  tc.c = 0.5 * std::pow(4.0 * m * dim * M_PI, 2.0 * m);
  tc.c_prime = std::pow(2.0, -2.0 * m - 1.0) * hc.P * hc.D;
  tc.kernel_constant = *kernel_constant;
  tc.b_prime = std::pow(2.0, dim * q) * *kernel_constant;
  if (m == 1) {
    detail::require_close(tc.b, std::pow(8.0 * M_PI, -0.5 * dim), "b");
    detail::require_close(tc.c, 8.0 * M_PI * M_PI * dim * dim, "c");
    detail::require_close(tc.c_prime, dim / 8.0, "c'");
    if (*kernel_constant == std::pow(4.0 * M_PI, -0.5 * dim))
      detail::require_close(tc.b_prime, std::pow(2.0 * M_PI, -0.5 * dim), "b'");
  }
  return tc;
}

struct BoundValue {
  double value = 0.0;
  double error = 0.0;  // quadrature error estimate, or 3 sigma for Monte Carlo
};

struct TraceReport {
  double t = 0.0;
  BoundValue lower;
  BoundValue upper;
  std::optional<double> exact;
};

/// b t^{-N/2m} int exp(-c t d^{-2m}) over the cubes of `dec`; the collar
/// contributes zero, which keeps the value a lower bound.
inline BoundValue lower_trace_bound(const Region& region, double t, const Decomposition& dec,
                                    const TraceConstants& tc) {
  detail::require(t > 0.0, ErrorCode::InvalidArgument, "lower_trace_bound: t must be positive");
  detail::require(is_bounded(region), ErrorCode::InfiniteInradius, "lower_trace_bound: region is unbounded");
  const double m2 = 2.0 * tc.m;
  const auto r = integrate_over_cubes(dec, [&](const Point& x) {
    const double d = distance(region, x);
    return std::exp(-tc.c * t * std::pow(d, -m2));
  });
  const double pre = tc.b * std::pow(t, -tc.dim / m2);
  return {pre * r.value, pre * r.error};
}

/// b' t^{-N/2m} int exp(-c' t a_m^{-2m}) by seeded Monte Carlo.
inline BoundValue upper_trace_bound(const Region& region, double t, const TraceConstants& tc,
                                    const SphericalRule& rule, std::size_t samples, std::uint64_t seed) {
  detail::require(t > 0.0, ErrorCode::InvalidArgument, "upper_trace_bound: t must be positive");
  const double m2 = 2.0 * tc.m;
  const auto mc = integrate_monte_carlo(
      region,
      [&](const Point& x) {
        const double a = pseudodistance(region, x, tc.m, rule);
        return std::exp(-tc.c_prime * t * std::pow(a, -m2));
      },
      samples, seed);
  const double pre = tc.b_prime * std::pow(t, -tc.dim / m2);
  return {pre * mc.value, 3.0 * pre * mc.sigma};
}

struct ResolventBounds {
  double gamma = 0.0;
  BoundValue lower;
  BoundValue upper;
};

/// Bounds on tr H^{-gamma} from integrating the heat trace bounds against
/// t^{gamma-1} / Gamma(gamma):
///   lower = b c^{N/2m - gamma} Gamma(gamma - N/2m) int d^{2m gamma - N} / Gamma(gamma),
///   upper = b' c'^{N/2m - gamma} Gamma(gamma - N/2m) int a_m^{2m gamma - N} / Gamma(gamma).
inline ResolventBounds resolvent_trace_bounds(const Region& region, double gamma, const TraceConstants& tc,
                                              const Decomposition& dec, const SphericalRule& rule,
                                              std::size_t samples, std::uint64_t seed) {
  const double shift = tc.dim / (2.0 * tc.m);
  detail::require(gamma > shift, ErrorCode::GammaTooSmall,
                  "resolvent_trace_bounds: gamma must exceed N/2m = " + std::to_string(shift));
  const double p = 2.0 * tc.m * gamma - tc.dim;
  const double g = std::tgamma(gamma - shift) / std::tgamma(gamma);
  const auto lo = integrate_over_cubes(dec, [&](const Point& x) { return std::pow(distance(region, x), p); });
  const auto hi = integrate_monte_carlo(
      region, [&](const Point& x) { return std::pow(pseudodistance(region, x, tc.m, rule), p); }, samples, seed);
  ResolventBounds out;
  out.gamma = gamma;
  const double pl = tc.b * std::pow(tc.c, shift - gamma) * g;
  const double pu = tc.b_prime * std::pow(tc.c_prime, shift - gamma) * g;
  out.lower = {pl * lo.value, pl * lo.error};
  out.upper = {pu * hi.value, 3.0 * pu * hi.sigma};
  return out;
}

namespace detail {

// int_Omega exp(-s d^{-2m}): per component in 1D, over Whitney cubes
// otherwise. The second value bounds the error, including the collar.
inline BoundValue boundary_decay_integral(const Region& region, double m, double s, const Decomposition* dec) {
  if (region.dim() == 1) {
    BoundValue out;
    for (const auto& iv : interval_components(region)) {
      if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) return {kInf, 0.0};
      const double half = 0.5 * (iv.hi - iv.lo);
      auto f = [&](double u) { return std::exp(-s * std::pow(u, -2.0 * m)); };
      const double fine = graded_integral(f, 0.0, half, half / 64.0);
      const double coarse = graded_integral(f, 0.0, half, half / 32.0);
      out.value += 2.0 * fine;
      out.error += 2.0 * std::abs(fine - coarse);
    }
    return out;
  }
  if (!is_bounded(region)) return {kInf, 0.0};
  require(dec != nullptr, ErrorCode::InvalidArgument, "a decomposition is required for N >= 2");
  const auto r = integrate_over_cubes(*dec, [&](const Point& x) {
    return std::exp(-s * std::pow(distance(region, x), -2.0 * m));
  });
  const double collar_d = std::sqrt(static_cast<double>(region.dim())) * std::ldexp(1.0, -dec->level_cap);
  return {r.value, r.error + dec->residual_measure * std::exp(-s * std::pow(collar_d, -2.0 * m))};
}

}  // namespace detail

struct FiniteTraceRow {
  double t = 0.0;
  BoundValue integral;  // int exp(-t d^{-2m})
  bool finite = false;
  std::optional<double> lower;  // b t^{-N/2m} int exp(-c t d^{-2m})
  std::optional<double> upper;  // b' t^{-N/2m} int exp(-c' k^{-2m} t d^{-2m})
};

/// Finite-trace diagnostic on a grid of t: the trace of exp(-tH) is finite
/// iff int exp(-t d^{-2m}) is, given a_m <= k d. With constants, also the
/// bound chain obtained from a_m^{-2m} >= k^{-2m} d^{-2m}.
inline std::vector<FiniteTraceRow> finite_trace_criterion(const Region& region, int m, const std::vector<double>& t_grid,
                                                          double k_estimate,
                                                          const std::optional<TraceConstants>& tc = std::nullopt,
                                                          int level_cap = 10) {
  detail::require(!t_grid.empty(), ErrorCode::InvalidArgument, "finite_trace_criterion: empty t grid");
  for (double t : t_grid)
    detail::require(t > 0.0 && std::isfinite(t), ErrorCode::InvalidArgument,
                    "finite_trace_criterion: every t must be positive");
  detail::require(k_estimate >= 1.0, ErrorCode::InvalidArgument, "finite_trace_criterion: k must be >= 1");
  std::optional<Decomposition> dec;
  if (region.dim() > 1 && is_bounded(region)) dec = decompose(region, level_cap);
  const Decomposition* dp = dec ? &*dec : nullptr;
  std::vector<FiniteTraceRow> rows;
  for (double t : t_grid) {
    FiniteTraceRow row;
    row.t = t;
    row.integral = detail::boundary_decay_integral(region, m, t, dp);
    row.finite = std::isfinite(row.integral.value);
    if (tc) {
      const double pre = std::pow(t, -tc->dim / (2.0 * m));
      row.lower = tc->b * pre * detail::boundary_decay_integral(region, m, tc->c * t, dp).value;
      row.upper = tc->b_prime * pre *
                  detail::boundary_decay_integral(region, m, tc->c_prime * std::pow(k_estimate, -2.0 * m) * t, dp).value;
    }
    rows.push_back(row);
  }
  return rows;
}

struct MellinCheck {
  double gamma = 0.0;
  double integral = 0.0;  // int_0^inf t^{gamma-1} tr e^{-tH} dt
  double expected = 0.0;  // Gamma(gamma) sum lambda^{-gamma}
  double relative_error = 0.0;
};

/// Integrates t^{gamma-1} heat_trace_interval(m, t) in u = ln t over
/// [t_min, t_max]; below t_min the leading Weyl term Gamma(1+1/2m) t^{-1/2m} / pi
/// is integrated in closed form.
inline MellinCheck mellin_trace_integral(int m, double gamma, double t_min = 1e-10) {
  const double q = 1.0 / (2.0 * m);
  detail::require(gamma > q, ErrorCode::GammaTooSmall, "mellin_trace_integral: gamma must exceed 1/(2m)");
  const double lambda1 = m == 1 ? M_PI * M_PI : interval_eigenvalues(m).values.front();
  const double t_max = (80.0 + 10.0 * gamma) / lambda1;
  const double u0 = std::log(t_min), u1 = std::log(t_max);
  const int panels = static_cast<int>(std::ceil((u1 - u0) / 0.25));
  const double weyl = std::tgamma(1.0 + q) / M_PI;
  MellinCheck out;
  out.gamma = gamma;
  out.integral = integrate_panels(
      [&](double u) {
        const double t = std::exp(u);
        return std::pow(t, gamma) * heat_trace_interval(m, t);
      },
      u0, u1, panels, 16);
  out.integral += weyl * std::pow(t_min, gamma - q) / (gamma - q);
  out.expected = std::tgamma(gamma) * resolvent_series(m, gamma).value;
  out.relative_error = std::abs(out.integral - out.expected) / out.expected;
  return out;
}

}  // namespace polyrellich
