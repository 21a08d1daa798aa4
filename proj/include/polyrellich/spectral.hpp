#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <set>
#include <vector>

#include "polyrellich/errors.hpp"
#include "polyrellich/spherequad.hpp"

namespace polyrellich {

/// Lowest eigenvalues of (-d^2/dx^2)^m on (0,1) with Dirichlet conditions
/// u = u' = ... = u^{(m-1)} = 0 at both ends.
struct EigTable {
  int m = 1;
  int count = 0;
  int basis_size = 0;
  std::vector<double> values;     // ascending
  std::vector<double> residuals;  // |lambda(basis) - lambda(basis/2)|
  double gram_condition = 1.0;
};

/// ((n pi)^{2m}, ((m+n-1) pi)^{2m}).
inline std::pair<double, double> eigenvalue_bounds(int m, int n) {
  detail::require(m >= 1 && n >= 1, ErrorCode::InvalidArgument, "eigenvalue_bounds: m, n must be >= 1");
  return {std::pow(n * M_PI, 2.0 * m), std::pow((m + n - 1) * M_PI, 2.0 * m)};
}

namespace detail {

// Trigonometric polynomial sum_k cos_k cos(k theta) + sin_k sin(k theta).
struct TrigPoly {
  std::vector<double> cos_coef, sin_coef;

  explicit TrigPoly(int max_freq) : cos_coef(static_cast<std::size_t>(max_freq) + 1), sin_coef(static_cast<std::size_t>(max_freq) + 1) {}

  void add_cos(int k, double v) { cos_coef[static_cast<std::size_t>(std::abs(k))] += v; }
  void add_sin(int k, double v) {
    if (k < 0) v = -v;
    sin_coef[static_cast<std::size_t>(std::abs(k))] += v;
  }

  TrigPoly times_sin() const {
    TrigPoly out(static_cast<int>(cos_coef.size()) - 1);
    const int top = static_cast<int>(cos_coef.size()) - 1;
    for (int k = 0; k <= top; ++k) {
      const double a = cos_coef[static_cast<std::size_t>(k)];
      const double b = sin_coef[static_cast<std::size_t>(k)];
      if (a != 0.0) {  // sin t cos kt = (sin(k+1)t - sin(k-1)t) / 2
        if (k + 1 <= top) out.add_sin(k + 1, 0.5 * a);
        out.add_sin(k - 1, -0.5 * a);
      }
      if (b != 0.0) {  // sin t sin kt = (cos(k-1)t - cos(k+1)t) / 2
        out.add_cos(k - 1, 0.5 * b);
        if (k + 1 <= top) out.add_cos(k + 1, -0.5 * b);
      }
    }
    return out;
  }
};

struct RitzResult {
  std::vector<double> values;
  double gram_condition;
};

// Rayleigh-Ritz on f_r = sin^{m-1}(pi x) sin(r pi x), r = 1..basis. Each f_r
// is expanded exactly in cos(k pi x) (m even) or sin(k pi x) (m odd), which
// are orthogonal on (0,1) and diagonalize the form int |f^{(m)}|^2.
inline RitzResult rayleigh_ritz(int m, int basis) {
  const int top = basis + m - 1;
  const bool use_cos = (m % 2 == 0);
  const int first = use_cos ? 0 : 1;
  const int freqs = top - first + 1;
  Eigen::MatrixXd bt(freqs, basis);  // (A W^{1/2})^T
  Eigen::VectorXd root_lambda(freqs);
  for (int k = first; k <= top; ++k) root_lambda(k - first) = std::pow(k * M_PI, m);
  for (int r = 1; r <= basis; ++r) {
    TrigPoly p(top);
    p.add_sin(r, 1.0);
    for (int j = 1; j < m; ++j) p = p.times_sin();
    for (int k = first; k <= top; ++k) {
      const double coef = use_cos ? p.cos_coef[static_cast<std::size_t>(k)] : p.sin_coef[static_cast<std::size_t>(k)];
      const double w = (use_cos && k == 0) ? 1.0 : 0.5;
      bt(k - first, r - 1) = coef * std::sqrt(w);
    }
  }
  // G = B B^T and K = B diag(lambda) B^T. With B^T = Q R the pencil reduces to
  // Q^T diag(lambda) Q, whose eigenvalues are the squared singular values of
  // diag(sqrt lambda) Q.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(bt);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(freqs, basis);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(basis).triangularView<Eigen::Upper>();
  const Eigen::VectorXd rs = Eigen::BDCSVD<Eigen::MatrixXd>(r).singularValues();
  const double cond = std::pow(rs(0) / rs(rs.size() - 1), 2);
  require(cond <= 1e12, ErrorCode::IllConditionedGram,
          "Gram matrix condition " + std::to_string(cond) + " exceeds 1e12; lower the basis size");
  const Eigen::MatrixXd y = root_lambda.asDiagonal() * q;
  Eigen::VectorXd s = Eigen::BDCSVD<Eigen::MatrixXd>(y).singularValues();
  std::vector<double> vals(static_cast<std::size_t>(s.size()));
  for (Eigen::Index i = 0; i < s.size(); ++i) vals[static_cast<std::size_t>(i)] = s(i) * s(i);
  std::sort(vals.begin(), vals.end());
  return {vals, cond};
}

}  // namespace detail

/// Rayleigh-Ritz eigenvalues with basis-halving residuals.
inline EigTable eigenvalues_1d(int m, int count, int basis_size) {
  detail::require(m >= 1 && m <= 3, ErrorCode::InvalidArgument, "eigenvalues_1d: m must be 1, 2 or 3");
  detail::require(count >= 1, ErrorCode::InvalidArgument, "eigenvalues_1d: count must be >= 1");
  detail::require(basis_size >= 4 * (count + m), ErrorCode::InvalidArgument,
                  "eigenvalues_1d: basis size must be at least 4*(count+m) = " + std::to_string(4 * (count + m)));
  const auto fine = detail::rayleigh_ritz(m, basis_size);
  const auto coarse = detail::rayleigh_ritz(m, basis_size / 2);
  EigTable t;
  t.m = m;
  t.count = count;
  t.basis_size = basis_size;
  t.gram_condition = fine.gram_condition;
  for (int n = 0; n < count; ++n) {
    const auto i = static_cast<std::size_t>(n);
    t.values.push_back(fine.values[i]);
    t.residuals.push_back(std::abs(coarse.values[i] - fine.values[i]));
  }
  for (std::size_t i = 1; i < t.values.size(); ++i)
    detail::require(t.values[i] > t.values[i - 1], ErrorCode::InvariantViolation,
                    "eigenvalues_1d: computed values are not strictly increasing");
  return t;
}

inline int default_basis_size(int m, int count) {
  const int need = 4 * (count + m);
  return need + (8 - need % 8) % 8;
}

/// Shared tables indexed by m, computed on first use.
inline const EigTable& interval_eigenvalues(int m) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<EigTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[m];
  if (!slot) {
    constexpr int kCount = 64;
    slot = std::make_unique<EigTable>(eigenvalues_1d(m, kCount, default_basis_size(m, kCount)));
  }
  return *slot;
}

struct SeparableEigenvalue {
  double value;
  std::vector<int> index;  // 1-based n_i
};

/// All mu = delta^{-2m} sum_i lambda_{m, n_i} <= cutoff in ascending order,
/// one entry per multi-index.
inline std::vector<SeparableEigenvalue> separable_eigenvalues(const EigTable& table, int dim, double delta,
                                                              double cutoff) {
  detail::require(dim >= 1 && dim <= 3, ErrorCode::UnsupportedDimension, "separable_eigenvalues: N in {1,2,3}");
  detail::require(delta > 0.0, ErrorCode::InvalidArgument, "separable_eigenvalues: delta must be positive");
  const double scale = std::pow(delta, -2.0 * table.m);
  auto value_of = [&](const std::vector<int>& idx) {
    double s = 0.0;
    for (int n : idx) s += table.values[static_cast<std::size_t>(n - 1)];
    return scale * s;
  };
  // Smallest possible mu once some index exceeds the table.
  auto beyond_table = [&](const std::vector<int>& idx) {
    double s = 0.0;
    for (int n : idx)
      s += n <= table.count ? table.values[static_cast<std::size_t>(n - 1)] : eigenvalue_bounds(table.m, n).first;
    return scale * s;
  };

  using Entry = std::pair<double, std::vector<int>>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::set<std::vector<int>> seen;
  std::vector<int> start(static_cast<std::size_t>(dim), 1);
  heap.push({value_of(start), start});
  seen.insert(start);
  std::vector<SeparableEigenvalue> out;
  while (!heap.empty()) {
    auto [v, idx] = heap.top();
    heap.pop();
    if (v > cutoff) break;
    out.push_back({v, idx});
    for (int i = 0; i < dim; ++i) {
      auto next = idx;
      ++next[static_cast<std::size_t>(i)];
      if (!seen.insert(next).second) continue;
      if (next[static_cast<std::size_t>(i)] > table.count) {
        if (beyond_table(next) <= cutoff)
          throw Error(ErrorCode::TableExhausted,
                      "separable_eigenvalues: 1D table of " + std::to_string(table.count) + " values is too short");
        continue;
      }
      heap.push({value_of(next), next});
    }
  }
  return out;
}

struct HeatTrace {
  double value = 0.0;
  double error = 0.0;  // bound on the truncation error
  int terms = 0;
};

namespace detail {

// sum_{n > M} exp(-(n pi)^{2m} t) <= e^{-a} e^{-b} / (1 - e^{-b}) from
// convexity of x^{2m}, with a = (M pi)^{2m} t and b = 2m pi (M pi)^{2m-1} t.
inline double heat_tail_bound(int m, double t, int M) {
  const double x = M * M_PI;
  const double a = std::pow(x, 2.0 * m) * t;
  const double b = 2.0 * m * M_PI * std::pow(x, 2.0 * m - 1.0) * t;
  return std::exp(-a) * std::exp(-b) / -std::expm1(-b);
}

}  // namespace detail

/// tr exp(-tH) for H = (-d^2/dx^2)^m on (0,1).
inline HeatTrace heat_trace_interval_detailed(int m, double t, double tol = 1e-14) {
  detail::require(t > 0.0 && std::isfinite(t), ErrorCode::InvalidArgument, "heat trace: t must be positive");
  detail::require(m >= 1 && m <= 3, ErrorCode::InvalidArgument, "heat trace: m must be 1, 2 or 3");
  HeatTrace h;
  if (m == 1) {
    if (t < 0.1) {
      // Poisson summation: sum_{n in Z} e^{-pi^2 n^2 t} = (pi t)^{-1/2} sum_{k in Z} e^{-k^2/t}.
      double theta = 1.0;
      for (int k = 1; k < 10; ++k) theta += 2.0 * std::exp(-k * k / t);
      h.value = 0.5 * (theta / std::sqrt(M_PI * t) - 1.0);
      h.error = 2.0 * std::exp(-100.0 / t) / std::sqrt(M_PI * t);
      h.terms = 10;
      return h;
    }
    int n = 1;
    for (;; ++n) {
      h.value += std::exp(-std::pow(n * M_PI, 2) * t);
      if (detail::heat_tail_bound(1, t, n) <= tol * h.value) break;
    }
    h.terms = n;
    h.error = detail::heat_tail_bound(1, t, n);
    return h;
  }
  const EigTable& table = interval_eigenvalues(m);
  constexpr int kMaxTerms = 400;
  int n = 1;
  for (;; ++n) {
    if (n <= table.count) {
      h.value += std::exp(-table.values[static_cast<std::size_t>(n - 1)] * t);
      h.error += std::exp(-table.values[static_cast<std::size_t>(n - 1)] * t) *
                 -std::expm1(-table.residuals[static_cast<std::size_t>(n - 1)] * t);
    } else {
      // Beyond the table only the enclosure of the eigenvalue is known.
      const auto [lo, hi] = eigenvalue_bounds(m, n);
      const double a = std::exp(-lo * t), b = std::exp(-hi * t);
      h.value += 0.5 * (a + b);
      h.error += 0.5 * (a - b);
    }
    const double tail = detail::heat_tail_bound(m, t, n);
    if (tail <= tol * h.value || n == kMaxTerms) {
      h.error += tail;
      break;
    }
  }
  h.terms = n;
  return h;
}

inline double heat_trace_interval(int m, double t, double tol = 1e-14) {
  return heat_trace_interval_detailed(m, t, tol).value;
}

struct SeriesValue {
  double value = 0.0;
  double error = 0.0;
};

/// sum_n lambda_{m,n}^{-gamma} on (0,1); requires 2 m gamma > 1.
inline SeriesValue resolvent_series(int m, double gamma) {
  detail::require(2.0 * m * gamma > 1.0, ErrorCode::GammaTooSmall, "resolvent series diverges for gamma <= 1/(2m)");
  const double s = 2.0 * m * gamma;
  if (m == 1) return {std::pow(M_PI, -s) * std::riemann_zeta(s), 0.0};
  const EigTable& table = interval_eigenvalues(m);
  SeriesValue out;
  for (int n = 1; n <= table.count; ++n) {
    const double lam = table.values[static_cast<std::size_t>(n - 1)];
    out.value += std::pow(lam, -gamma);
    out.error += std::pow(lam, -gamma) - std::pow(lam + table.residuals[static_cast<std::size_t>(n - 1)], -gamma);
  }
  // Tail from the eigenvalue enclosure, via Hurwitz-type zeta differences.
  const int M = table.count;
  double upper = std::riemann_zeta(s), lower = std::riemann_zeta(s);
  for (int n = 1; n <= M; ++n) upper -= std::pow(n, -s);      // sum_{n>M} n^{-s}
  for (int n = 1; n <= M + m - 1; ++n) lower -= std::pow(n, -s);  // sum_{n>M} (n+m-1)^{-s}
  upper *= std::pow(M_PI, -s);
  lower *= std::pow(M_PI, -s);
  out.value += 0.5 * (upper + lower);
  out.error += 0.5 * (upper - lower);
  return out;
}

struct SpectralGap {
  double crude = 0.0;
  double regular = 0.0;
};

/// crude = D^2 / (4^m r^{2m}) and regular = P D / (4^m (k r)^{2m}) for inradius r.
inline SpectralGap spectral_gap_bounds(double inradius, double m, int dim, double k_estimate) {
  detail::require(inradius > 0.0, ErrorCode::InvalidArgument, "spectral_gap_bounds: inradius must be positive");
  detail::require(k_estimate >= 1.0, ErrorCode::InvalidArgument, "spectral_gap_bounds: k must be >= 1");
  if (std::isinf(inradius)) return {0.0, 0.0};
  const auto c = hardy_constants(m, dim);
  const double r2m = std::pow(inradius, 2.0 * m);
  return {c.D * c.D / (std::pow(4.0, m) * r2m), c.A / (std::pow(k_estimate, 2.0 * m) * r2m)};
}

}  // namespace polyrellich
