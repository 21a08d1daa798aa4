#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

#include "polyrellich/spectral.hpp"

using namespace polyrellich;

namespace {

// n-th root of cos k cosh k = 1 (k > 0), by bisection on cos k - 1/cosh k in [n pi, (n+1) pi].
double beam_root(int n) {
  auto f = [](double k) { return std::cos(k) - 1.0 / std::cosh(k); };
  double lo = n * M_PI, hi = (n + 1) * M_PI;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    ((f(lo) < 0) == (f(mid) < 0) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// |det| of the boundary matrix for u^(6) = -k^6 u with u = u' = u'' = 0 at 0 and 1.
double sixth_order_det(double k) {
  Eigen::Matrix<std::complex<double>, 6, 6> M;
  for (int j = 0; j < 6; ++j) {
    const std::complex<double> r = k * std::polar(1.0, M_PI * (2 * j + 1) / 6.0);
    for (int p = 0; p < 3; ++p) {
      M(p, j) = std::pow(r, p);
      M(3 + p, j) = std::pow(r, p) * std::exp(r);
    }
  }
  return std::abs(M.determinant());
}

double golden_min(double (*f)(double), double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  for (int it = 0; it < 200; ++it) {
    if (f(c) < f(d)) b = d;
    else a = c;
    c = b - g * (b - a);
    d = a + g * (b - a);
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST(Spectral, LaplacianIsExact) {
  const auto t = eigenvalues_1d(1, 10, 128);
  for (int n = 1; n <= 10; ++n) EXPECT_NEAR(t.values[n - 1] / std::pow(n * M_PI, 2), 1.0, 1e-10);
}

TEST(Spectral, ClampedBeamMatchesRoots) {
  const auto t = eigenvalues_1d(2, 10, 256);
  for (int n = 1; n <= 10; ++n) {
    const double want = std::pow(beam_root(n), 4);
    EXPECT_NEAR(t.values[n - 1] / want, 1.0, 1e-5) << n;
    EXPECT_GE(t.values[n - 1], want * (1.0 - 1e-12));  // Rayleigh-Ritz is an upper bound
  }
  EXPECT_NEAR(t.values[0], 500.5639, 1e-3);
}

TEST(Spectral, SixthOrderGroundStateMinimisesDeterminant) {
  const auto t = eigenvalues_1d(3, 4, 256);
  const double k = golden_min(sixth_order_det, 6.0, 6.5);
  EXPECT_NEAR(t.values[0] / std::pow(k, 6), 1.0, 1e-5);
}

TEST(Spectral, SandwichAndMonotoneInBasis) {
  for (int m = 1; m <= 3; ++m) {
    const auto fine = eigenvalues_1d(m, 10, 256), coarse = eigenvalues_1d(m, 10, 128);
    for (int n = 1; n <= 10; ++n) {
      const auto [lo, hi] = eigenvalue_bounds(m, n);
      EXPECT_GE(fine.values[n - 1], lo - fine.residuals[n - 1]);
      EXPECT_LE(fine.values[n - 1], hi + fine.residuals[n - 1]);
      EXPECT_LE(fine.values[n - 1], coarse.values[n - 1] * (1.0 + 1e-12));
    }
    EXPECT_LT(fine.gram_condition, 1e12);
  }
}

TEST(Spectral, BasisTooSmallRejected) {
  EXPECT_THROW(eigenvalues_1d(2, 10, 20), Error);
  EXPECT_THROW(eigenvalues_1d(4, 3, 64), Error);
}

TEST(Spectral, HeatTraceLaplacianAgainstDirectSeries) {
  for (double t : {1e-4, 1e-3, 0.01, 0.1, 1.0}) {
    double direct = 0.0;
    for (int n = 1; n < 20000; ++n) direct += std::exp(-std::pow(n * M_PI, 2) * t);
    EXPECT_NEAR(heat_trace_interval(1, t) / direct, 1.0, 1e-12) << t;
  }
  EXPECT_NEAR(heat_trace_interval(1, 0.1), 0.3921430572, 1e-9);
}

TEST(Spectral, HeatTraceBeamAgainstRootSum) {
  for (double t : {1e-5, 1e-4, 1e-3})  {
    double direct = 0.0;
    for (int n = 1; n < 400; ++n) direct += std::exp(-std::pow(beam_root(n), 4) * t);
    const auto h = heat_trace_interval_detailed(2, t);
    EXPECT_NEAR(h.value, direct, 1e-5 * direct + h.error) << t;
  }
}

TEST(Spectral, ResolventSeries) {
  EXPECT_NEAR(resolvent_series(1, 1.0).value, 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(resolvent_series(1, 2.0).value, 1.0 / 90.0, 1e-15);
  // sum 1/lambda for the clamped beam = int_0^1 G(x,x) dx with G(x,x) = x^3 (1-x)^3 / 3
  const auto s = resolvent_series(2, 1.0);
  EXPECT_NEAR(s.value, 1.0 / 420.0, 1e-8 + s.error);
  EXPECT_THROW(resolvent_series(1, 0.5), Error);
}

TEST(Spectral, SeparableEnumerationMatchesBruteForce) {
  const auto t = eigenvalues_1d(1, 20, 128);
  for (int dim = 1; dim <= 3; ++dim) {
    const double cutoff = 400.0 * dim;
    const auto got = separable_eigenvalues(t, dim, 1.0, cutoff);
    std::vector<double> want;
    const int top = 20;
    for (int a = 1; a <= top; ++a)
      for (int b = 1; b <= (dim > 1 ? top : 1); ++b)
        for (int c = 1; c <= (dim > 2 ? top : 1); ++c) {
          double v = t.values[a - 1];
          if (dim > 1) v += t.values[b - 1];
          if (dim > 2) v += t.values[c - 1];
          if (v <= cutoff) want.push_back(v);
        }
    std::sort(want.begin(), want.end());
    ASSERT_EQ(got.size(), want.size()) << dim;
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i].value, want[i], 1e-9 * want[i]);
  }
  try {
    separable_eigenvalues(t, 1, 1.0, 1e6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TableExhausted);
  }
}
