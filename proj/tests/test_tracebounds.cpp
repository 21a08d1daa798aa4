#include <gtest/gtest.h>

#include <cmath>

#include "polyrellich/spectral.hpp"
#include "polyrellich/tracebounds.hpp"

using namespace polyrellich;

TEST(TraceBounds, LaplacianConstants) {
  for (int n = 1; n <= 3; ++n) {
    const auto tc = trace_constants(1, n);
    EXPECT_NEAR(tc.c, 8.0 * M_PI * M_PI * n * n, 1e-10);
    EXPECT_NEAR(tc.c_prime, n / 8.0, 1e-15);
    EXPECT_NEAR(tc.b_prime, std::pow(2.0 * M_PI, -n / 2.0), 1e-15);
  }
  EXPECT_NEAR(trace_constants(1, 1).b, 1.0 / std::sqrt(8.0 * M_PI), 1e-15);
  try {
    trace_constants(2, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingKernelConstant);
  }
  EXPECT_NO_THROW(trace_constants(2, 2, 0.5));
}

TEST(TraceBounds, IntervalSandwich) {
  const Region unit = Region::intervals({{0.0, 1.0}});
  const auto tc = trace_constants(1, 1);
  const auto dec = decompose(unit);
  const auto rule = build_rule(1, 16);
  for (double t : {0.003, 0.03, 0.3}) {
    const double exact = heat_trace_interval(1, t);
    const auto lo = lower_trace_bound(unit, t, dec, tc);
    const auto hi = upper_trace_bound(unit, t, tc, rule, 50000, 3);
    EXPECT_LE(lo.value, exact) << t;
    EXPECT_LE(exact, hi.value + hi.error) << t;
  }
}

TEST(TraceBounds, LowerBoundOnIntervalAgainstQuadrature) {
  // 2 b t^{-1/2} int_0^{1/2} exp(-c t / x^2) dx by midpoint rule
  const Region unit = Region::intervals({{0.0, 1.0}});
  const auto tc = trace_constants(1, 1);
  const double t = 0.001;
  double s = 0.0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const double x = (k + 0.5) * 0.5 / n;
    s += std::exp(-tc.c * t / (x * x)) * 0.5 / n;
  }
  const double want = 2.0 * tc.b * std::pow(t, -0.5) * s;
  const auto got = lower_trace_bound(unit, t, decompose(unit), tc);
  EXPECT_NEAR(got.value, want, 1e-6 * want + got.error);
}

TEST(TraceBounds, DiskLaplacianAgainstWeyl) {
  // two-term Weyl: |Omega| / (4 pi t) - |boundary| / (8 sqrt(pi t))
  const Region disk = Region::ball({0.0, 0.0}, 1.0);
  const auto tc = trace_constants(1, 2);
  const double t = 1e-3;
  const double weyl = M_PI / (4.0 * M_PI * t) - 2.0 * M_PI / (8.0 * std::sqrt(M_PI * t));
  const auto lo = lower_trace_bound(disk, t, decompose(disk, 8), tc);
  const auto hi = upper_trace_bound(disk, t, tc, build_rule(2, 16), 40000, 1);
  EXPECT_LT(lo.value, weyl);
  EXPECT_GT(hi.value, weyl);
}

TEST(TraceBounds, ResolventContainsSeries) {
  const Region unit = Region::intervals({{0.0, 1.0}});
  const auto tc = trace_constants(1, 1);
  const auto b = resolvent_trace_bounds(unit, 1.0, tc, decompose(unit), build_rule(1, 16), 50000, 2);
  EXPECT_LE(b.lower.value, 1.0 / 6.0);
  EXPECT_GE(b.upper.value + b.upper.error, 1.0 / 6.0);
  EXPECT_THROW(resolvent_trace_bounds(unit, 0.5, tc, decompose(unit), build_rule(1, 16), 100, 2), Error);
}

TEST(TraceBounds, MellinIdentity) {
  for (double g : {0.75, 1.0, 2.0}) EXPECT_LT(mellin_trace_integral(1, g).relative_error, 1e-5) << g;
  EXPECT_LT(mellin_trace_integral(2, 1.0).relative_error, 1e-5);
}

TEST(TraceBounds, FiniteTraceCriterion) {
  const auto bounded = finite_trace_criterion(Region::intervals({{0.0, 1.0}}), 1, {0.1, 1.0}, 1.0);
  for (const auto& row : bounded) EXPECT_TRUE(row.finite);
  const auto half_line = finite_trace_criterion(Region::intervals({{0.0, kInf}}), 1, {0.1}, 1.0);
  EXPECT_FALSE(half_line.front().finite);
  // the upper chain uses a_m^{-2m} >= k^{-2m} d^{-2m}, so it dominates the exact trace
  const auto tc = trace_constants(1, 1);
  const auto rows = finite_trace_criterion(Region::intervals({{0.0, 1.0}}), 1, {0.01, 0.1}, 1.0, tc);
  for (const auto& row : rows) {
    ASSERT_TRUE(row.lower && row.upper);
    EXPECT_LE(*row.lower, heat_trace_interval(1, row.t));
    EXPECT_GE(*row.upper, heat_trace_interval(1, row.t));
  }
}
