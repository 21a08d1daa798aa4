#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "polyrellich/forms.hpp"

using namespace polyrellich;

namespace {

using Poly = std::vector<double>;  // coefficients in u, ascending

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(static_cast<double>(k) * p[k]);
  return d;
}

// int_{-1}^{1} p(u)^2 du, exactly.
double square_integral(const Poly& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if ((i + j) % 2 == 0) s += p[i] * p[j] * 2.0 / static_cast<double>(i + j + 1);
  return s;
}

// (1 - u^2)^K
Poly bump_poly(int K) {
  Poly p{1.0};
  for (int k = 0; k < K; ++k) {
    Poly q(p.size() + 2, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i] += p[i];
      q[i + 2] -= p[i];
    }
    p = q;
  }
  return p;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

GridFunction sine(int k, int intervals = 2048) {
  return GridFunction::sample([k](double x) { return std::sin(k * M_PI * x); }, 0.0, 1.0, intervals, Extension::Odd,
                              {}, 1);
}

}  // namespace

TEST(Forms, SineModesAreExact) {
  for (int m = 1; m <= 3; ++m)
    for (int k : {1, 3}) EXPECT_NEAR(qform_1d(sine(k), m) / (0.5 * std::pow(k * M_PI, 2 * m)), 1.0, 1e-12);
}

TEST(Forms, PolynomialBumpAgainstExactIntegral) {
  const int K = 9;
  const double c = 0.45, w = 0.3;
  const Poly p = bump_poly(K);
  auto f = [&](double x) {
    const double u = (x - c) / w;
    return std::abs(u) < 1.0 ? std::pow(1.0 - u * u, K) : 0.0;
  };
  const auto g = GridFunction::sample(f, 0.0, 1.0, 4096);
  for (int m = 1; m <= 3; ++m) {
    Poly d = p;
    for (int k = 0; k < m; ++k) d = derivative(d);
    const double want = square_integral(d) * std::pow(w, 1 - 2 * m);
    const auto q = qform_1d_detailed(g, m);
    EXPECT_NEAR(q.spectral / want, 1.0, 1e-6) << m;
    EXPECT_NEAR(q.finite_difference / want, 1.0, 1e-4) << m;
  }
}

TEST(Forms, WeightedNormsAgainstSimpson) {
  const Region unit = Region::intervals({{0.0, 1.0}});
  const auto s = sine(1);
  auto sinc2 = [](double x) { return x == 0.0 ? M_PI * M_PI : std::pow(std::sin(M_PI * x) / x, 2); };
  const double want_d = 2.0 * simpson(sinc2, 0.0, 0.5, 20000);
  EXPECT_NEAR(weighted_norm(s, unit, 1, Weight::InverseD), want_d, 1e-7 * want_d);
  // in one dimension a_m = d: both signs of s enter every directional distance
  EXPECT_NEAR(weighted_norm(s, unit, 1, Weight::InverseAm), want_d, 1e-7 * want_d);
  EXPECT_NEAR(hardy_ratio_1d(s, unit, 1), 0.25 * want_d / (M_PI * M_PI / 2.0), 1e-7);
}

TEST(Forms, HardyRatioBelowOneOnFuzz) {
  for (int m = 1; m <= 3; ++m)
    for (std::uint64_t i = 0; i < 25; ++i) {
      const auto fc = bump_fuzz_case(m, 123, i);
      EXPECT_LE(hardy_ratio_1d(fc.f, fc.region, m), 1.0);
      EXPECT_NEAR(hardy_ratio_1d(fc.f, fc.region, m, Weight::InverseAm), hardy_ratio_1d(fc.f, fc.region, m), 1e-12);
      const auto q = qform_1d_detailed(fc.f, m);
      EXPECT_NEAR(q.finite_difference / q.spectral, 1.0, 1e-4);
    }
}

TEST(Forms, FuzzCasesAreDeterministic) {
  const auto a = bump_fuzz_case(2, 9, 17), b = bump_fuzz_case(2, 9, 17);
  EXPECT_EQ(a.f.samples(), b.f.samples());
}

TEST(Forms, SmoothstepJoins) {
  for (int n : {1, 3, 5, 7}) {
    EXPECT_EQ(smoothstep(0.0, n), 0.0);
    EXPECT_EQ(smoothstep(1.0, n), 1.0);
    for (double u : {0.1, 0.37, 0.5, 0.8}) EXPECT_NEAR(smoothstep(u, n) + smoothstep(1.0 - u, n), 1.0, 1e-10);
    // n vanishing derivatives at 0: s(u) ~ C(2n+1, n) u^{n+1}
    double binom = 1.0;
    for (int i = 0; i < n; ++i) binom = binom * (2 * n + 1 - i) / (i + 1);
    EXPECT_NEAR(smoothstep(1e-4, n) / (binom * std::pow(1e-4, n + 1)), 1.0, 1e-2);
  }
}

TEST(Forms, SharpnessSequence) {
  double prev = 0.0;
  for (int n : {4, 16, 64}) {
    const auto row = sharpness_row(1, n);
    EXPECT_GT(row.ratio, prev);
    EXPECT_LE(row.ratio, 1.0);
    EXPECT_GE(row.weighted, std::log(n / 2.0));
    prev = row.ratio;
  }
  EXPECT_GT(sharpness_row(2, 16).ratio, 0.0);
  try {
    optimality_sequence({1, 64, 0}, 256);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridTooCoarse);
  }
}

TEST(Forms, LeastSquaresRecoversLine) {
  const auto fit = least_squares({1.0, 2.0, 3.0, 4.0}, {2.5, 4.5, 6.5, 8.5});
  EXPECT_NEAR(fit.slope, 2.0, 1e-14);
  EXPECT_NEAR(fit.intercept, 0.5, 1e-14);
}

TEST(Forms, ErrorCodes) {
  auto code = [](const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvariantViolation;
  };
  EXPECT_EQ(code([] { GridFunction::sample([](double x) { return x; }, 0.0, 1.0, 64); }), ErrorCode::SupportTooNarrow);
  const auto zero = GridFunction::sample([](double) { return 0.0; }, 0.0, 1.0, 64);
  EXPECT_EQ(code([&] { hardy_ratio_1d(zero, Region::intervals({{0.0, 1.0}}), 1); }), ErrorCode::ZeroForm);
  const auto bump = GridFunction::sample(
      [](double x) { return std::abs(x - 0.5) < 0.3 ? std::pow(1 - std::pow((x - 0.5) / 0.3, 2), 4) : 0.0; }, 0.0,
      1.0, 256);
  EXPECT_EQ(code([&] { weighted_norm(bump, Region::intervals({{0.3, 0.9}}), 1, Weight::InverseD); }),
            ErrorCode::SupportTouchesBoundary);
}
