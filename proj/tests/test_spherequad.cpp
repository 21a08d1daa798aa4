#include <gtest/gtest.h>

#include <cmath>

#include "polyrellich/random.hpp"
#include "polyrellich/spherequad.hpp"

using namespace polyrellich;

namespace {

// Monte Carlo average of (w . xi)^{2m} over the unit sphere, Gaussian directions.
double mc_moment(int dim, const Point& xi, int m, std::size_t n) {
  Rng rng(7);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    Point w = Point::zero(dim);
    double r2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      // Box-Muller
      const double g = std::sqrt(-2.0 * std::log(rng.uniform_open())) * std::cos(2.0 * M_PI * rng.uniform());
      w[i] = g;
      r2 += g * g;
    }
    sum += std::pow(dot(w, xi) / std::sqrt(r2), 2 * m);
  }
  return sum / static_cast<double>(n);
}

}  // namespace

TEST(SphereQuad, WeightsSumToOneAndNodesUnit) {
  for (int dim = 1; dim <= 3; ++dim) {
    const auto rule = build_rule(dim, 16);
    double s = 0.0;
    for (double w : rule.weights) s += w;
    EXPECT_NEAR(s, 1.0, 1e-14);
    for (const auto& n : rule.nodes) EXPECT_NEAR(norm(n.vector()), 1.0, 1e-14);
  }
}

TEST(SphereQuad, MomentMatchesMonteCarlo) {
  const Point xi2{0.6, -0.8}, xi3{1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0};
  for (int m = 1; m <= 3; ++m) {
    EXPECT_NEAR(moment(build_rule(2, default_resolution(m)), xi2, m), mc_moment(2, xi2, m, 400000), 5e-3);
    EXPECT_NEAR(moment(build_rule(3, default_resolution(m)), xi3, m), mc_moment(3, xi3, m, 400000), 5e-3);
  }
}

TEST(SphereQuad, MomentConstantAnchors) {
  EXPECT_NEAR(hardy_constants(1, 2).moment_constant, 0.5, 1e-15);
  EXPECT_NEAR(hardy_constants(2, 3).moment_constant, 0.2, 1e-15);
  const auto rule = build_rule(3, default_resolution(2));
  EXPECT_NEAR(moment(rule, Point{0.0, 0.0, 2.0}, 2), 0.2 * 16.0, 1e-12);
}

TEST(SphereQuad, ProductsAgreeWithGammaForm) {
  // D(m) = (2m-1)!!, P(N,m) = N (N+2) ... (N+2m-2)
  EXPECT_DOUBLE_EQ(odd_product(3), 15.0);
  EXPECT_DOUBLE_EQ(shifted_even_product(3, 2), 15.0);
  EXPECT_DOUBLE_EQ(shifted_even_product(2, 3), 48.0);
  for (double m : {1.0, 2.0, 3.0}) {
    EXPECT_NEAR(odd_product(m + 1e-13), odd_product(m), 1e-9 * odd_product(m));
    for (int n = 1; n <= 3; ++n)
      EXPECT_NEAR(shifted_even_product(n, m + 1e-13), shifted_even_product(n, m), 1e-9 * shifted_even_product(n, m));
  }
  const auto c = hardy_constants(1.5, 2);
  EXPECT_NEAR(c.D, std::pow(2.0, 1.5) * std::tgamma(2.0) / std::tgamma(0.5), 1e-12);
  EXPECT_NEAR(c.A, c.P * c.D / std::pow(4.0, 1.5), 1e-12);
}
