#include <gtest/gtest.h>

#include <cmath>

#include "polyrellich/pseudodistance.hpp"
#include "polyrellich/spectral.hpp"

using namespace polyrellich;

TEST(Pseudodistance, DiskCentreSeesUnitDistanceEverywhere) {
  const Region disk = Region::ball({0.0, 0.0}, 1.0);
  for (int m = 1; m <= 3; ++m)
    EXPECT_NEAR(pseudodistance(disk, {0.0, 0.0}, m, build_rule(2, default_resolution(m))), 1.0, 1e-13);
}

TEST(Pseudodistance, HalfSpaceClosedForm) {
  for (int dim = 2; dim <= 3; ++dim)
    for (double m : {1.0, 1.5, 2.0}) {
      const Region h = Region::half_space(dim == 2 ? Point{0.0, 1.0} : Point{0.0, 0.0, 1.0}, 0.0);
      const Point x = dim == 2 ? Point{0.3, 0.7} : Point{0.3, -0.2, 0.7};
      const auto c = hardy_constants(m, dim);
      // |cos|^{2m} is smooth only for integer m; otherwise Gauss converges like res^-4
      const bool integer = m == std::floor(m);
      const auto rule = build_rule(dim, integer ? default_resolution(m) : 128);
      EXPECT_NEAR(pseudodistance(h, x, m, rule), 0.7 * std::pow(c.P / c.D, 1.0 / (2.0 * m)), integer ? 1e-9 : 1e-7);
    }
}

TEST(Pseudodistance, OneDimensionalEqualsDistance) {
  // S^0 = {+1, -1} and each directional distance already takes both signs
  const Region r = Region::intervals({{0.0, 1.0}, {2.0, 5.0}});
  for (int m = 1; m <= 3; ++m)
    for (double x : {0.2, 0.7, 3.1}) EXPECT_NEAR(pseudodistance(r, Point{x}, m, build_rule(1, 16)), distance(r, Point{x}), 1e-15);
}

TEST(Pseudodistance, ComparisonsOnSamples) {
  const Region square = Region::box({0.0, 0.0}, {1.0, 1.0});
  std::vector<std::vector<PseudoSample>> by_m;
  for (int m = 1; m <= 3; ++m) {
    const auto rule = build_rule(2, default_resolution(m));
    by_m.push_back(pseudodistance_samples(square, m, {2000, 5, std::nullopt}, rule));
    const auto rep = regularity_from_samples(square, m, by_m.back(), 5);
    EXPECT_GE(rep.min_ratio, 1.0 - 1e-9);
    EXPECT_LE(rep.k_estimate, rep.convex_bound * (1.0 + 1e-9));
  }
  for (std::size_t i = 0; i < by_m[0].size(); ++i) {
    EXPECT_LE(by_m[1][i].a, by_m[0][i].a * (1.0 + 1e-12));
    EXPECT_LE(by_m[2][i].a, by_m[1][i].a * (1.0 + 1e-12));
  }
}

TEST(Pseudodistance, SamplesAreSeedDeterministic) {
  const Region disk = Region::ball({0.0, 0.0}, 1.0);
  const auto rule = build_rule(2, 16);
  const auto a = pseudodistance_samples(disk, 2, {500, 9, std::nullopt}, rule);
  const auto b = pseudodistance_samples(disk, 2, {500, 9, std::nullopt}, rule);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].a, b[i].a);
    EXPECT_EQ(a[i].x[0], b[i].x[0]);
  }
}

TEST(Pseudodistance, UnboundedNeedsWindow) {
  const Region h = Region::half_space({0.0, 1.0}, 0.0);
  const auto rule = build_rule(2, 16);
  try {
    regularity_constant(h, 1, {100, 0, std::nullopt}, rule);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundedWithoutWindow);
  }
  const AxisBox window{{-1.0, -1.0}, {1.0, 1.0}};
  const auto rep = regularity_constant(h, 1, {200, 0, window}, rule);
  EXPECT_NEAR(rep.k_estimate, std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(rep.min_ratio, std::sqrt(2.0), 1e-9);
}

TEST(Pseudodistance, SpectralGapBoundsOrdering) {
  const auto g = spectral_gap_bounds(0.5, 1, 2, 1.0);
  EXPECT_NEAR(g.crude, 1.0, 1e-14);  // D^2 / (4 r^2) with D = 1
  EXPECT_NEAR(g.regular, 2.0, 1e-14);
}
