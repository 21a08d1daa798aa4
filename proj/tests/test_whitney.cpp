#include <gtest/gtest.h>

#include <cmath>

#include "polyrellich/whitney.hpp"

using namespace polyrellich;

TEST(Whitney, CubeArithmetic) {
  const DyadicCube c{2, {3, -1, 0}, 2};
  EXPECT_DOUBLE_EQ(c.side(), 0.25);
  EXPECT_DOUBLE_EQ(c.lower(1), -0.25);
  EXPECT_EQ(c.ancestor(1), (DyadicCube{1, {1, -1, 0}, 2}));
  EXPECT_TRUE(cubes_overlap(c, c.ancestor(2)));
  EXPECT_TRUE(cubes_overlap(c.child(3), c));
  EXPECT_FALSE(cubes_overlap(c.child(0), c.child(1)));
}

TEST(Whitney, IntervalZeroThree) {
  const auto dec = decompose(Region::intervals({{0.0, 3.0}}));
  ASSERT_EQ(dec.cubes.size(), 2u);
  EXPECT_EQ(dec.cubes[0].level, -1);
  EXPECT_EQ(dec.cubes[0].index[0], 0);
  EXPECT_EQ(dec.cubes[1].level, 0);
  EXPECT_EQ(dec.cubes[1].index[0], 2);
  EXPECT_TRUE(dec.collar.empty());
  EXPECT_EQ(dec.residual_measure, 0.0);
}

TEST(Whitney, DiskPartitionInvariants) {
  const Region disk = Region::ball({0.0, 0.0}, 1.0);
  const auto dec = decompose(disk, 6);
  // brute-force pairwise disjointness
  for (std::size_t i = 0; i < dec.cubes.size(); ++i)
    for (std::size_t j = i + 1; j < dec.cubes.size(); ++j) ASSERT_FALSE(cubes_overlap(dec.cubes[i], dec.cubes[j]));
  double vol = 0.0;
  for (const auto& c : dec.cubes) {
    vol += c.volume();
    // every corner inside the closed disk
    for (int k = 0; k < 4; ++k) {
      const double x = (k & 1) ? c.upper(0) : c.lower(0), y = (k & 2) ? c.upper(1) : c.lower(1);
      EXPECT_LE(x * x + y * y, 1.0 + 1e-12);
    }
  }
  EXPECT_NEAR(vol + dec.residual_measure, M_PI, 1e-12);
  const auto rep = verify_partition(dec, disk, 5000, 1);
  EXPECT_TRUE(rep.ok());
  EXPECT_LE(rep.max_distance_ratio, 1.0);
}

TEST(Whitney, ResidualMatchesMonteCarlo) {
  const Region disk = Region::ball({0.0, 0.0}, 1.0);
  const auto dec = decompose(disk, 7);
  const auto gap = coverage_gap_estimate(dec, disk, 400000, 2);
  EXPECT_NEAR(dec.residual_measure, gap.value, 4.0 * gap.sigma);
}

TEST(Whitney, CubesAreMaximal) {
  const Region box = Region::box({0.0, 0.0}, {1.0, 3.0});
  const auto& bx = *box.as<AxisBox>();
  const auto dec = decompose(box, 6);
  for (const auto& c : dec.cubes) {
    if (c.level == dec.coarsest_level) continue;
    const auto p = c.ancestor(1).box();
    bool inside = true;
    for (int i = 0; i < 2; ++i) inside = inside && p.lower[i] >= bx.lower[i] && p.upper[i] <= bx.upper[i];
    EXPECT_FALSE(inside) << "level " << c.level;
  }
}

TEST(Whitney, IntegrateOverCubesIsExactForPolynomials) {
  const auto dec = decompose(Region::box({0.0, 0.0}, {1.0, 3.0}), 5);
  const auto r = integrate_over_cubes(dec, [](const Point& x) { return x[0] * x[0] + x[1]; });
  double want = 0.0;
  for (const auto& c : dec.cubes) {
    const double a = c.lower(0), b = c.upper(0), y0 = c.lower(1), y1 = c.upper(1);
    want += (b * b * b - a * a * a) / 3.0 * (y1 - y0) + (b - a) * (y1 * y1 - y0 * y0) / 2.0;
  }
  EXPECT_NEAR(r.value, want, 1e-12);
}

TEST(Whitney, ErrorsOnUnboundedAndBudget) {
  try {
    decompose(Region::half_space({0.0, 1.0}, 0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfiniteInradius);
  }
  try {
    decompose(Region::ball({0.0, 0.0}, 1.0), 12, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CubeBudgetExceeded);
  }
}

TEST(Whitney, BallInThreeDimensions) {
  const Region ball = Region::ball({0.0, 0.0, 0.0}, 1.0);
  const auto dec = decompose(ball, 4);
  double vol = 0.0;
  for (const auto& c : dec.cubes) vol += c.volume();
  EXPECT_NEAR(vol + dec.residual_measure, 4.0 * M_PI / 3.0, 1e-12);
  EXPECT_TRUE(verify_partition(dec, ball, 3000, 4).ok());
}
