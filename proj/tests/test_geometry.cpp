#include <gtest/gtest.h>

#include <cmath>

#include "polyrellich/random.hpp"
#include "polyrellich/region.hpp"

using namespace polyrellich;

namespace {

// Ray march then bisect: smallest s > 0 with x + s w outside, capped at `far`.
double march(const Region& r, const Point& x, const Point& w, double far = 50.0) {
  double step = 1e-3, s = 0.0;
  while (s < far && contains(r, x + w * (s + step))) s += step;
  if (s >= far) return kInf;
  double lo = s, hi = s + step;
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    (contains(r, x + w * mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double brute_directional(const Region& r, const Point& x, const Point& w) {
  return std::min(march(r, x, w), march(r, x, w * -1.0));
}

// Distance to the boundary of ball(0,1) U box((0.5,-0.4),(2,0.4)) from dense
// samples of the exposed parts of both boundaries.
double brute_union_distance(const Point& x) {
  const Region disk = Region::ball({0.0, 0.0}, 1.0), box = Region::box({0.5, -0.4}, {2.0, 0.4});
  double best = kInf;
  const int n = 400000;
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * M_PI * k / n;
    const Point p{std::cos(th), std::sin(th)};
    if (!contains(box, p)) best = std::min(best, norm(p - x));
  }
  const Point corners[4] = {{0.5, -0.4}, {2.0, -0.4}, {2.0, 0.4}, {0.5, 0.4}};
  for (int e = 0; e < 4; ++e)
    for (int k = 0; k <= n / 4; ++k) {
      const Point p = corners[e] + (corners[(e + 1) % 4] - corners[e]) * (4.0 * k / n);
      if (!contains(disk, p)) best = std::min(best, norm(p - x));
    }
  return best;
}

}  // namespace

TEST(Geometry, BallDistanceAndMembership) {
  const Region disk = Region::ball({0.0, 0.0}, 2.0);
  EXPECT_TRUE(contains(disk, {0.5, 0.5}));
  EXPECT_FALSE(contains(disk, {2.0, 0.0}));
  EXPECT_DOUBLE_EQ(distance(disk, {0.5, 0.0}), 1.5);
  EXPECT_DOUBLE_EQ(*exact_measure(disk), 4.0 * M_PI);
}

TEST(Geometry, HalfSpaceNormalisedAndUnbounded) {
  const Region h = Region::half_space({0.0, 0.0, 2.0}, 4.0);
  EXPECT_NEAR(distance(h, {1.0, -3.0, 5.0}), 3.0, 1e-14);
  EXPECT_FALSE(is_bounded(h));
  EXPECT_FALSE(exact_measure(h).has_value() && std::isfinite(*exact_measure(h)));
}

TEST(Geometry, BoxDistanceAndDirectional) {
  const Region box = Region::box({0.0, 0.0}, {1.0, 3.0});
  EXPECT_NEAR(distance(box, {0.25, 1.0}), 0.25, 1e-15);
  const Point x{0.3, 0.7};
  const Direction e1(Point{1.0, 0.0});
  EXPECT_NEAR(directional_distance(box, x, e1), 0.3, 1e-15);
  EXPECT_NEAR(*exact_measure(box), 3.0, 1e-15);
  EXPECT_TRUE(is_convex(box));
}

TEST(Geometry, DirectionalDistanceMatchesRayMarchOnRandomPoints) {
  const std::vector<Region> shapes{
      Region::ball({0.0, 0.0}, 1.0), Region::box({0.0, 0.0}, {1.0, 3.0}),
      Region::polygon({{0.0, 0.0}, {2.0, 0.0}, {2.5, 1.0}, {1.0, 2.0}, {-0.5, 1.0}}),
      Region::union_of({Region::ball({0.0, 0.0}, 1.0), Region::ball({1.2, 0.0}, 0.8)})};
  Rng rng(42);
  for (const auto& r : shapes) {
    const auto bb = *bounding_box(r);
    int checked = 0;
    while (checked < 30) {
      Point x{rng.uniform(bb.lower[0], bb.upper[0]), rng.uniform(bb.lower[1], bb.upper[1])};
      if (!contains(r, x)) continue;
      const double th = rng.uniform(0.0, 2.0 * M_PI);
      const Point w{std::cos(th), std::sin(th)};
      EXPECT_NEAR(directional_distance(r, x, Direction(w)), brute_directional(r, x, w), 1e-9) << shape_name(r);
      ++checked;
    }
  }
}

TEST(Geometry, UnionDistanceMatchesAngularSearch) {
  const Region u = Region::union_of({Region::ball({0.0, 0.0}, 1.0), Region::box({0.5, -0.4}, {2.0, 0.4})});
  Rng rng(3);
  int checked = 0;
  while (checked < 12) {
    Point x{rng.uniform(-1.0, 2.0), rng.uniform(-1.0, 1.0)};
    if (!contains(u, x)) continue;
    // boundary sample spacing is below 1.6e-5
    const double brute = brute_union_distance(x);
    EXPECT_LE(distance(u, x), brute + 1e-12);
    EXPECT_NEAR(distance(u, x), brute, 1e-5);
    ++checked;
  }
}

TEST(Geometry, IntervalUnionComponents) {
  const Region r = Region::intervals({{2.0, 3.0}, {0.0, 1.0}});
  EXPECT_NEAR(distance(r, Point{0.3}), 0.3, 1e-15);
  EXPECT_FALSE(contains(r, Point{1.5}));
  EXPECT_NEAR(*exact_measure(r), 2.0, 1e-15);
  EXPECT_THROW(Region::intervals({{0.0, 2.0}, {1.0, 3.0}}), Error);
  const Region merged = Region::merged_intervals({{0.0, 2.0}, {1.0, 3.0}, {3.0, 4.0}});
  ASSERT_EQ(merged.as<IntervalUnion>()->intervals.size(), 2u);
  EXPECT_EQ(merged.as<IntervalUnion>()->intervals[0].hi, 3.0);
}

TEST(Geometry, PolygonMustBeConvexCounterclockwise) {
  EXPECT_THROW(Region::polygon({{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}}), Error);
  EXPECT_NO_THROW(Region::polygon({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}));
  const Region tri = Region::polygon({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  EXPECT_NEAR(*exact_measure(tri), 0.5, 1e-15);
  // incircle radius of the right isoceles triangle
  EXPECT_NEAR(distance(tri, {1.0 / (2.0 + std::sqrt(2.0)), 1.0 / (2.0 + std::sqrt(2.0))}),
              1.0 / (2.0 + std::sqrt(2.0)), 1e-14);
}

TEST(Geometry, InvalidInputsRaiseCodes) {
  try {
    Region::ball({0.0, 0.0}, -1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
  try {
    Region::box({0.0, 0.0}, {1.0, 1.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
  EXPECT_THROW(Point::zero(4), Error);
}
