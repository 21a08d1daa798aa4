// Heat trace sandwich for the Dirichlet Laplacian on the unit disk.
#include <cstdio>

#include "polyrellich/polyrellich.hpp"

int main() {
  using namespace polyrellich;
  const Region disk = Region::ball({0.0, 0.0}, 1.0);
  const auto tc = trace_constants(1, 2);
  const auto dec = decompose(disk, 9);
  const auto rule = build_rule(2, default_resolution(1));
  std::printf("%zu Whitney cubes, uncovered measure %.3g\n", dec.cubes.size(), dec.residual_measure);
  std::printf("%10s %14s %14s %14s\n", "t", "lower", "weyl", "upper");
  for (double t : {1e-3, 1e-2, 1e-1, 1.0}) {
    const auto lo = lower_trace_bound(disk, t, dec, tc);
    const auto hi = upper_trace_bound(disk, t, tc, rule, 200000, 1);
    // leading Weyl term |Omega| / (4 pi t)
    std::printf("%10.3g %14.6g %14.6g %14.6g +- %.2g\n", t, lo.value, 1.0 / (4.0 * t), hi.value, hi.error);
  }
}
