// Clamped beam (m = 2) and m = 3 spectra on (0,1) against the sandwich bounds.
#include <cstdio>

#include "polyrellich/spectral.hpp"

int main() {
  using namespace polyrellich;
  for (int m : {2, 3}) {
    const auto tab = eigenvalues_1d(m, 8, 256);
    std::printf("m = %d, Gram condition %.3g\n", m, tab.gram_condition);
    for (int n = 1; n <= tab.count; ++n) {
      const auto [lo, hi] = eigenvalue_bounds(m, n);
      const double v = tab.values[static_cast<std::size_t>(n - 1)];
      std::printf("  %2d %16.8g  in [%.6g, %.6g]  (lambda / lower = %.4f)\n", n, v, lo, hi, v / lo);
    }
  }
  std::printf("heat trace, m = 2, t = 1e-3: %.10g\n", heat_trace_interval(2, 1e-3));
}
