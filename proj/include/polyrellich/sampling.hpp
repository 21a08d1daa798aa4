#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "polyrellich/parallel.hpp"
#include "polyrellich/random.hpp"
#include "polyrellich/region.hpp"

namespace polyrellich {

struct SamplerConfig {
  std::size_t count = 10000;
  std::uint64_t seed = 0;
  std::optional<AxisBox> window;  // required for unbounded regions
};

namespace detail {

inline AxisBox sampling_box(const Region& region, const std::optional<AxisBox>& window) {
  if (window) return *window;
  auto b = bounding_box(region);
  require(b.has_value(), ErrorCode::UnboundedWithoutWindow, "region is unbounded and no sampling window was given");
  return *b;
}

inline Point uniform_in(const AxisBox& box, Rng& rng) {
  Point p = Point::zero(box.lower.dim());
  for (int i = 0; i < p.dim(); ++i) p[i] = rng.uniform(box.lower[i], box.upper[i]);
  return p;
}

}  // namespace detail

/// Seeded rejection sampling from the bounding box (or window). Every returned
/// point is inside the region.
inline std::vector<Point> sample_interior(const Region& region, std::size_t count, std::uint64_t seed,
                                         const std::optional<AxisBox>& window = std::nullopt) {
  detail::require(count >= 1, ErrorCode::InvalidArgument, "sample_interior: count must be >= 1");
  const AxisBox box = detail::sampling_box(region, window);
  Rng rng(seed);
  std::vector<Point> out;
  out.reserve(count);
  std::uint64_t attempts = 0;
  constexpr double kMinAcceptance = 1e-6;
  while (out.size() < count) {
    const Point p = detail::uniform_in(box, rng);
    ++attempts;
    if (contains(region, p)) out.push_back(p);
    if (attempts >= 1000000 && static_cast<double>(out.size()) < kMinAcceptance * static_cast<double>(attempts))
      throw Error(ErrorCode::RejectionBudgetExceeded, "acceptance ratio fell below 1e-6");
  }
  return out;
}

struct InradiusEstimate {
  double value = 0.0;
  Point location;
  std::size_t samples = 0;  // low-discrepancy points evaluated before refinement
};

/// sup d(x) from a Halton sample followed by compass-search refinement of the best points.
inline InradiusEstimate inradius_estimate(const Region& region, const SamplerConfig& cfg) {
  const AxisBox box = detail::sampling_box(region, cfg.window);
  const int dim = region.dim();
  double extent = 0.0;
  for (int i = 0; i < dim; ++i) extent = std::max(extent, box.upper[i] - box.lower[i]);

  struct Candidate {
    double d;
    Point x;
  };
  std::vector<Candidate> best;
  const std::size_t keep = 8;
  const std::size_t n = std::max<std::size_t>(cfg.count, 1);
  for (std::size_t k = 1; k <= n; ++k) {
    const auto h = halton(k + cfg.seed, dim);
    Point x = Point::zero(dim);
    for (int i = 0; i < dim; ++i) x[i] = box.lower[i] + h[static_cast<std::size_t>(i)] * (box.upper[i] - box.lower[i]);
    if (!contains(region, x)) continue;
    best.push_back({distance(region, x), x});
    std::sort(best.begin(), best.end(), [](const Candidate& a, const Candidate& b) { return a.d > b.d; });
    if (best.size() > keep) best.pop_back();
  }
  detail::require(!best.empty(), ErrorCode::RejectionBudgetExceeded, "inradius_estimate: no sample fell inside the region");

  InradiusEstimate out{best.front().d, best.front().x, n};
  for (auto cand : best) {
    double step = 0.05 * extent;
    while (step > 1e-10 * extent) {
      bool improved = false;
      for (int i = 0; i < dim && !improved; ++i)
        for (double sgn : {1.0, -1.0}) {
          Point y = cand.x;
          y[i] += sgn * step;
          if (!contains(region, y)) continue;
          const double dy = distance(region, y);
          if (dy > cand.d) {
            cand = {dy, y};
            improved = true;
            break;
          }
        }
      if (!improved) step *= 0.5;
    }
    if (cand.d > out.value) {
      out.value = cand.d;
      out.location = cand.x;
    }
  }
  return out;
}

struct MonteCarloEstimate {
  double value = 0.0;
  double sigma = 0.0;  // one standard error
  std::size_t samples = 0;
};

/// Integral of f over the region by uniform sampling of the bounding box.
/// Samples are split into fixed-size chunks with their own streams, so the
/// result does not depend on the worker count.
template <class F>
MonteCarloEstimate integrate_monte_carlo(const Region& region, F&& f, std::size_t samples, std::uint64_t seed,
                                         const std::optional<AxisBox>& window = std::nullopt) {
  detail::require(samples >= 2, ErrorCode::InvalidArgument, "Monte Carlo needs at least 2 samples");
  const AxisBox box = detail::sampling_box(region, window);
  const double vol = box_volume(box);
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<double> sum(chunks, 0.0), sum_sq(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng = Rng::stream(seed, c);
    const std::size_t n = std::min(kChunk, samples - c * kChunk);
    double s = 0.0, s2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const Point x = detail::uniform_in(box, rng);
      if (!contains(region, x)) continue;
      const double v = f(x);
      s += v;
      s2 += v * v;
    }
    sum[c] = s;
    sum_sq[c] = s2;
  });
  double s = 0.0, s2 = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    s += sum[c];
    s2 += sum_sq[c];
  }
  const double nd = static_cast<double>(samples);
  const double mean = s / nd;
  const double var = std::max(0.0, s2 / nd - mean * mean);
  return {vol * mean, vol * std::sqrt(var / (nd - 1.0)), samples};
}

}  // namespace polyrellich
