#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "polyrellich/parallel.hpp"
#include "polyrellich/region.hpp"
#include "polyrellich/sampling.hpp"
#include "polyrellich/spherequad.hpp"

namespace polyrellich {

/// a_m(x) = [sum_k w_k d_{omega_k}(x)^{-2m}]^{-1/2m}. Directions along which the
/// line never leaves the region contribute 0; the result is +infinity only if
/// every direction does.
inline double pseudodistance(const Region& region, const Point& x, double m, const SphericalRule& rule) {
  detail::require(rule.dim == region.dim(), ErrorCode::DimensionMismatch,
                  "pseudodistance: rule dimension differs from region dimension");
  detail::require(m >= 1.0, ErrorCode::InvalidArgument, "pseudodistance: m must be >= 1");
  detail::require(contains(region, x), ErrorCode::PointOutsideRegion, "pseudodistance: x not in region");
  // Scale by d(x) before raising to -2m so large m does not underflow.
  const double scale = distance(region, x);
  double s = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double dw = directional_distance(region, x, rule.nodes[k]);
    if (std::isinf(dw)) continue;
    s += rule.weights[k] * std::pow(dw / scale, -2.0 * m);
  }
  if (s == 0.0) return kInf;
  return scale * std::pow(s, -1.0 / (2.0 * m));
}

struct PseudoSample {
  Point x;
  double d;
  double a;
};

/// Evaluates d and a_m on seeded interior samples. Output order follows the
/// sample order regardless of the worker count.
inline std::vector<PseudoSample> pseudodistance_samples(const Region& region, double m, const SamplerConfig& sampler,
                                                        const SphericalRule& rule) {
  const auto pts = sample_interior(region, sampler.count, sampler.seed, sampler.window);
  std::vector<PseudoSample> out(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    out[i] = {pts[i], distance(region, pts[i]), pseudodistance(region, pts[i], m, rule)};
  });
  return out;
}

struct RegularityReport {
  double m = 1;
  double k_estimate = 0;  // sup a_m / d over samples
  double min_ratio = 0;   // inf a_m / d over samples
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  bool convex = false;
  double convex_bound = kInf;  // (P/D)^{1/2m} when the region is convex
};

/// Empirical m-regularity constant from precomputed samples. For convex
/// regions the estimate is also checked against (P/D)^{1/2m}.
inline RegularityReport regularity_from_samples(const Region& region, double m,
                                                const std::vector<PseudoSample>& samples, std::uint64_t seed) {
  RegularityReport rep;
  rep.m = m;
  rep.sample_count = samples.size();
  rep.seed = seed;
  rep.k_estimate = 0.0;
  rep.min_ratio = kInf;
  for (const auto& s : samples) {
    detail::require(std::isfinite(s.a), ErrorCode::AllDirectionsUnbounded,
                    "a_m is infinite at a sample: every quadrature direction is unbounded");
    const double r = s.a / s.d;
    rep.k_estimate = std::max(rep.k_estimate, r);
    rep.min_ratio = std::min(rep.min_ratio, r);
  }
  rep.convex = is_convex(region);
  if (rep.convex) {
    const auto c = hardy_constants(m, region.dim());
    rep.convex_bound = std::pow(c.P / c.D, 1.0 / (2.0 * m));
    detail::require(rep.k_estimate <= rep.convex_bound * (1.0 + 1e-9), ErrorCode::InvariantViolation,
                    "convex comparison a_m <= (P/D)^{1/2m} d violated");
  }
  detail::require(rep.min_ratio >= 1.0 - 1e-9, ErrorCode::InvariantViolation, "a_m >= d violated");
  return rep;
}

inline RegularityReport regularity_constant(const Region& region, double m, const SamplerConfig& sampler,
                                            const SphericalRule& rule) {
  return regularity_from_samples(region, m, pseudodistance_samples(region, m, sampler, rule), sampler.seed);
}

}  // namespace polyrellich
