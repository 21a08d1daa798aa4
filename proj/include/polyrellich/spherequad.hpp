#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "polyrellich/errors.hpp"
#include "polyrellich/gauss.hpp"
#include "polyrellich/point.hpp"

namespace polyrellich {

/// Quadrature on the unit sphere S^{N-1} for the normalized surface measure.
struct SphericalRule {
  int dim = 0;
  std::vector<Direction> nodes;
  std::vector<double> weights;  // sum to 1
};

/// Resolution giving exactness for the degree-2m moment integrand.
inline int default_resolution(double m) { return std::max(static_cast<int>(std::ceil(2.0 * m)) + 2, 16); }

/// N=1: the two atoms {+1, -1}. N=2: `resolution` equally spaced angles
/// (exact on trigonometric polynomials of degree < resolution). N=3:
/// Gauss-Legendre in cos(theta) times 2*resolution azimuths (exact on
/// polynomials of degree <= 2*resolution - 1).
inline SphericalRule build_rule(int dim, int resolution) {
  detail::require(dim >= 1 && dim <= 3, ErrorCode::UnsupportedDimension,
                  "spherical rules exist for N in {1,2,3}, got " + std::to_string(dim));
  detail::require(resolution >= 1, ErrorCode::InvalidArgument, "resolution must be >= 1");
  SphericalRule rule;
  rule.dim = dim;
  if (dim == 1) {
    rule.nodes = {Direction(Point{1.0}), Direction(Point{-1.0})};
    rule.weights = {0.5, 0.5};
    return rule;
  }
  if (dim == 2) {
    for (int k = 0; k < resolution; ++k) {
      const double theta = 2.0 * M_PI * k / resolution;
      rule.nodes.push_back(Direction::normalized(Point{std::cos(theta), std::sin(theta)}));
      rule.weights.push_back(1.0 / resolution);
    }
    return rule;
  }
  const GaussRule& g = gauss_legendre(resolution);
  const int azimuths = 2 * resolution;
  for (int i = 0; i < resolution; ++i) {
    const double z = g.nodes[static_cast<std::size_t>(i)];
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < azimuths; ++j) {
      const double phi = 2.0 * M_PI * j / azimuths;
      rule.nodes.push_back(Direction::normalized(Point{r * std::cos(phi), r * std::sin(phi), z}));
      rule.weights.push_back(0.5 * g.weights[static_cast<std::size_t>(i)] / azimuths);
    }
  }
  return rule;
}

/// sum_k w_k <xi, omega_k>^{2m}.
inline double moment(const SphericalRule& rule, const Point& xi, int m) {
  detail::require(xi.dim() == rule.dim, ErrorCode::DimensionMismatch, "moment: xi dimension differs from rule");
  detail::require(m >= 1, ErrorCode::InvalidArgument, "moment: m must be >= 1");
  double s = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k)
    s += rule.weights[k] * std::pow(dot(xi, rule.nodes[k].vector()), 2 * m);
  return s;
}

/// Combinatorial constants of the Hardy-Rellich inequality for order m in R^N:
///   D = (2m-1)(2m-3)...1,  P = (N+2m-2)(N+2m-4)...N,  A = P*D/4^m,
/// and the spherical moment constant D/P.
struct HardyConstants {
  double m = 1;
  int dim = 1;
  double D = 1;
  double P = 1;
  double A = 0.25;
  double moment_constant = 1;
};

/// D(m) = 2^m Gamma(m+1/2)/Gamma(1/2); integer m uses the exact product.
inline double odd_product(double m) {
  if (m == std::floor(m) && m <= 64) {
    double d = 1.0;
    for (int k = 1; k <= static_cast<int>(m); ++k) d *= 2.0 * k - 1.0;
    return d;
  }
  return std::exp(m * std::log(2.0) + std::lgamma(m + 0.5) - std::lgamma(0.5));
}

/// P(N, m) = 2^m Gamma(N/2+m)/Gamma(N/2); integer m uses the exact product.
inline double shifted_even_product(int dim, double m) {
  if (m == std::floor(m) && m <= 64) {
    double p = 1.0;
    for (int k = 0; k < static_cast<int>(m); ++k) p *= dim + 2.0 * k;
    return p;
  }
  return std::exp(m * std::log(2.0) + std::lgamma(0.5 * dim + m) - std::lgamma(0.5 * dim));
}

inline HardyConstants hardy_constants(double m, int dim) {
  detail::require(m >= 1.0, ErrorCode::InvalidArgument, "m must be >= 1");
  detail::require(dim >= 1, ErrorCode::InvalidArgument, "N must be >= 1");
  HardyConstants c;
  c.m = m;
  c.dim = dim;
  c.D = odd_product(m);
  c.P = shifted_even_product(dim, m);
  c.A = c.P * c.D / std::pow(4.0, m);
  c.moment_constant = c.D / c.P;
  return c;
}

}  // namespace polyrellich
