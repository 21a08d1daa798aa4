#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <string>

#include "polyrellich/errors.hpp"

namespace polyrellich {

inline constexpr int kMaxDim = 3;

/// A point (or displacement) in R^N, N <= 3.
class Point {
 public:
  Point() = default;

  Point(std::initializer_list<double> coords) {
    detail::require(coords.size() >= 1 && coords.size() <= kMaxDim, ErrorCode::UnsupportedDimension,
                    "point dimension must be 1, 2 or 3");
    dim_ = static_cast<int>(coords.size());
    int i = 0;
    for (double v : coords) c_[static_cast<std::size_t>(i++)] = v;
  }

  static Point zero(int dim) {
    detail::require(dim >= 1 && dim <= kMaxDim, ErrorCode::UnsupportedDimension,
                    "dimension " + std::to_string(dim) + " not in {1,2,3}");
    Point p;
    p.dim_ = dim;
    return p;
  }

  static Point filled(int dim, double value) {
    Point p = zero(dim);
    for (int i = 0; i < dim; ++i) p[i] = value;
    return p;
  }

  int dim() const noexcept { return dim_; }
  double operator[](int i) const noexcept { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) noexcept { return c_[static_cast<std::size_t>(i)]; }

  bool is_finite() const {
    for (int i = 0; i < dim_; ++i)
      if (!std::isfinite(c_[static_cast<std::size_t>(i)])) return false;
    return true;
  }

  Point& operator+=(const Point& o) {
    for (int i = 0; i < dim_; ++i) (*this)[i] += o[i];
    return *this;
  }
  Point& operator-=(const Point& o) {
    for (int i = 0; i < dim_; ++i) (*this)[i] -= o[i];
    return *this;
  }
  Point& operator*=(double s) {
    for (int i = 0; i < dim_; ++i) (*this)[i] *= s;
    return *this;
  }

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }
  friend bool operator==(const Point& a, const Point& b) {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.dim_; ++i)
      if (a[i] != b[i]) return false;
    return true;
  }

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

inline double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }

/// Unit vector in R^N; the norm is checked to 1e-12 at construction.
class Direction {
 public:
  explicit Direction(const Point& v) : v_(v) {
    detail::require(std::abs(norm(v) - 1.0) <= 1e-12, ErrorCode::InvalidArgument,
                    "direction must have unit norm");
  }

  static Direction normalized(const Point& v) {
    const double n = norm(v);
    detail::require(n > 0.0 && std::isfinite(n), ErrorCode::InvalidArgument,
                    "cannot normalize a zero vector");
    return Direction(v * (1.0 / n));
  }

  int dim() const noexcept { return v_.dim(); }
  double operator[](int i) const noexcept { return v_[i]; }
  const Point& vector() const noexcept { return v_; }

 private:
  Point v_;
};

}  // namespace polyrellich
