#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "polyrellich/errors.hpp"
#include "polyrellich/point.hpp"

namespace polyrellich {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// {x : <normal, x> > offset}; normal has unit length.
struct HalfSpace {
  Point normal;
  double offset = 0.0;
};

struct Ball {
  Point center;
  double radius = 1.0;
};

/// Open box prod_i (lower_i, upper_i).
struct AxisBox {
  Point lower;
  Point upper;
};

/// Open interval; either end may be infinite.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Sorted, pairwise disjoint open intervals (N = 1).
struct IntervalUnion {
  std::vector<Interval> intervals;
};

/// Strictly convex polygon, vertices counterclockwise (N = 2).
struct ConvexPolygon {
  std::vector<Point> vertices;
};

class Region;

struct FiniteUnion {
  std::vector<Region> members;
};

using Shape = std::variant<HalfSpace, Ball, AxisBox, IntervalUnion, ConvexPolygon, FiniteUnion>;

/// Open set in R^N, N in {1,2,3}. Immutable once built; use the factories,
/// which validate every invariant.
class Region {
 public:
  static Region half_space(Point normal, double offset) {
    check_point(normal, "half_space.normal");
    const double n = norm(normal);
    detail::require(n > 0.0, ErrorCode::InvalidArgument, "half_space.normal must be nonzero");
    detail::require(std::isfinite(offset), ErrorCode::InvalidArgument, "half_space.offset must be finite");
    return Region(normal.dim(), HalfSpace{normal * (1.0 / n), offset / n});
  }

  static Region ball(Point center, double radius) {
    check_point(center, "ball.center");
    detail::require(radius > 0.0 && std::isfinite(radius), ErrorCode::InvalidArgument,
                    "ball.radius must be positive and finite");
    return Region(center.dim(), Ball{center, radius});
  }

  static Region box(Point lower, Point upper) {
    check_point(lower, "axis_box.lower");
    check_point(upper, "axis_box.upper");
    detail::require(lower.dim() == upper.dim(), ErrorCode::DimensionMismatch,
                    "axis_box.lower and axis_box.upper differ in dimension");
    for (int i = 0; i < lower.dim(); ++i)
      detail::require(lower[i] < upper[i], ErrorCode::InvalidArgument,
                      "axis_box requires lower < upper componentwise");
    return Region(lower.dim(), AxisBox{lower, upper});
  }

  /// Disjoint open intervals; they are sorted here but must not overlap.
  static Region intervals(std::vector<Interval> list) {
    detail::require(!list.empty(), ErrorCode::InvalidArgument, "interval_union.intervals is empty");
    for (const auto& iv : list)
      detail::require(iv.lo < iv.hi && !std::isnan(iv.lo) && !std::isnan(iv.hi), ErrorCode::InvalidArgument,
                      "interval_union: each interval needs lo < hi");
    std::sort(list.begin(), list.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < list.size(); ++i)
      detail::require(list[i - 1].hi <= list[i].lo, ErrorCode::InvalidArgument,
                      "interval_union: intervals overlap (use merged_intervals for a set union)");
    return Region(1, IntervalUnion{std::move(list)});
  }

  /// Set union of arbitrary open intervals, merged into disjoint components.
  /// Intervals that only share an endpoint stay separate (that point is not in the union).
  static Region merged_intervals(std::vector<Interval> list) {
    detail::require(!list.empty(), ErrorCode::InvalidArgument, "interval list is empty");
    for (const auto& iv : list)
      detail::require(iv.lo < iv.hi, ErrorCode::InvalidArgument, "each interval needs lo < hi");
    std::sort(list.begin(), list.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const auto& iv : list) {
      if (!merged.empty() && iv.lo < merged.back().hi)
        merged.back().hi = std::max(merged.back().hi, iv.hi);
      else
        merged.push_back(iv);
    }
    return Region(1, IntervalUnion{std::move(merged)});
  }

  static Region polygon(std::vector<Point> vertices) {
    detail::require(vertices.size() >= 3, ErrorCode::InvalidArgument, "convex_polygon needs >= 3 vertices");
    for (const auto& v : vertices) {
      check_point(v, "convex_polygon.vertices");
      detail::require(v.dim() == 2, ErrorCode::DimensionMismatch, "convex_polygon vertices must be 2-D");
    }
    const std::size_t n = vertices.size();
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Point& a = vertices[i];
      const Point& b = vertices[(i + 1) % n];
      const Point& c = vertices[(i + 2) % n];
      const Point e1 = b - a;
      const Point e2 = c - b;
      const double cross = e1[0] * e2[1] - e1[1] * e2[0];
      detail::require(cross > 0.0, ErrorCode::InvalidArgument,
                      "convex_polygon must be strictly convex and counterclockwise");
      turning += std::atan2(cross, dot(e1, e2));
    }
    detail::require(std::abs(turning - 2.0 * M_PI) < 1e-6, ErrorCode::InvalidArgument,
                    "convex_polygon must be simple (winds once)");
    return Region(2, ConvexPolygon{std::move(vertices)});
  }

  static Region union_of(std::vector<Region> members) {
    detail::require(!members.empty(), ErrorCode::InvalidArgument, "finite_union.members is empty");
    const int dim = members.front().dim();
    for (const auto& m : members)
      detail::require(m.dim() == dim, ErrorCode::DimensionMismatch, "finite_union members differ in dimension");
    return Region(dim, FiniteUnion{std::move(members)});
  }

  int dim() const noexcept { return dim_; }
  const Shape& shape() const noexcept { return shape_; }

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&shape_);
  }

 private:
  Region(int dim, Shape shape) : dim_(dim), shape_(std::move(shape)) {}

  static void check_point(const Point& p, const char* field) {
    detail::require(p.dim() >= 1 && p.dim() <= kMaxDim, ErrorCode::UnsupportedDimension,
                    std::string(field) + ": dimension must be 1, 2 or 3");
    detail::require(p.is_finite(), ErrorCode::InvalidArgument, std::string(field) + ": non-finite coordinate");
  }

  int dim_;
  Shape shape_;
};

inline std::string shape_name(const Region& r) {
  return std::visit(
      [](const auto& s) -> std::string {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, HalfSpace>) return "half_space";
        else if constexpr (std::is_same_v<S, Ball>) return "ball";
        else if constexpr (std::is_same_v<S, AxisBox>) return "axis_box";
        else if constexpr (std::is_same_v<S, IntervalUnion>) return "interval_union";
        else if constexpr (std::is_same_v<S, ConvexPolygon>) return "convex_polygon";
        else return "finite_union";
      },
      r.shape());
}

namespace detail {

inline void require_dim(const Region& r, int dim) {
  require(r.dim() == dim, ErrorCode::DimensionMismatch,
          "point dimension " + std::to_string(dim) + " does not match region dimension " +
              std::to_string(r.dim()));
}

// Inward unit normal and offset of polygon edge i: inside iff <n, x> > c.
inline std::pair<Point, double> polygon_edge(const ConvexPolygon& p, std::size_t i) {
  const Point& a = p.vertices[i];
  const Point& b = p.vertices[(i + 1) % p.vertices.size()];
  const Point e = b - a;
  Point n{-e[1], e[0]};
  n *= 1.0 / norm(n);
  return {n, dot(n, a)};
}

struct Chord {
  double lo;
  double hi;
};

inline std::optional<Chord> clip(std::optional<Chord> c, double lo, double hi) {
  if (!c) return c;
  c->lo = std::max(c->lo, lo);
  c->hi = std::min(c->hi, hi);
  if (!(c->lo < c->hi)) return std::nullopt;
  return c;
}

// Parameters s with <n, x + s w> > c.
inline std::optional<Chord> halfspace_chord(const Point& n, double c, const Point& x, const Point& w,
                                            std::optional<Chord> acc) {
  const double a = dot(n, w);
  const double b = dot(n, x) - c;
  if (a == 0.0) return b > 0.0 ? acc : std::nullopt;
  const double root = -b / a;
  return a > 0.0 ? clip(acc, root, kInf) : clip(acc, -kInf, root);
}

inline void primitive_chords(const Region& region, const Point& x, const Point& w, std::vector<Chord>& out) {
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        const std::optional<Chord> all = Chord{-kInf, kInf};
        if constexpr (std::is_same_v<S, HalfSpace>) {
          if (auto c = halfspace_chord(s.normal, s.offset, x, w, all)) out.push_back(*c);
        } else if constexpr (std::is_same_v<S, Ball>) {
          const Point r = x - s.center;
          const double p = dot(w, r);
          const double q = dot(r, r) - s.radius * s.radius;
          const double disc = p * p - q;
          if (disc <= 0.0) return;
          const double sq = std::sqrt(disc);
          double s1 = -p - sq;
          double s2 = -p + sq;
          // Cancellation-free form for the smaller-magnitude root.
          if (p > 0.0 && s1 != 0.0) s2 = q / s1;
          else if (p < 0.0 && s2 != 0.0) s1 = q / s2;
          if (s1 < s2) out.push_back({s1, s2});
        } else if constexpr (std::is_same_v<S, AxisBox>) {
          std::optional<Chord> acc = all;
          for (int i = 0; i < x.dim() && acc; ++i) {
            if (w[i] == 0.0) {
              if (!(s.lower[i] < x[i] && x[i] < s.upper[i])) acc = std::nullopt;
              continue;
            }
            double t0 = (s.lower[i] - x[i]) / w[i];
            double t1 = (s.upper[i] - x[i]) / w[i];
            if (t0 > t1) std::swap(t0, t1);
            acc = clip(acc, t0, t1);
          }
          if (acc) out.push_back(*acc);
        } else if constexpr (std::is_same_v<S, IntervalUnion>) {
          const double dir = w[0];
          if (dir == 0.0) {
            for (const auto& iv : s.intervals)
              if (iv.lo < x[0] && x[0] < iv.hi) out.push_back({-kInf, kInf});
            return;
          }
          for (const auto& iv : s.intervals) {
            double t0 = (iv.lo - x[0]) / dir;
            double t1 = (iv.hi - x[0]) / dir;
            if (t0 > t1) std::swap(t0, t1);
            out.push_back({t0, t1});
          }
        } else if constexpr (std::is_same_v<S, ConvexPolygon>) {
          std::optional<Chord> acc = all;
          for (std::size_t i = 0; i < s.vertices.size() && acc; ++i) {
            const auto [n, c] = polygon_edge(s, i);
            acc = halfspace_chord(n, c, x, w, acc);
          }
          if (acc) out.push_back(*acc);
        } else {
          for (const auto& m : s.members) primitive_chords(m, x, w, out);
        }
      },
      region.shape());
}

// Largest s such that (0, s) stays inside the union of open chords, given that
// 0 lies strictly inside one of them. sign = +1 forward, -1 backward.
inline double reach(const std::vector<Chord>& chords, double sign) {
  double r = 0.0;
  bool moved = true;
  while (moved && std::isfinite(r)) {
    moved = false;
    for (const auto& c : chords) {
      const double lo = sign > 0 ? c.lo : -c.hi;
      const double hi = sign > 0 ? c.hi : -c.lo;
      if (lo < r && r < hi) {
        r = hi;
        moved = true;
      }
    }
  }
  return r;
}

}  // namespace detail

/// Open-set membership; boundary points are outside.
inline bool contains(const Region& region, const Point& x) {
  detail::require_dim(region, x.dim());
  return std::visit(
      [&](const auto& s) -> bool {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, HalfSpace>) {
          return dot(s.normal, x) > s.offset;
        } else if constexpr (std::is_same_v<S, Ball>) {
          const Point r = x - s.center;
          return dot(r, r) < s.radius * s.radius;
        } else if constexpr (std::is_same_v<S, AxisBox>) {
          for (int i = 0; i < x.dim(); ++i)
            if (!(s.lower[i] < x[i] && x[i] < s.upper[i])) return false;
          return true;
        } else if constexpr (std::is_same_v<S, IntervalUnion>) {
          for (const auto& iv : s.intervals)
            if (iv.lo < x[0] && x[0] < iv.hi) return true;
          return false;
        } else if constexpr (std::is_same_v<S, ConvexPolygon>) {
          for (std::size_t i = 0; i < s.vertices.size(); ++i) {
            const auto [n, c] = detail::polygon_edge(s, i);
            if (!(dot(n, x) > c)) return false;
          }
          return true;
        } else {
          for (const auto& m : s.members)
            if (contains(m, x)) return true;
          return false;
        }
      },
      region.shape());
}

/// d_omega(x): smallest |s| with x + s*omega outside the region, over both
/// signs of s; +infinity when the whole line stays inside.
inline double directional_distance(const Region& region, const Point& x, const Direction& omega) {
  detail::require_dim(region, x.dim());
  detail::require(omega.dim() == x.dim(), ErrorCode::DimensionMismatch, "direction dimension mismatch");
  detail::require(contains(region, x), ErrorCode::PointOutsideRegion, "directional_distance: x not in region");
  std::vector<detail::Chord> chords;
  detail::primitive_chords(region, x, omega.vector(), chords);
  return std::min(detail::reach(chords, 1.0), detail::reach(chords, -1.0));
}

/// Axis-aligned bounding box; nullopt for unbounded regions.
inline std::optional<AxisBox> bounding_box(const Region& region) {
  return std::visit(
      [&](const auto& s) -> std::optional<AxisBox> {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, HalfSpace>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<S, Ball>) {
          return AxisBox{s.center - Point::filled(region.dim(), s.radius),
                         s.center + Point::filled(region.dim(), s.radius)};
        } else if constexpr (std::is_same_v<S, AxisBox>) {
          return s;
        } else if constexpr (std::is_same_v<S, IntervalUnion>) {
          const double lo = s.intervals.front().lo;
          const double hi = s.intervals.back().hi;
          if (!std::isfinite(lo) || !std::isfinite(hi)) return std::nullopt;
          return AxisBox{Point{lo}, Point{hi}};
        } else if constexpr (std::is_same_v<S, ConvexPolygon>) {
          AxisBox b{s.vertices.front(), s.vertices.front()};
          for (const auto& v : s.vertices)
            for (int i = 0; i < 2; ++i) {
              b.lower[i] = std::min(b.lower[i], v[i]);
              b.upper[i] = std::max(b.upper[i], v[i]);
            }
          return b;
        } else {
          std::optional<AxisBox> acc;
          for (const auto& m : s.members) {
            auto b = bounding_box(m);
            if (!b) return std::nullopt;
            if (!acc) {
              acc = b;
              continue;
            }
            for (int i = 0; i < region.dim(); ++i) {
              acc->lower[i] = std::min(acc->lower[i], b->lower[i]);
              acc->upper[i] = std::max(acc->upper[i], b->upper[i]);
            }
          }
          return acc;
        }
      },
      region.shape());
}

inline bool is_bounded(const Region& region) { return bounding_box(region).has_value(); }

inline double box_volume(const AxisBox& b) {
  double v = 1.0;
  for (int i = 0; i < b.lower.dim(); ++i) v *= b.upper[i] - b.lower[i];
  return v;
}

inline bool is_convex(const Region& region) {
  if (const auto* iu = region.as<IntervalUnion>()) return iu->intervals.size() == 1;
  return !region.as<FiniteUnion>();
}

/// Lebesgue measure when it is available in closed form.
inline std::optional<double> exact_measure(const Region& region) {
  return std::visit(
      [&](const auto& s) -> std::optional<double> {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, HalfSpace>) {
          return kInf;
        } else if constexpr (std::is_same_v<S, Ball>) {
          const double r = s.radius;
          switch (region.dim()) {
            case 1: return 2.0 * r;
            case 2: return M_PI * r * r;
            default: return 4.0 / 3.0 * M_PI * r * r * r;
          }
        } else if constexpr (std::is_same_v<S, AxisBox>) {
          return box_volume(s);
        } else if constexpr (std::is_same_v<S, IntervalUnion>) {
          double total = 0.0;
          for (const auto& iv : s.intervals) total += iv.hi - iv.lo;
          return total;
        } else if constexpr (std::is_same_v<S, ConvexPolygon>) {
          double a = 0.0;
          const std::size_t n = s.vertices.size();
          for (std::size_t i = 0; i < n; ++i) {
            const Point& p = s.vertices[i];
            const Point& q = s.vertices[(i + 1) % n];
            a += p[0] * q[1] - p[1] * q[0];
          }
          return 0.5 * a;
        } else {
          // Only when member bounding boxes are pairwise disjoint.
          std::vector<AxisBox> boxes;
          double total = 0.0;
          for (const auto& m : s.members) {
            auto b = bounding_box(m);
            auto v = exact_measure(m);
            if (!b || !v) return std::nullopt;
            for (const auto& o : boxes) {
              bool overlap = true;
              for (int i = 0; i < region.dim(); ++i)
                if (!(b->lower[i] < o.upper[i] && o.lower[i] < b->upper[i])) overlap = false;
              if (overlap) return std::nullopt;
            }
            boxes.push_back(*b);
            total += *v;
          }
          return total;
        }
      },
      region.shape());
}

namespace detail {

inline double primitive_distance(const Region& region, const Point& x) {
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, HalfSpace>) {
          return dot(s.normal, x) - s.offset;
        } else if constexpr (std::is_same_v<S, Ball>) {
          return s.radius - norm(x - s.center);
        } else if constexpr (std::is_same_v<S, AxisBox>) {
          double d = kInf;
          for (int i = 0; i < x.dim(); ++i) d = std::min({d, x[i] - s.lower[i], s.upper[i] - x[i]});
          return d;
        } else if constexpr (std::is_same_v<S, IntervalUnion>) {
          for (const auto& iv : s.intervals)
            if (iv.lo < x[0] && x[0] < iv.hi) return std::min(x[0] - iv.lo, iv.hi - x[0]);
          return 0.0;
        } else if constexpr (std::is_same_v<S, ConvexPolygon>) {
          double d = kInf;
          for (std::size_t i = 0; i < s.vertices.size(); ++i) {
            const auto [n, c] = polygon_edge(s, i);
            d = std::min(d, dot(n, x) - c);
          }
          return d;
        } else {
          return 0.0;  // not a primitive
        }
      },
      region.shape());
}

// Boundary points of a primitive nearest to an interior point x.
inline std::vector<Point> foot_points(const Region& region, const Point& x) {
  std::vector<Point> out;
  const double d = primitive_distance(region, x);
  const double tie = 1e-12 * std::max(1.0, std::abs(d));
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, HalfSpace>) {
          out.push_back(x - s.normal * d);
        } else if constexpr (std::is_same_v<S, Ball>) {
          const Point r = x - s.center;
          const double n = norm(r);
          if (n == 0.0) {
            for (int i = 0; i < x.dim(); ++i) {
              Point p = s.center;
              p[i] += s.radius;
              out.push_back(p);
              p[i] -= 2.0 * s.radius;
              out.push_back(p);
            }
          } else {
            out.push_back(s.center + r * (s.radius / n));
          }
        } else if constexpr (std::is_same_v<S, AxisBox>) {
          for (int i = 0; i < x.dim(); ++i) {
            if (x[i] - s.lower[i] <= d + tie) {
              Point p = x;
              p[i] = s.lower[i];
              out.push_back(p);
            }
            if (s.upper[i] - x[i] <= d + tie) {
              Point p = x;
              p[i] = s.upper[i];
              out.push_back(p);
            }
          }
        } else if constexpr (std::is_same_v<S, IntervalUnion>) {
          out.push_back(Point{x[0] - d});
          out.push_back(Point{x[0] + d});
        } else if constexpr (std::is_same_v<S, ConvexPolygon>) {
          for (std::size_t i = 0; i < s.vertices.size(); ++i) {
            const auto [n, c] = polygon_edge(s, i);
            const double di = dot(n, x) - c;
            if (di <= d + tie) out.push_back(x - n * di);
          }
        }
      },
      region.shape());
  return out;
}

// Depth of y inside a primitive (positive inside), used to filter candidates.
inline double depth(const Region& region, const Point& y) {
  if (!contains(region, y)) return 0.0;
  return primitive_distance(region, y);
}

// ---- 2-D boundary enumeration for unions ----

struct Segment {
  Point a, b;
};
struct Line {
  Point p, dir;  // dir unit
};
struct Circle {
  Point c;
  double r;
};
using Piece = std::variant<Segment, Line, Circle>;

struct OwnedPiece {
  Piece piece;
  std::size_t member;
};

inline void boundary_pieces(const Region& region, std::size_t member, std::vector<OwnedPiece>& out) {
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, HalfSpace>) {
          const Point p = s.normal * s.offset;
          out.push_back({Line{p, Point{-s.normal[1], s.normal[0]}}, member});
        } else if constexpr (std::is_same_v<S, Ball>) {
          out.push_back({Circle{s.center, s.radius}, member});
        } else if constexpr (std::is_same_v<S, AxisBox>) {
          const Point c00{s.lower[0], s.lower[1]}, c10{s.upper[0], s.lower[1]};
          const Point c11{s.upper[0], s.upper[1]}, c01{s.lower[0], s.upper[1]};
          out.push_back({Segment{c00, c10}, member});
          out.push_back({Segment{c10, c11}, member});
          out.push_back({Segment{c11, c01}, member});
          out.push_back({Segment{c01, c00}, member});
        } else if constexpr (std::is_same_v<S, ConvexPolygon>) {
          const std::size_t n = s.vertices.size();
          for (std::size_t i = 0; i < n; ++i) out.push_back({Segment{s.vertices[i], s.vertices[(i + 1) % n]}, member});
        }
      },
      region.shape());
}

inline double cross2(const Point& a, const Point& b) { return a[0] * b[1] - a[1] * b[0]; }

// Line through p with direction v (parameter t), restricted to [tlo, thi].
struct Param {
  Point p, v;
  double tlo, thi;
};

inline Param as_param(const Piece& piece) {
  if (const auto* s = std::get_if<Segment>(&piece)) return {s->a, s->b - s->a, 0.0, 1.0};
  const auto& l = std::get<Line>(piece);
  return {l.p, l.dir, -kInf, kInf};
}

inline void closest_candidates(const Piece& piece, const Point& x, std::vector<Point>& out) {
  if (const auto* c = std::get_if<Circle>(&piece)) {
    const Point r = x - c->c;
    const double n = norm(r);
    out.push_back(n > 0.0 ? c->c + r * (c->r / n) : c->c + Point{c->r, 0.0});
    return;
  }
  const Param q = as_param(piece);
  const double t = std::clamp(dot(x - q.p, q.v) / dot(q.v, q.v), q.tlo, q.thi);
  out.push_back(q.p + q.v * t);
  if (std::get_if<Segment>(&piece)) {
    out.push_back(q.p);
    out.push_back(q.p + q.v);
  }
}

inline void intersections(const Piece& a, const Piece& b, std::vector<Point>& out) {
  const auto* ca = std::get_if<Circle>(&a);
  const auto* cb = std::get_if<Circle>(&b);
  if (ca && cb) {
    const Point d = cb->c - ca->c;
    const double dist = norm(d);
    if (dist == 0.0 || dist > ca->r + cb->r || dist < std::abs(ca->r - cb->r)) return;
    const double along = (dist * dist + ca->r * ca->r - cb->r * cb->r) / (2.0 * dist);
    const double h = std::sqrt(std::max(0.0, ca->r * ca->r - along * along));
    const Point u = d * (1.0 / dist);
    const Point perp{-u[1], u[0]};
    out.push_back(ca->c + u * along + perp * h);
    out.push_back(ca->c + u * along - perp * h);
    return;
  }
  if (ca || cb) {
    const Circle& c = ca ? *ca : *cb;
    const Param q = as_param(ca ? b : a);
    const Point r = q.p - c.c;
    const double A = dot(q.v, q.v), B = dot(q.v, r), C = dot(r, r) - c.r * c.r;
    const double disc = B * B - A * C;
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    for (double t : {(-B - sq) / A, (-B + sq) / A})
      if (t >= q.tlo && t <= q.thi) out.push_back(q.p + q.v * t);
    return;
  }
  const Param p = as_param(a);
  const Param q = as_param(b);
  const double den = cross2(p.v, q.v);
  if (den == 0.0) return;
  const Point w = q.p - p.p;
  const double t = cross2(w, q.v) / den;
  const double u = cross2(w, p.v) / den;
  if (t >= p.tlo && t <= p.thi && u >= q.tlo && u <= q.thi) out.push_back(p.p + p.v * t);
}

inline double union_distance(const FiniteUnion& u, const Point& x, int dim);

}  // namespace detail

/// d(x): Euclidean distance from x to the complement of the region.
inline double distance(const Region& region, const Point& x) {
  detail::require_dim(region, x.dim());
  detail::require(contains(region, x), ErrorCode::PointOutsideRegion, "distance: x not in region");
  if (const auto* u = region.as<FiniteUnion>()) return detail::union_distance(*u, x, region.dim());
  return detail::primitive_distance(region, x);
}

namespace detail {

inline std::vector<Interval> as_intervals(const Region& r) {
  return std::visit(
      [&](const auto& s) -> std::vector<Interval> {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, HalfSpace>) {
          const double b = s.offset / s.normal[0];
          return s.normal[0] > 0 ? std::vector<Interval>{{b, kInf}} : std::vector<Interval>{{-kInf, b}};
        } else if constexpr (std::is_same_v<S, Ball>) {
          return {{s.center[0] - s.radius, s.center[0] + s.radius}};
        } else if constexpr (std::is_same_v<S, AxisBox>) {
          return {{s.lower[0], s.upper[0]}};
        } else if constexpr (std::is_same_v<S, IntervalUnion>) {
          return s.intervals;
        } else if constexpr (std::is_same_v<S, FiniteUnion>) {
          std::vector<Interval> all;
          for (const auto& m : s.members) {
            auto part = as_intervals(m);
            all.insert(all.end(), part.begin(), part.end());
          }
          return all;
        } else {
          return {};
        }
      },
      r.shape());
}

inline bool is_primitive(const Region& r) { return !r.as<FiniteUnion>(); }

// Flattens nested unions into primitive members.
inline void flatten(const Region& r, std::vector<const Region*>& out) {
  if (const auto* u = r.as<FiniteUnion>()) {
    for (const auto& m : u->members) flatten(m, out);
  } else {
    out.push_back(&r);
  }
}

inline double union_distance(const FiniteUnion& u, const Point& x, int dim) {
  if (dim == 1) {
    std::vector<Interval> all;
    for (const auto& m : u.members) {
      auto part = as_intervals(m);
      all.insert(all.end(), part.begin(), part.end());
    }
    const Region merged = Region::merged_intervals(std::move(all));
    return primitive_distance(merged, x);
  }
  std::vector<const Region*> members;
  for (const auto& m : u.members) flatten(m, members);

  // Candidate filtering: the member reaching deepest around x bounds d from
  // below; if one of its nearest boundary points is outside every other
  // member, that bound is attained.
  double best = 0.0;
  std::size_t best_member = members.size();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!contains(*members[i], x)) continue;
    const double di = primitive_distance(*members[i], x);
    if (di > best) {
      best = di;
      best_member = i;
    }
  }
  double scale = best;
  const double eps = 1e-12 * std::max(1.0, scale);
  auto outside_all = [&](const Point& y, std::size_t skip_a, std::size_t skip_b) {
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (j == skip_a || j == skip_b) continue;
      if (depth(*members[j], y) > eps) return false;
    }
    return true;
  };
  for (const auto& y : foot_points(*members[best_member], x))
    if (outside_all(y, best_member, best_member)) return best;

  if (dim == 3)
    throw Error(ErrorCode::UnsupportedShape,
                "distance in a 3-D union with overlapping members near x is not resolved analytically");

  // 2-D: exact enumeration of local minimizers on exposed boundary arcs.
  std::vector<OwnedPiece> pieces;
  for (std::size_t i = 0; i < members.size(); ++i) boundary_pieces(*members[i], i, pieces);
  double d = kInf;
  std::vector<Point> cand;
  for (const auto& p : pieces) {
    cand.clear();
    closest_candidates(p.piece, x, cand);
    for (const auto& y : cand)
      if (outside_all(y, p.member, p.member)) d = std::min(d, norm(y - x));
  }
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (pieces[i].member == pieces[j].member) continue;
      cand.clear();
      intersections(pieces[i].piece, pieces[j].piece, cand);
      for (const auto& y : cand)
        if (outside_all(y, pieces[i].member, pieces[j].member)) d = std::min(d, norm(y - x));
    }
  if (!std::isfinite(d)) {
    // Every candidate was covered: the complement is unreachable in the plane
    // only if the union is all of R^2.
    return kInf;
  }
  return std::max(d, best);
}

}  // namespace detail

}  // namespace polyrellich
