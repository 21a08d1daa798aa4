#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "polyrellich/gauss.hpp"
#include "polyrellich/parallel.hpp"
#include "polyrellich/random.hpp"
#include "polyrellich/region.hpp"
#include "polyrellich/sampling.hpp"

namespace polyrellich {

/// Open dyadic cube prod_i (a_i / 2^n, (a_i + 1) / 2^n). Negative levels are
/// cubes of side 2^{|n|}.
struct DyadicCube {
  int level = 0;
  std::array<std::int64_t, 3> index{};
  int dim = 1;

  double side() const { return std::ldexp(1.0, -level); }
  double lower(int i) const { return std::ldexp(static_cast<double>(index[static_cast<std::size_t>(i)]), -level); }
  double upper(int i) const {
    return std::ldexp(static_cast<double>(index[static_cast<std::size_t>(i)] + 1), -level);
  }
  double volume() const { return std::ldexp(1.0, -level * dim); }

  Point center() const {
    Point c = Point::zero(dim);
    for (int i = 0; i < dim; ++i) c[i] = 0.5 * (lower(i) + upper(i));
    return c;
  }

  AxisBox box() const {
    AxisBox b{Point::zero(dim), Point::zero(dim)};
    for (int i = 0; i < dim; ++i) {
      b.lower[i] = lower(i);
      b.upper[i] = upper(i);
    }
    return b;
  }

  /// Ancestor `generations` levels up (floor division on every index).
  DyadicCube ancestor(int generations) const {
    DyadicCube a = *this;
    a.level -= generations;
    for (int i = 0; i < dim; ++i) a.index[static_cast<std::size_t>(i)] >>= generations;  // arithmetic shift floors
    return a;
  }

  DyadicCube child(unsigned which) const {
    DyadicCube c = *this;
    c.level += 1;
    for (int i = 0; i < dim; ++i)
      c.index[static_cast<std::size_t>(i)] = 2 * index[static_cast<std::size_t>(i)] + ((which >> i) & 1u);
    return c;
  }

  friend bool operator==(const DyadicCube& a, const DyadicCube& b) {
    return a.dim == b.dim && a.level == b.level && a.index == b.index;
  }
  friend bool operator<(const DyadicCube& a, const DyadicCube& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.index < b.index;
  }
};

/// True when the cubes share interior points, decided in integer arithmetic:
/// dyadic cubes are either nested or disjoint.
inline bool cubes_overlap(const DyadicCube& a, const DyadicCube& b) {
  const DyadicCube& fine = a.level >= b.level ? a : b;
  const DyadicCube& coarse = a.level >= b.level ? b : a;
  return fine.ancestor(fine.level - coarse.level) == coarse;
}

struct DyadicCubeHash {
  std::size_t operator()(const DyadicCube& c) const noexcept {
    std::uint64_t h = splitmix64(static_cast<std::uint64_t>(c.level) + 0x1234567ULL);
    for (int i = 0; i < c.dim; ++i) h = splitmix64(h ^ static_cast<std::uint64_t>(c.index[static_cast<std::size_t>(i)]));
    return static_cast<std::size_t>(h);
  }
};

struct Decomposition {
  int dim = 1;
  std::vector<DyadicCube> cubes;   // maximal cubes inside the region, sorted
  std::vector<DyadicCube> collar;  // cubes at the level cap that meet the boundary
  double residual_measure = 0.0;   // measure of the region not covered by `cubes`
  bool residual_exact = false;     // true when derived from a closed-form measure
  int level_cap = 12;
  int coarsest_level = 0;
};

enum class CubeClass { Inside, Outside, Straddle };

namespace detail {

inline CubeClass classify_primitive(const Region& region, const AxisBox& c) {
  const int dim = region.dim();
  const unsigned corners = 1u << dim;
  auto corner = [&](unsigned k) {
    Point p = Point::zero(dim);
    for (int i = 0; i < dim; ++i) p[i] = ((k >> i) & 1u) ? c.upper[i] : c.lower[i];
    return p;
  };
  return std::visit(
      [&](const auto& s) -> CubeClass {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, HalfSpace>) {
          double lo = kInf, hi = -kInf;
          for (unsigned k = 0; k < corners; ++k) {
            const double v = dot(s.normal, corner(k)) - s.offset;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
          }
          const double tol = 1e-14 * (1.0 + std::abs(s.offset));
          if (lo >= tol) return CubeClass::Inside;
          if (hi <= -tol) return CubeClass::Outside;
          return CubeClass::Straddle;
        } else if constexpr (std::is_same_v<S, Ball>) {
          double far = 0.0, near = 0.0;
          for (int i = 0; i < dim; ++i) {
            const double a = c.lower[i] - s.center[i];
            const double b = c.upper[i] - s.center[i];
            far += std::max(a * a, b * b);
            const double q = std::clamp(s.center[i], c.lower[i], c.upper[i]) - s.center[i];
            near += q * q;
          }
          const double r2 = s.radius * s.radius;
          if (far <= r2 * (1.0 - 1e-14)) return CubeClass::Inside;
          if (near >= r2 * (1.0 + 1e-14)) return CubeClass::Outside;
          return CubeClass::Straddle;
        } else if constexpr (std::is_same_v<S, AxisBox>) {
          bool inside = true, overlap = true;
          for (int i = 0; i < dim; ++i) {
            if (!(s.lower[i] <= c.lower[i] && c.upper[i] <= s.upper[i])) inside = false;
            if (!(s.lower[i] < c.upper[i] && c.lower[i] < s.upper[i])) overlap = false;
          }
          return inside ? CubeClass::Inside : overlap ? CubeClass::Straddle : CubeClass::Outside;
        } else if constexpr (std::is_same_v<S, IntervalUnion>) {
          bool overlap = false;
          for (const auto& iv : s.intervals) {
            if (iv.lo <= c.lower[0] && c.upper[0] <= iv.hi) return CubeClass::Inside;
            if (iv.lo < c.upper[0] && c.lower[0] < iv.hi) overlap = true;
          }
          return overlap ? CubeClass::Straddle : CubeClass::Outside;
        } else if constexpr (std::is_same_v<S, ConvexPolygon>) {
          bool inside = true;
          for (std::size_t e = 0; e < s.vertices.size(); ++e) {
            const auto [n, off] = polygon_edge(s, e);
            double lo = kInf, hi = -kInf;
            for (unsigned k = 0; k < corners; ++k) {
              const double v = dot(n, corner(k)) - off;
              lo = std::min(lo, v);
              hi = std::max(hi, v);
            }
            const double tol = 1e-14 * (1.0 + std::abs(off));
            if (hi <= -tol) return CubeClass::Outside;
            if (lo < tol) inside = false;
          }
          if (inside) return CubeClass::Inside;
          const auto bb = bounding_box(region);
          for (int i = 0; i < dim; ++i)
            if (!(bb->lower[i] < c.upper[i] && c.lower[i] < bb->upper[i])) return CubeClass::Outside;
          return CubeClass::Straddle;
        } else {
          return CubeClass::Straddle;
        }
      },
      region.shape());
}

}  // namespace detail

/// Exact for primitive shapes. For unions a cube is reported inside only when
/// it lies in one member or when d(center) covers the half-diagonal.
inline CubeClass classify_cube(const Region& region, const AxisBox& c) {
  const auto* u = region.as<FiniteUnion>();
  if (!u) return detail::classify_primitive(region, c);
  bool all_outside = true;
  for (const auto& m : u->members) {
    const CubeClass k = classify_cube(m, c);
    if (k == CubeClass::Inside) return CubeClass::Inside;
    if (k != CubeClass::Outside) all_outside = false;
  }
  if (all_outside) return CubeClass::Outside;
  Point center = Point::zero(region.dim());
  double half_diag2 = 0.0;
  for (int i = 0; i < region.dim(); ++i) {
    center[i] = 0.5 * (c.lower[i] + c.upper[i]);
    const double h = 0.5 * (c.upper[i] - c.lower[i]);
    half_diag2 += h * h;
  }
  if (contains(region, center)) {
    try {
      const double d = distance(region, center);
      if (d * d >= half_diag2 * (1.0 + 1e-12)) return CubeClass::Inside;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnsupportedShape) throw;
    }
  }
  return CubeClass::Straddle;
}

/// Maximal dyadic cubes inside a bounded region, found by breadth-first
/// refinement from roots coarser than the region. Cubes still meeting the
/// boundary at `level_cap` form the collar.
inline Decomposition decompose(const Region& region, int level_cap = 12, std::size_t cube_cap = 1000000) {
  const auto bb = bounding_box(region);
  detail::require(bb.has_value(), ErrorCode::InfiniteInradius,
                  "decompose: region is unbounded, so its inradius is infinite");
  const int dim = region.dim();
  double extent = 0.0;
  for (int i = 0; i < dim; ++i) extent = std::max(extent, bb->upper[i] - bb->lower[i]);
  // Root side 2^{-L0} > extent, so no root fits inside the region.
  const int root_level = -static_cast<int>(std::ceil(std::log2(extent))) - 1;
  detail::require(level_cap >= root_level, ErrorCode::InvalidArgument,
                  "level cap " + std::to_string(level_cap) + " is coarser than the root level " +
                      std::to_string(root_level));

  Decomposition dec;
  dec.dim = dim;
  dec.level_cap = level_cap;
  dec.coarsest_level = root_level;

  std::vector<DyadicCube> frontier;
  {
    std::array<std::int64_t, 3> lo{}, hi{};
    for (int i = 0; i < dim; ++i) {
      lo[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::floor(std::ldexp(bb->lower[i], root_level)));
      hi[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::ceil(std::ldexp(bb->upper[i], root_level))) - 1;
    }
    DyadicCube c;
    c.level = root_level;
    c.dim = dim;
    std::array<std::int64_t, 3> idx = lo;
    for (;;) {
      c.index = idx;
      frontier.push_back(c);
      int axis = 0;
      for (; axis < dim; ++axis) {
        auto a = static_cast<std::size_t>(axis);
        if (++idx[a] <= hi[a]) break;
        idx[a] = lo[a];
      }
      if (axis == dim) break;
    }
  }

  for (int level = root_level; !frontier.empty(); ++level) {
    std::vector<CubeClass> cls(frontier.size());
    parallel_for(frontier.size(), [&](std::size_t k) { cls[k] = classify_cube(region, frontier[k].box()); });
    std::vector<DyadicCube> next;
    for (std::size_t k = 0; k < frontier.size(); ++k) {
      if (cls[k] == CubeClass::Inside) {
        dec.cubes.push_back(frontier[k]);
      } else if (cls[k] == CubeClass::Straddle) {
        if (level == level_cap) {
          dec.collar.push_back(frontier[k]);
        } else {
          for (unsigned w = 0; w < (1u << dim); ++w) next.push_back(frontier[k].child(w));
        }
      }
    }
    if (dec.cubes.size() + dec.collar.size() + next.size() > cube_cap)
      throw Error(ErrorCode::CubeBudgetExceeded, "decompose: more than " + std::to_string(cube_cap) + " cubes");
    frontier = std::move(next);
  }
  std::sort(dec.cubes.begin(), dec.cubes.end());
  std::sort(dec.collar.begin(), dec.collar.end());

  double covered = 0.0;
  for (const auto& c : dec.cubes) covered += c.volume();
  const auto measure = exact_measure(region);
  if (measure && std::isfinite(*measure)) {
    dec.residual_measure = std::max(0.0, *measure - covered);
    dec.residual_exact = true;
  } else {
    // Midpoint-grid estimate of the region's share of each collar cube.
    const int per_axis = dim == 3 ? 4 : 8;
    double residual = 0.0;
    for (const auto& c : dec.collar) {
      int inside = 0, total = 0;
      const int nsub = static_cast<int>(std::pow(per_axis, dim));
      for (int s = 0; s < nsub; ++s) {
        Point p = Point::zero(dim);
        int rem = s;
        for (int i = 0; i < dim; ++i) {
          p[i] = c.lower(i) + (rem % per_axis + 0.5) * c.side() / per_axis;
          rem /= per_axis;
        }
        inside += contains(region, p) ? 1 : 0;
        ++total;
      }
      residual += c.volume() * inside / total;
    }
    dec.residual_measure = residual;
  }
  return dec;
}

namespace detail {

// Cube lookup for points: all cubes of the given list, keyed by level.
class CubeIndex {
 public:
  CubeIndex(const std::vector<DyadicCube>& a, const std::vector<DyadicCube>& b) {
    for (const auto* list : {&a, &b})
      for (const auto& c : *list) {
        set_.insert(c);
        levels_.insert(c.level);
      }
  }

  /// True if x lies in the closure of some cube.
  bool covers(const Point& x) const {
    const int dim = x.dim();
    for (int level : levels_) {
      std::array<std::int64_t, 3> base{};
      std::array<bool, 3> on_grid{};
      for (int i = 0; i < dim; ++i) {
        const double s = std::ldexp(x[i], level);
        const double f = std::floor(s);
        base[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(f);
        on_grid[static_cast<std::size_t>(i)] = (f == s);
      }
      for (unsigned mask = 0; mask < (1u << dim); ++mask) {
        bool valid = true;
        DyadicCube c;
        c.level = level;
        c.dim = dim;
        for (int i = 0; i < dim; ++i) {
          const bool back = (mask >> i) & 1u;
          if (back && !on_grid[static_cast<std::size_t>(i)]) valid = false;
          c.index[static_cast<std::size_t>(i)] = base[static_cast<std::size_t>(i)] - (back ? 1 : 0);
        }
        if (valid && set_.count(c)) return true;
      }
    }
    return false;
  }

 private:
  std::unordered_set<DyadicCube, DyadicCubeHash> set_;
  std::set<int> levels_;
};

}  // namespace detail

struct PartitionReport {
  bool disjoint = true;
  std::size_t coverage_samples = 0;
  std::size_t coverage_failures = 0;
  std::size_t distance_samples = 0;
  std::size_t distance_violations = 0;
  double max_distance_ratio = 0.0;  // max over samples of d(x) / (2 sqrt(N) side)
  std::vector<std::string> violations;

  bool ok() const { return disjoint && coverage_failures == 0 && distance_violations == 0; }
};

/// Checks (i) pairwise disjointness by index arithmetic, (ii) that sampled
/// region points fall in a cube or the collar, and (iii) d(x) <= 2 sqrt(N) side
/// at points sampled inside the cubes.
inline PartitionReport verify_partition(const Decomposition& dec, const Region& region, std::size_t samples,
                                        std::uint64_t seed) {
  PartitionReport rep;
  auto note = [&](std::string msg) {
    if (rep.violations.size() < 20) rep.violations.push_back(std::move(msg));
  };
  auto describe = [](const DyadicCube& c) {
    std::string s = "level " + std::to_string(c.level) + " index (";
    for (int i = 0; i < c.dim; ++i) s += (i ? "," : "") + std::to_string(c.index[static_cast<std::size_t>(i)]);
    return s + ")";
  };

  std::unordered_set<DyadicCube, DyadicCubeHash> seen;
  int min_level = dec.level_cap;
  for (const auto& c : dec.cubes) min_level = std::min(min_level, c.level);
  for (const auto& c : dec.cubes) {
    if (!seen.insert(c).second) {
      rep.disjoint = false;
      note("duplicate cube " + describe(c));
    }
  }
  for (const auto& c : dec.cubes)
    for (int up = 1; c.level - up >= min_level; ++up) {
      const DyadicCube a = c.ancestor(up);
      if (seen.count(a)) {
        rep.disjoint = false;
        note("cube " + describe(c) + " lies inside " + describe(a));
      }
    }

  if (dec.cubes.empty()) {
    note("decomposition has no cubes");
    rep.disjoint = rep.disjoint && true;
    rep.coverage_failures = samples;
    return rep;
  }

  const detail::CubeIndex index(dec.cubes, dec.collar);
  const auto pts = sample_interior(region, samples, seed);
  rep.coverage_samples = pts.size();
  for (const auto& x : pts)
    if (!index.covers(x)) {
      ++rep.coverage_failures;
      note("sampled point not covered by any cube or the collar");
    }

  Rng rng = Rng::stream(seed, 0xC0BE);
  const double root_n = std::sqrt(static_cast<double>(dec.dim));
  rep.distance_samples = samples;
  for (std::size_t k = 0; k < samples; ++k) {
    const DyadicCube& c = dec.cubes[rng.below(dec.cubes.size())];
    Point x = Point::zero(dec.dim);
    for (int i = 0; i < dec.dim; ++i) x[i] = c.lower(i) + rng.uniform_open() * c.side();
    if (!contains(region, x)) {
      ++rep.distance_violations;
      note("cube " + describe(c) + " has a point outside the region");
      continue;
    }
    const double ratio = distance(region, x) / (2.0 * root_n * c.side());
    rep.max_distance_ratio = std::max(rep.max_distance_ratio, ratio);
    if (ratio > 1.0 + 1e-12) {
      ++rep.distance_violations;
      note("d(x) exceeds 2 sqrt(N) side in cube " + describe(c));
    }
  }
  return rep;
}

/// Monte Carlo estimate of measure(region minus the cubes), for comparison
/// with `residual_measure`.
inline MonteCarloEstimate coverage_gap_estimate(const Decomposition& dec, const Region& region, std::size_t samples,
                                                std::uint64_t seed) {
  const detail::CubeIndex index(dec.cubes, {});
  return integrate_monte_carlo(
      region, [&](const Point& x) { return index.covers(x) ? 0.0 : 1.0; }, samples, seed);
}

/// Per-cube max of d(x) / (2 sqrt(N) side) over `per_cube` sampled points.
inline std::vector<double> cube_distance_ratios(const Decomposition& dec, const Region& region, std::size_t per_cube,
                                                std::uint64_t seed) {
  std::vector<double> out(dec.cubes.size(), 0.0);
  const double root_n = std::sqrt(static_cast<double>(dec.dim));
  parallel_for(dec.cubes.size(), [&](std::size_t k) {
    Rng rng = Rng::stream(seed, k);
    const DyadicCube& c = dec.cubes[k];
    double worst = 0.0;
    for (std::size_t s = 0; s < per_cube; ++s) {
      Point x = Point::zero(dec.dim);
      for (int i = 0; i < dec.dim; ++i) x[i] = c.lower(i) + rng.uniform_open() * c.side();
      worst = std::max(worst, distance(region, x) / (2.0 * root_n * c.side()));
    }
    out[k] = worst;
  });
  return out;
}

struct CubeIntegral {
  double value = 0.0;
  double error = 0.0;  // |fine - coarse| summed over cubes
};

/// Integral of f over the union of the cubes with tensor Gauss-Legendre on a
/// grid of sub-panels per cube; the error compares against half the panels.
template <class F>
CubeIntegral integrate_over_cubes(const Decomposition& dec, F&& f, int panels = 0, int order = 6) {
  if (panels <= 0) panels = dec.dim == 1 ? 32 : dec.dim == 2 ? 4 : 2;
  const GaussRule& g = gauss_legendre(order);
  const int dim = dec.dim;
  auto cube_rule = [&](const DyadicCube& c, int p) {
    const double h = c.side() / p;
    const int q = static_cast<int>(g.nodes.size());
    long total_cells = 1;
    for (int i = 0; i < dim; ++i) total_cells *= p;
    long total_nodes = 1;
    for (int i = 0; i < dim; ++i) total_nodes *= q;
    double sum = 0.0;
    Point x = Point::zero(dim);
    for (long cell = 0; cell < total_cells; ++cell) {
      std::array<int, 3> ci{};
      long r = cell;
      for (int i = 0; i < dim; ++i) {
        ci[static_cast<std::size_t>(i)] = static_cast<int>(r % p);
        r /= p;
      }
      for (long node = 0; node < total_nodes; ++node) {
        long rn = node;
        double w = 1.0;
        for (int i = 0; i < dim; ++i) {
          const auto k = static_cast<std::size_t>(rn % q);
          rn /= q;
          const double mid = c.lower(i) + (ci[static_cast<std::size_t>(i)] + 0.5) * h;
          x[i] = mid + 0.5 * h * g.nodes[k];
          w *= 0.5 * h * g.weights[k];
        }
        sum += w * f(x);
      }
    }
    return sum;
  };
  std::vector<double> fine(dec.cubes.size()), coarse(dec.cubes.size());
  parallel_for(dec.cubes.size(), [&](std::size_t k) {
    fine[k] = cube_rule(dec.cubes[k], panels);
    coarse[k] = panels >= 2 ? cube_rule(dec.cubes[k], panels / 2) : fine[k];
  });
  CubeIntegral out;
  for (std::size_t k = 0; k < fine.size(); ++k) {
    out.value += fine[k];
    out.error += std::abs(fine[k] - coarse[k]);
  }
  return out;
}

}  // namespace polyrellich
