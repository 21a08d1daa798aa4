#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "polyrellich/region.hpp"

namespace polyrellich {

// Schema: {"dim": N, "shape": {"type": "<name>", ...}} with
//   half_space     {"normal": [..], "offset": c}
//   ball           {"center": [..], "radius": r}
//   axis_box       {"lower": [..], "upper": [..]}
//   interval_union {"intervals": [[a, b], ...]}            (dim 1; "inf"/"-inf" allowed)
//   convex_polygon {"vertices": [[x, y], ...]}             (dim 2, counterclockwise)
//   finite_union   {"members": [<shape>, ...]}

namespace detail {

[[noreturn]] inline void field_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, "field '" + path + "': " + what);
}

inline double parse_number(const nlohmann::json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  field_error(path, "expected a number");
}

inline const nlohmann::json& child(const nlohmann::json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) field_error(path + "." + key, "missing");
  return j.at(key);
}

inline Point parse_point(const nlohmann::json& j, int dim, const std::string& path) {
  if (!j.is_array()) field_error(path, "expected an array of " + std::to_string(dim) + " numbers");
  if (static_cast<int>(j.size()) != dim)
    field_error(path, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(j.size()));
  Point p = Point::zero(dim);
  for (int i = 0; i < dim; ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    p[i] = parse_number(j[static_cast<std::size_t>(i)], at);
    if (!std::isfinite(p[i])) field_error(at, "coordinate must be finite");
  }
  return p;
}

inline Region parse_shape(const nlohmann::json& j, int dim, const std::string& path) {
  if (!j.is_object()) field_error(path, "expected an object");
  const auto& type_j = child(j, "type", path);
  if (!type_j.is_string()) field_error(path + ".type", "expected a string");
  const std::string type = type_j.get<std::string>();
  try {
    if (type == "half_space") {
      return Region::half_space(parse_point(child(j, "normal", path), dim, path + ".normal"),
                                parse_number(child(j, "offset", path), path + ".offset"));
    }
    if (type == "ball") {
      return Region::ball(parse_point(child(j, "center", path), dim, path + ".center"),
                          parse_number(child(j, "radius", path), path + ".radius"));
    }
    if (type == "axis_box") {
      return Region::box(parse_point(child(j, "lower", path), dim, path + ".lower"),
                         parse_point(child(j, "upper", path), dim, path + ".upper"));
    }
    if (type == "interval_union") {
      if (dim != 1) field_error(path + ".type", "interval_union requires dim 1");
      const auto& list = child(j, "intervals", path);
      if (!list.is_array()) field_error(path + ".intervals", "expected an array");
      std::vector<Interval> ivs;
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string at = path + ".intervals[" + std::to_string(i) + "]";
        if (!list[i].is_array() || list[i].size() != 2) field_error(at, "expected [lo, hi]");
        ivs.push_back({parse_number(list[i][0], at + "[0]"), parse_number(list[i][1], at + "[1]")});
      }
      return Region::intervals(std::move(ivs));
    }
    if (type == "convex_polygon") {
      if (dim != 2) field_error(path + ".type", "convex_polygon requires dim 2");
      const auto& list = child(j, "vertices", path);
      if (!list.is_array()) field_error(path + ".vertices", "expected an array");
      std::vector<Point> vs;
      for (std::size_t i = 0; i < list.size(); ++i)
        vs.push_back(parse_point(list[i], 2, path + ".vertices[" + std::to_string(i) + "]"));
      return Region::polygon(std::move(vs));
    }
    if (type == "finite_union") {
      const auto& list = child(j, "members", path);
      if (!list.is_array()) field_error(path + ".members", "expected an array");
      std::vector<Region> ms;
      for (std::size_t i = 0; i < list.size(); ++i)
        ms.push_back(parse_shape(list[i], dim, path + ".members[" + std::to_string(i) + "]"));
      return Region::union_of(std::move(ms));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    field_error(path, e.what());
  }
  field_error(path + ".type", "unknown shape type '" + type + "'");
}

inline nlohmann::json point_json(const Point& p) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < p.dim(); ++i) a.push_back(p[i]);
  return a;
}

inline nlohmann::json number_json(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

inline nlohmann::json shape_json(const Region& r) {
  return std::visit(
      [&](const auto& s) -> nlohmann::json {
        using S = std::decay_t<decltype(s)>;
        nlohmann::json j;
        j["type"] = shape_name(r);
        if constexpr (std::is_same_v<S, HalfSpace>) {
          j["normal"] = point_json(s.normal);
          j["offset"] = s.offset;
        } else if constexpr (std::is_same_v<S, Ball>) {
          j["center"] = point_json(s.center);
          j["radius"] = s.radius;
        } else if constexpr (std::is_same_v<S, AxisBox>) {
          j["lower"] = point_json(s.lower);
          j["upper"] = point_json(s.upper);
        } else if constexpr (std::is_same_v<S, IntervalUnion>) {
          j["intervals"] = nlohmann::json::array();
          for (const auto& iv : s.intervals) j["intervals"].push_back({number_json(iv.lo), number_json(iv.hi)});
        } else if constexpr (std::is_same_v<S, ConvexPolygon>) {
          j["vertices"] = nlohmann::json::array();
          for (const auto& v : s.vertices) j["vertices"].push_back(point_json(v));
        } else {
          j["members"] = nlohmann::json::array();
          for (const auto& m : s.members) j["members"].push_back(shape_json(m));
        }
        return j;
      },
      r.shape());
}

}  // namespace detail

inline Region region_from_json(const nlohmann::json& j) {
  if (!j.is_object()) detail::field_error("$", "expected an object");
  const auto& dim_j = detail::child(j, "dim", "$");
  if (!dim_j.is_number_integer()) detail::field_error("$.dim", "expected an integer");
  const int dim = dim_j.get<int>();
  if (dim < 1 || dim > 3) detail::field_error("$.dim", "must be 1, 2 or 3");
  return detail::parse_shape(detail::child(j, "shape", "$"), dim, "$.shape");
}

inline Region region_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
  return region_from_json(j);
}

inline Region load_region(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open region file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return region_from_string(ss.str());
}

inline nlohmann::json region_to_json(const Region& r) {
  return {{"dim", r.dim()}, {"shape", detail::shape_json(r)}};
}

}  // namespace polyrellich
