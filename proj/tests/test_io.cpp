#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "polyrellich/csv.hpp"
#include "polyrellich/region_io.hpp"

using namespace polyrellich;

namespace {

std::string parse_message(const std::string& text) {
  try {
    region_from_string(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    return e.what();
  }
  return "";
}

}  // namespace

TEST(RegionIo, RoundTripsEveryShape) {
  const std::vector<std::string> docs{
      R"({"dim": 2, "shape": {"type": "ball", "center": [0.5, 0], "radius": 2}})",
      R"({"dim": 3, "shape": {"type": "half_space", "normal": [0, 0, 1], "offset": 0.5}})",
      R"({"dim": 2, "shape": {"type": "axis_box", "lower": [0, 0], "upper": [1, 3]}})",
      R"({"dim": 1, "shape": {"type": "interval_union", "intervals": [[0, 1], [2, "inf"]]}})",
      R"({"dim": 2, "shape": {"type": "convex_polygon", "vertices": [[0, 0], [1, 0], [0, 1]]}})",
      R"({"dim": 2, "shape": {"type": "finite_union", "members": [
            {"type": "ball", "center": [0, 0], "radius": 1},
            {"type": "axis_box", "lower": [0, -0.5], "upper": [2, 0.5]}]}})"};
  for (const auto& d : docs) {
    const Region r = region_from_string(d);
    const Region back = region_from_json(region_to_json(r));
    EXPECT_EQ(region_to_json(back), region_to_json(r)) << d;
  }
}

TEST(RegionIo, ErrorsNameTheField) {
  EXPECT_NE(parse_message(R"({"dim": 2, "shape": {"type": "ball", "center": [0, 0], "radius": "x"}})")
                .find("$.shape.radius"),
            std::string::npos);
  EXPECT_NE(parse_message(R"({"dim": 4, "shape": {}})").find("$.dim"), std::string::npos);
  EXPECT_NE(parse_message(R"({"dim": 2})").find("shape"), std::string::npos);
  EXPECT_NE(parse_message(R"({"dim": 2, "shape": {"type": "blob"}})").find("$.shape.type"), std::string::npos);
  EXPECT_NE(parse_message("{\"dim\": 2,").find("malformed"), std::string::npos);
}

TEST(Csv, SchemaHeaderAndRoundTrip) {
  const std::string path = ::testing::TempDir() + "/polyrellich_csv_test.csv";
  {
    CsvWriter w(path, "test v1", {"a", "b", "c"});
    w.row() << 0.1 << std::optional<double>() << 3;
  }
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "# schema: test v1\na,b,c\n0.10000000000000001,,3\n");
  EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
  EXPECT_EQ(format_double(-kInf), "-inf");
  std::remove(path.c_str());
}
