#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "polyrellich/errors.hpp"

namespace polyrellich {

/// Shortest round-trip representation, or nan/inf/-inf.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// CSV with a `# schema:` comment line, a header row, then data rows.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& schema, std::vector<std::string> columns)
      : out_(path), columns_(columns.size()) {
    detail::require(out_.good(), ErrorCode::InvalidArgument, "cannot open output file '" + path + "'");
    out_ << "# schema: " << schema << "\n";
    write_row(columns);
  }

  class Row {
   public:
    explicit Row(CsvWriter& w) : w_(w) {}
    Row& operator<<(double v) { return add(format_double(v)); }
    Row& operator<<(const std::optional<double>& v) { return add(v ? format_double(*v) : std::string()); }
    Row& operator<<(long long v) { return add(std::to_string(v)); }
    Row& operator<<(int v) { return add(std::to_string(v)); }
    Row& operator<<(std::size_t v) { return add(std::to_string(v)); }
    Row& operator<<(bool v) { return add(v ? "true" : "false"); }
    Row& operator<<(const std::string& v) { return add(v); }
    ~Row() { w_.write_row(cells_); }

   private:
    Row& add(std::string s) {
      cells_.push_back(std::move(s));
      return *this;
    }
    CsvWriter& w_;
    std::vector<std::string> cells_;
  };

  Row row() { return Row(*this); }

 private:
  void write_row(const std::vector<std::string>& cells) {
    detail::require(cells.size() == columns_, ErrorCode::InvariantViolation, "CSV row has the wrong number of cells");
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }

  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace polyrellich
