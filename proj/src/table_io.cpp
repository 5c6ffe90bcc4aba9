#include "lanemden/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lanemden {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

nlohmann::json json_array(const std::vector<double>& values) {
  auto arr = nlohmann::json::array();
  for (double v : values) arr.push_back(json_number(v));
  return arr;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out), width_(header.size()) {
  row_text(header);
}

void CsvWriter::row(const std::vector<double>& cells) {
  std::vector<std::string> text;
  text.reserve(cells.size());
  for (double c : cells) text.push_back(format_number(c));
  row_text(text);
}

void CsvWriter::row_text(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::logic_error("CsvWriter: row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace lanemden
