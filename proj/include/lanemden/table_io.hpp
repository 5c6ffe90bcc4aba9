#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace lanemden {

/// 17 significant digits; infinities and NaN as "inf", "-inf", "nan".
std::string format_number(double x);

/// JSON number, or the strings "inf" / "-inf" / "nan" for non-finite values.
nlohmann::json json_number(double x);
nlohmann::json json_array(const std::vector<double>& values);

/// Header plus rows of numeric cells, written in row order.
class CsvWriter {
public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<double>& cells);
  void row_text(const std::vector<std::string>& cells);

private:
  std::ostream& out_;
  std::size_t width_;
};

}  // namespace lanemden
