#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qzip {

inline constexpr int kReportSchemaVersion = 1;

// Mode output in both serializable shapes: a JSON payload and, for tabular
// modes, pre-formatted CSV rows with a fixed column order. Identical inputs
// produce byte-identical serializations.
struct Report {
  std::string mode;
  nlohmann::json payload;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;

  std::string to_json_string() const;
  std::string to_csv_string() const;
};

// Stable numeric formatting for CSV cells ('.' decimal separator).
std::string format_number(double value);

void emit_report(const Report& report, const std::string& format, std::ostream& out);
void emit_report_file(const Report& report, const std::string& format, const std::string& path);

}  // namespace qzip
