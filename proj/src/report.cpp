#include "qzip/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace qzip {

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

std::string Report::to_json_string() const {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["mode"] = mode;
  j["results"] = payload;
  return j.dump(2) + "\n";
}

std::string Report::to_csv_string() const {
  std::string out;
  for (std::size_t i = 0; i < csv_header.size(); ++i) {
    if (i) out += ',';
    out += csv_header[i];
  }
  out += '\n';
  for (const auto& row : csv_rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

void emit_report(const Report& report, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << report.to_json_string();
  } else if (format == "csv") {
    if (report.csv_header.empty()) {
      throw std::invalid_argument("emit_report: mode has no CSV form");
    }
    out << report.to_csv_string();
  } else {
    throw std::invalid_argument("emit_report: unknown format " + format);
  }
  if (!out) throw std::runtime_error("emit_report: write failed");
}

void emit_report_file(const Report& report, const std::string& format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_report_file: cannot open " + path);
  emit_report(report, format, out);
}

}  // namespace qzip
