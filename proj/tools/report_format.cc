#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "cli.h"

namespace trojanforge::cli {

std::string format_rate(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", rate);
  return buf;
}

std::string format_csv(const std::vector<DiffReport>& reports) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : reports) {
    out << to_string(r.design) << ',' << r.trojan << ',' << r.cycles << ','
        << r.value_mismatches << ',' << r.validation_errors << ',';
    if (r.first_trigger_cycle) out << *r.first_trigger_cycle;
    out << ',' << format_rate(r.error_rate) << '\n';
  }
  return out.str();
}

std::string format_json(const std::vector<DiffReport>& reports) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json row;
    row["design"] = std::string(to_string(r.design));
    row["trojan"] = r.trojan;
    row["cycles"] = r.cycles;
    row["value_mismatches"] = r.value_mismatches;
    row["validation_errors"] = r.validation_errors;
    row["first_trigger"] = r.first_trigger_cycle
                               ? nlohmann::ordered_json(*r.first_trigger_cycle)
                               : nlohmann::ordered_json(nullptr);
    // Same rounding as the CSV column.
    row["rate"] = nlohmann::ordered_json::parse(format_rate(r.error_rate));
    rows.push_back(std::move(row));
  }
  return rows.dump(2) + "\n";
}

std::string format_reports(const std::vector<DiffReport>& reports,
                           ReportFormat format) {
  return format == ReportFormat::kCsv ? format_csv(reports)
                                      : format_json(reports);
}

}  // namespace trojanforge::cli
