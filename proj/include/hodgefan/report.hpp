#ifndef HODGEFAN_REPORT_HPP
#define HODGEFAN_REPORT_HPP

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hodgefan {

/// One verification check: an observed worst-case error against its threshold.
/// The anchor is the stable identifier of the library invariant being checked.
struct SuiteReport {
  std::string suite;
  std::string check;
  std::string anchor;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;

  static SuiteReport make(std::string suite, std::string check, std::string anchor,
                          double max_error, double tolerance, double runtime_ms = 0.0) {
    SuiteReport r;
    r.suite = std::move(suite);
    r.check = std::move(check);
    r.anchor = std::move(anchor);
    r.max_error = max_error;
    r.tolerance = tolerance;
    r.pass = max_error < tolerance;
    r.runtime_ms = runtime_ms;
    return r;
  }
};

inline void sort_reports(std::vector<SuiteReport>& reports) {
  std::sort(reports.begin(), reports.end(), [](const SuiteReport& a, const SuiteReport& b) {
    if (a.suite != b.suite) return a.suite < b.suite;
    return a.check < b.check;
  });
}

inline bool all_pass(const std::vector<SuiteReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const SuiteReport& r) { return r.pass; });
}

namespace detail {

inline std::string number_repr(double v) {
  std::ostringstream ss;
  ss.precision(12);
  ss << v;
  return ss.str();
}

}  // namespace detail

/// Canonical emission: reports sorted by (suite, check); with_timing=false
/// suppresses wall-clock fields so repeated runs are byte-identical.
inline std::string reports_to_json(std::vector<SuiteReport> reports, bool with_timing = true) {
  sort_reports(reports);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j{{"suite", r.suite},
                     {"check", r.check},
                     {"anchor", r.anchor},
                     {"max_error", detail::number_repr(r.max_error)},
                     {"tolerance", detail::number_repr(r.tolerance)},
                     {"pass", r.pass}};
    j["runtime_ms"] = with_timing ? detail::number_repr(r.runtime_ms) : "0";
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

inline std::string reports_to_csv(std::vector<SuiteReport> reports, bool with_timing = true) {
  sort_reports(reports);
  std::string out = "suite,check,anchor,max_error,tolerance,pass,runtime_ms\n";
  for (const auto& r : reports) {
    out += r.suite + "," + r.check + "," + r.anchor + "," + detail::number_repr(r.max_error) +
           "," + detail::number_repr(r.tolerance) + "," + (r.pass ? "true" : "false") + "," +
           (with_timing ? detail::number_repr(r.runtime_ms) : std::string("0")) + "\n";
  }
  return out;
}

inline std::string report_render(const std::vector<SuiteReport>& reports,
                                 const std::string& format, bool with_timing = true) {
  if (format == "json") return reports_to_json(reports, with_timing);
  if (format == "csv") return reports_to_csv(reports, with_timing);
  throw std::invalid_argument("report_render: unknown format " + format);
}

inline void report_emit(const std::vector<SuiteReport>& reports, const std::string& format,
                        const std::string& path, bool with_timing = true) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("report_emit: cannot open " + path + " for writing");
  out << report_render(reports, format, with_timing);
  if (!out) throw std::runtime_error("report_emit: write failed for " + path);
}

}  // namespace hodgefan

#endif
