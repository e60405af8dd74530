#pragma once

// Sample grids and residual reports.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ewh/jets.hpp"
#include "ewh/nearhorizon.hpp"

namespace ewh {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

struct AxisSpec {
  double min = -1.0;
  double max = 1.0;
  int count = 5;

  std::vector<double> samples() const;
  // "min:max:count", "min:max" (count 5) or a single value (count 1).
  static AxisSpec parse(const std::string& text);
};

struct GridSpec {
  AxisSpec nu;
  AxisSpec r;
  AxisSpec x;
  bool x_given = false;

  std::vector<Point> points() const;
  // Applies "nu=a:b:n", "r=..." or "x=..."; throws UsageError on bad input.
  void apply(const std::string& assignment);
};

struct ResidualReport {
  std::string check;
  std::string anchor;
  GridSpec grid;
  std::map<std::string, double> components;  // per-component max |residual|
  double overall = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool expect_fail = false;
  ParamMap params;
  std::map<std::string, std::string> fields;  // named inputs (h, F, ...)
  std::vector<std::string> notes;
  std::optional<double> wall_seconds;  // only serialised when requested

  // Recomputes overall and pass from components and tolerance.
  void finalize();
  bool succeeded() const { return pass != expect_fail; }
  int exit_code() const { return succeeded() ? 0 : 2; }

  std::string to_json() const;
  std::string summary() const;
};

}  // namespace ewh
