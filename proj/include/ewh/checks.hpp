#pragma once

// Check registry behind the command-line driver: verify, scan-c and
// export-plot.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ewh/nearhorizon.hpp"
#include "ewh/report.hpp"

namespace ewh {

struct CheckRequest {
  std::string check;
  ParamMap params;
  std::map<std::string, std::string> fields;  // h, F, seed
  GridSpec grid;
  std::optional<double> tolerance;
  bool expect_fail = false;
  bool timing = false;
};

// Base check ids; families are addressed as "family:<tag>".
const std::vector<std::string>& check_ids();
std::string check_anchor(const std::string& check);

// Named scalar fields: zero, one, sin, cos, exp, linear (l, b), constant (k),
// exp-int-h (e^{int h}, needs h), or any family tag.
ScalarField1D named_field(const std::string& name, const ParamMap& params,
                          const ScalarField1D* h = nullptr);

// Worker count: EWH_THREADS when set to a positive integer, else the
// hardware concurrency.
int worker_count();

ResidualReport cmd_verify(const CheckRequest& request);

struct ScanRequest {
  double from = -1.0;
  double to = 2.0;
  int steps = 4;
  std::string seed = "quadratic";
  ParamMap params;  // seed family parameters plus x0, span
};

struct ScanRow {
  double c = 0.0;
  std::string status;  // completed, guard, max-steps, blow-up, singular-start, error
  double x_start = 0.0;
  double x_end = 0.0;
  long steps = 0;
  double seed_deviation = 0.0;  // max |h_numeric - h_seed| along the trajectory
  std::optional<double> period;
  bool periodic = false;
  std::string message;
};

std::vector<ScanRow> cmd_scan_c(const ScanRequest& request);
std::string scan_csv(const std::vector<ScanRow>& rows);

struct PlotRequest {
  CheckRequest base;
  char axis = 'x';  // 'x', 'r' or 'n' (nu)
  int samples = 200;
  std::optional<AxisSpec> range;
};

// CSV with header "x,h,F,residual" along x for checks carrying (h, F), else
// "nu,r,x,residual". Samples outside the admissible x-window are dropped and
// flagged by a trailing "# window-clipped" line.
std::string cmd_export_plot(const PlotRequest& request);

}  // namespace ewh
