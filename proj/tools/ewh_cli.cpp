// ewh: verify Einstein-Weyl structures on near-horizon metrics.
//
//   ewh verify <check-id> [--param value]... [--grid axis=min:max:count]...
//              [--tol t] [--expect-fail] [--json path] [--timing]
//   ewh scan-c --from a --to b --steps n --seed <family> [--param value]... [--csv path]
//   ewh export-plot <check-id> --axis x|r|nu --samples N [--range min:max] [--csv path]
//
// Exit codes: 0 pass, 2 verification failure, 1 usage or runtime error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "ewh/checks.hpp"
#include "ewh/errors.hpp"

namespace {

const std::set<std::string> kStringParams = {"h", "F", "family"};

// Turns leftover "--key value" / "--key=value" pairs into parameters.
void parse_params(const std::vector<std::string>& extras, ewh::ParamMap& params,
                  std::map<std::string, std::string>& fields) {
  for (std::size_t i = 0; i < extras.size(); ++i) {
    std::string key = extras[i];
    if (key.rfind("--", 0) != 0 || key.size() < 3) throw ewh::UsageError("unexpected argument '" + key + "'");
    key = key.substr(2);
    std::string value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else {
      if (i + 1 >= extras.size()) throw ewh::UsageError("parameter --" + key + " needs a value");
      value = extras[++i];
    }
    if (kStringParams.count(key)) {
      fields[key] = value;
      continue;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) {
      throw ewh::UsageError("parameter --" + key + " expects a number, got '" + value + "'");
    }
    params[key] = v;
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ewh::Error("cannot open '" + path + "' for writing");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Einstein-Weyl near-horizon verification engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ewh::kToolVersion);

  ewh::CheckRequest verify;
  std::vector<std::string> grid_args;
  double tol = 0.0;
  std::string json_path;
  bool quiet = false;
  auto* v = app.add_subcommand("verify", "Run one verification check");
  v->add_option("check", verify.check, "thm1, thm2-ode, prop1-iff, dkp, hypercr-family, prop4, chalf-Fode, family:<tag>")
      ->required();
  v->add_option("--grid", grid_args, "axis=min:max:count (nu, r, x)");
  auto* tol_opt = v->add_option("--tol", tol, "Pass threshold on the max residual");
  v->add_flag("--expect-fail", verify.expect_fail, "Invert the exit status");
  v->add_option("--json", json_path, "Write the JSON report here");
  v->add_flag("--timing", verify.timing, "Include wall time in the report");
  v->add_flag("--quiet", quiet, "No summary on stdout");
  v->allow_extras();

  ewh::ScanRequest scan;
  std::string scan_csv_path;
  auto* s = app.add_subcommand("scan-c", "Integrate the 4th order ODE over a range of c");
  s->add_option("--from", scan.from);
  s->add_option("--to", scan.to);
  s->add_option("--steps", scan.steps);
  s->add_option("--seed", scan.seed, "Family supplying the initial jet");
  s->add_option("--csv", scan_csv_path, "Write the table here (default stdout)");
  s->allow_extras();

  ewh::PlotRequest plot;
  std::string axis = "x", range_text, plot_csv_path;
  std::vector<std::string> plot_grid;
  auto* p = app.add_subcommand("export-plot", "Sample a check along one axis as CSV");
  p->add_option("check", plot.base.check)->required();
  p->add_option("--axis", axis)->check(CLI::IsMember({"x", "r", "nu"}));
  p->add_option("--samples", plot.samples);
  p->add_option("--range", range_text, "min:max along the axis");
  p->add_option("--grid", plot_grid, "Fix other coordinates, e.g. nu=0.3");
  p->add_option("--csv", plot_csv_path, "Write CSV here (default stdout)");
  p->allow_extras();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*v) {
      parse_params(v->remaining(), verify.params, verify.fields);
      for (const auto& g : grid_args) verify.grid.apply(g);
      if (*tol_opt) verify.tolerance = tol;
      const ewh::ResidualReport rep = ewh::cmd_verify(verify);
      if (!json_path.empty()) write_text(json_path, rep.to_json());
      if (!quiet) std::cout << rep.summary();
      return rep.exit_code();
    }
    if (*s) {
      std::map<std::string, std::string> fields;
      parse_params(s->remaining(), scan.params, fields);
      write_text(scan_csv_path, ewh::scan_csv(ewh::cmd_scan_c(scan)));
      return 0;
    }
    if (*p) {
      parse_params(p->remaining(), plot.base.params, plot.base.fields);
      for (const auto& g : plot_grid) plot.base.grid.apply(g);
      plot.axis = axis == "nu" ? 'n' : axis[0];
      if (!range_text.empty()) plot.range = ewh::AxisSpec::parse(range_text);
      write_text(plot_csv_path, ewh::cmd_export_plot(plot));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "ewh: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
