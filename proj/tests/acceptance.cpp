// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ewh/checks.hpp"
#include "ewh/errors.hpp"
#include "ewh/pdeverify.hpp"
#include "support.hpp"

#ifndef EWH_CLI
#error "EWH_CLI must name the ewh executable"
#endif

using namespace ewh;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  // Records "label=value (<|> bound)" and folds the comparison into ok.
  void below(const std::string& label, double value, double bound) { add(label, value, bound, value < bound, "<"); }
  void above(const std::string& label, double value, double bound) { add(label, value, bound, value > bound, ">"); }
  void require(const std::string& label, bool cond) {
    ok = ok && cond;
    append(label + (cond ? " ok" : " FAILED"));
  }

 private:
  void add(const std::string& label, double value, double bound, bool cond, const char* op) {
    ok = ok && cond;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s=%.2e%s%s%.0e", label.c_str(), value, cond ? " " : " !", op, bound);
    append(buf);
  }
  void append(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

int failures = 0;

void criterion(int id, const std::string& title, double time_limit, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail += std::string(out.detail.empty() ? "" : "; ") + "exception: " + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0 && secs >= time_limit) out.ok = false;
  char timing[64];
  if (time_limit > 0) {
    std::snprintf(timing, sizeof timing, "%.2fs/<%.0fs", secs, time_limit);
  } else {
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
  }
  std::printf("[%s] criterion %2d  %-40s  %s  (%s)\n", out.ok ? "PASS" : "FAIL", id, title.c_str(), timing,
              out.detail.c_str());
  std::fflush(stdout);
  if (!out.ok) ++failures;
}

CheckRequest request(const std::string& check, ParamMap params = {}, std::map<std::string, std::string> fields = {}) {
  CheckRequest r;
  r.check = check;
  r.params = std::move(params);
  r.fields = std::move(fields);
  return r;
}

double max_prefixed(const ResidualReport& r, const std::string& prefix) {
  double m = 0.0;
  for (const auto& [k, v] : r.components)
    if (k.rfind(prefix, 0) == 0) m = std::max(m, std::isnan(v) ? INFINITY : v);
  return m;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + EWH_CLI + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Point grid_point(int i, int j, int k, const Window& xs) {
  auto at = [](double lo, double hi, int n) { return lo + (hi - lo) * n / 4.0; };
  return {at(-1, 1, i), at(-1, 1, j), at(xs.lo, xs.hi, k)};
}

}  // namespace

int main() {
  std::printf("acceptance: ewh %s, %d worker(s)\n", kToolVersion, worker_count());

  criterion(1, "Weierstrass family EW (h = 0, h = sin)", 2.0, [](Outcome& o) {
    const ResidualReport zero = cmd_verify(request("thm1", {}, {{"h", "zero"}}));
    o.below("h=0", zero.overall, 1e-8);
    o.require("grid 5x5x5", zero.grid.points().size() == 125);
    const ResidualReport s = cmd_verify(request("thm1", {}, {{"h", "sin"}}));
    o.below("h=sin", s.overall, 1e-5);
  });

  criterion(2, "Weierstrass negative control (X * 1.01)", 2.0, [](Outcome& o) {
    const ResidualReport r = cmd_verify(request("thm1", {{"scale", 1.01}}, {{"h", "zero"}}));
    o.above("max", r.overall, 1e-4);
  });

  criterion(3, "Cotton iff F' = F h", 2.0, [](Outcome& o) {
    double worst = 0.0;
    const std::vector<std::pair<std::string, ParamMap>> hs = {
        {"one", {}}, {"sin", {}}, {"linear", {{"l", 0.5}, {"b", 0.2}}}};
    for (const auto& [name, params] : hs) {
      const ResidualReport r = cmd_verify(request("prop1-iff", params, {{"h", name}, {"F", "exp-int-h"}}));
      worst = std::max(worst, max_prefixed(r, "cotton"));
    }
    o.below("flat", worst, 1e-9);
    const ResidualReport bad = cmd_verify(request("prop1-iff", {}, {{"h", "one"}, {"F", "one"}}));
    o.above("(1,1)", max_prefixed(bad, "cotton"), 1e-4);
  });

  // per-c budget 5 s
  const std::vector<std::pair<double, std::pair<std::string, ParamMap>>> thm2_cases = {
      {-1.0, {"tanh", {{"c", -1.0}, {"l", -1.0}, {"b", 0.3}}}},
      {0.0, {"jacobi", {{"c", 0.0}}}},
      {1.0, {"quadratic", {{"c", 1.0}, {"b", -1.5}}}},
      {2.0, {"tan", {{"c", 2.0}, {"l", -1.0}}}},
  };
  criterion(4, "4th-order ODE <=> EW for c in {-1,0,1,2}", 4 * 5.0, [&](Outcome& o) {
    for (const auto& [c, spec] : thm2_cases) {
      const auto t0 = std::chrono::steady_clock::now();
      const std::string cs = "c=" + std::to_string(static_cast<int>(c));
      CheckRequest req = request("thm2-ode", spec.second, {{"h", spec.first}});
      req.tolerance = 1e-7;
      o.below(cs + " " + spec.first, cmd_verify(req).overall, 1e-7);
      // numeric solution seeded from the family jet at the left end of its default axis
      const FamilyInstance fam = family_catalog(family_tag_from_string(spec.first), spec.second);
      const double x0 = fam.window.bounded() ? fam.window.lo + 0.05 * (fam.window.hi - fam.window.lo) : 0.5;
      const auto d = derivatives_of(fam.h.at(x0));
      CheckRequest num = request("thm2-ode",
                                 {{"c", c}, {"x0", x0}, {"h0", d[0]}, {"h1", d[1]}, {"h2", d[2]}, {"h3", d[3]},
                                  {"span", 0.5}},
                                 {{"h", "numeric"}});
      num.tolerance = 1e-7;
      o.below(cs + " numeric", cmd_verify(num).overall, 1e-7);
      CheckRequest pert = req;
      pert.params["eps"] = 1e-2;
      o.above(cs + " perturbed", max_prefixed(cmd_verify(pert), "ew"), 1e-5);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      o.below(cs + " seconds", secs, 5.0);
    }
  });

  criterion(5, "factorization over 200 random (alpha, c)", 1.0, [](Outcome& o) {
    auto g = test::make_rng(2024);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double alpha = test::uniform(g, -3, 3), c = test::uniform(g, -3, 3);
      const double beta = reduction_consistency(alpha, c);
      const double h0 = test::uniform(g, 0.2, 1.5) * (i % 2 ? 1 : -1), h1 = test::uniform(g, -1.5, 1.5);
      worst = std::max(worst, std::abs(ode4_residual(ode2_consistent_jet(h0, h1, alpha, beta), c)));
    }
    o.below("max |ode4|", worst, 1e-9);
  });

  criterion(6, "catalogue families and first integrals", 1.0, [](Outcome& o) {
    const std::vector<std::pair<FamilyTag, ParamMap>> fams = {
        {FamilyTag::kLinear, {{"l", 1.2}, {"b", 0.3}}},
        {FamilyTag::kQuadratic, {{"b", 0.4}}},
        {FamilyTag::kRationalPole, {{"gamma", 1.0}, {"b", 0.1}}},
        {FamilyTag::kRationalPole, {{"alpha", 1.3}, {"b", 0.1}}},
        {FamilyTag::kRationalPole, {{"alpha", 1.3}, {"branch", 2.0}, {"b", 0.1}}},
        {FamilyTag::kTanFamily, {{"c", 2.0}, {"l", -1.0}}},
        {FamilyTag::kTanFamily, {{"c", 0.0}, {"l", 1.0}, {"branch", 2.0}}},
        {FamilyTag::kTanhHyperCR, {{"c", -1.0}, {"l", -1.0}, {"b", 0.0}}},
    };
    double worst = 0.0, fi_zero = 0.0, fi_lin = 0.0;
    for (const auto& [tag, params] : fams) {
      const FamilyInstance f = family_catalog(tag, params);
      double lo = -1, hi = 1;
      if (f.window.bounded()) {
        lo = f.window.lo + 0.05 * (f.window.hi - f.window.lo);
        hi = f.window.hi - 0.05 * (f.window.hi - f.window.lo);
      } else if (std::isfinite(f.window.lo)) {
        lo = f.window.lo + 0.5;
        hi = f.window.lo + 2.5;
      }
      for (int i = 0; i <= 100; ++i) {
        const double x = lo + (hi - lo) * i / 100.0;
        const Jet1 h = f.h.at(x);
        worst = std::max(worst, std::abs(ode4_residual(h, f.c)));
        if (tag == FamilyTag::kQuadratic || (tag == FamilyTag::kRationalPole && params.count("gamma"))) {
          fi_zero = std::max(fi_zero, std::abs(ode3_first_integral(h)));
        }
        if (tag == FamilyTag::kLinear) {
          fi_lin = std::max(fi_lin, std::abs(ode3_first_integral(h) - (-0.5 * std::pow(1.2, 3))));
        }
      }
    }
    o.below("max |ode4|", worst, 1e-9);
    o.below("first integral (x-b)^2, 1/(x-b)", fi_zero, 1e-9);
    o.below("first integral l x + b vs -l^3/2", fi_lin, 1e-9);
  });

  criterion(7, "Abel parametric vs hypergeometric", 2.0, [](Outcome& o) {
    const double beta = 2.0, gamma = 1.0;
    double gap = 0.0, ode = 0.0;
    for (int i = 0; i <= 55; ++i) {
      const double z = 0.05 + 0.01 * i;
      const double y = std::sqrt(2.0 / (beta * z));
      const AbelPoint par = abel_parametric(y, 0.0, beta, gamma);
      const AbelPoint hyp = abel_hypergeometric(z, beta, gamma);
      gap = std::max({gap, std::abs(par.h - hyp.h), std::abs(par.x - hyp.x)});
      const AbelSlopes s = abel_slopes(y, 0.0, beta, gamma);
      ode = std::max(ode, std::abs(s.d2h - beta * s.h * s.h * s.h));
    }
    o.below("|(x,h) gap|", gap, 1e-7);
    o.below("|ode2| by implicit differentiation", ode, 1e-6);
  });

  criterion(8, "dKP identity for 10 random (a, b)", 2.0, [](Outcome& o) {
    auto g = test::make_rng(8);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double a = test::uniform(g, -2, 2), b = test::uniform(g, 0.2, 3.0);
      worst = std::max(worst, cmd_verify(request("dkp", {{"a", a}, {"b", b}})).overall);
    }
    o.below("max dkp", worst, 1e-8);
  });

  criterion(9, "hyperCR family, structures and alignment", 3.0, [](Outcome& o) {
    auto g = test::make_rng(9);
    double res = 0.0, ew = 0.0;
    for (int i = 0; i < 10; ++i) {
      ParamMap p = {{"a", test::uniform(g, 0.3, 1.5)}, {"b", test::uniform(g, 0.5, 2.0) * (i % 2 ? -1 : 1)},
                    {"e", test::uniform(g, -1, 1)},    {"j", test::uniform(g, -1, 1)},
                    {"k", test::uniform(g, -1, 1)},    {"l", test::uniform(g, -1, 1)}};
      const ResidualReport r = cmd_verify(request("hypercr-family", p));
      res = std::max(res, r.components.at("hypercr"));
      ew = std::max(ew, max_prefixed(r, "ew"));
    }
    o.below("hypercr", res, 1e-8);
    o.below("structures EW", ew, 1e-8);
    const ResidualReport p4 = cmd_verify(request("prop4", {{"c", -1.0}, {"l", -1.0}, {"b", 0.0}}));
    o.below("tanh-data EW (c=-1)", max_prefixed(p4, "ew"), 1e-8);
    o.below("align with near-horizon", p4.components.at("align-nh"), 1e-12);
    o.below("align with hyperCR after r -> -2r", p4.components.at("align-hypercr"), 1e-12);
  });

  criterion(10, "1000 jet vs finite-difference comparisons", 5.0, [](Outcome& o) {
    auto g = test::make_rng(10);
    const auto indices = test::multi_indices();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const test::Program prog = test::random_program(g);
      const Point p{test::uniform(g, -1, 1), test::uniform(g, -1, 1), test::uniform(g, -1, 1)};
      const auto& m = indices[std::uniform_int_distribution<std::size_t>(0, indices.size() - 1)(g)];
      worst = std::max(worst, test::rel_err(test::program_jet(prog, p).partial(m), fd_oracle(test::program_fn(prog), p, m)));
    }
    o.below("max rel err", worst, 1e-5);
  });

  criterion(11, "conformal gauge invariance", 2.0, [](Outcome& o) {
    auto g = test::make_rng(11);
    NearHorizonData d = weierstrass_data(field_zero(), 1.5, 1.0);
    const Window w1 = family_catalog(FamilyTag::kWeierstrass, {{"a", 1.5}, {"b", 1.0}}).window;
    const Window thm1_x{w1.lo + 0.05 * (w1.hi - w1.lo), w1.hi - 0.05 * (w1.hi - w1.lo)};
    const std::vector<std::tuple<std::string, MetricField, OneFormField, Window>> structures = {
        {"weierstrass", nh_metric(d), weyl_oneform_generic(d), thm1_x},
        {"tanh c=-1", prop4_structures(-1.0, -1.0, 0.0).first, prop4_structures(-1.0, -1.0, 0.0).second, Window{-1, 1}},
    };
    for (const auto& [name, m, X, xs] : structures) {
      double before = 0.0, after = 0.0;
      for (int trial = 0; trial < 3; ++trial) {
        const test::Program w = test::random_program(g, 4);
        const auto [mt, Xt] = conformal_rescale(m, X, [w](const JetPoint& q) { return 0.5 * w(q.nu, q.r, q.x); });
        for (int i = 0; i < 5; ++i)
          for (int j = 0; j < 5; ++j)
            for (int k = 0; k < 5; ++k) {
              const Point p = grid_point(i, j, k, xs);
              if (trial == 0) before = std::max(before, max_abs(ew_residual(m, X, p)));
              after = std::max(after, max_abs(ew_residual(mt, Xt, p)));
            }
      }
      o.below(name + " before", before, 1e-7);
      o.below(name + " after", after, 1e-7);
    }
  });

  criterion(12, "byte-identical JSON across runs", 0.0, [](Outcome& o) {
    const auto dir = std::filesystem::temp_directory_path() / ("ewh_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const std::vector<std::string> commands = {
        "verify thm1 --h sin",
        "verify prop1-iff --h one --F one --expect-fail",
        "verify family:tan --c 2 --l -1",
        "verify prop4 --c -1 --l -1 --b 0",
        "verify thm2-ode --h numeric --c 1 --h0 1 --h1 2 --h2 2 --x0 1",
    };
    int n = 0;
    for (const auto& cmd : commands) {
      const auto a = dir / ("a" + std::to_string(n) + ".json"), b = dir / ("b" + std::to_string(n) + ".json");
      ++n;
      const int ea = run_cli(cmd + " --json \"" + a.string() + "\"");
      const int eb = run_cli(cmd + " --json \"" + b.string() + "\"");
      const std::string ja = slurp(a);
      o.require("`" + cmd + "`", ea == eb && ea != 1 && !ja.empty() && ja == slurp(b));
    }
    std::filesystem::remove_all(dir);
  });

  std::printf("acceptance: %d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
