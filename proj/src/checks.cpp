#include "ewh/checks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>

#include "ewh/curvature.hpp"
#include "ewh/errors.hpp"
#include "ewh/odesolve.hpp"
#include "ewh/pdeverify.hpp"
#include "ewh/specfun.hpp"

namespace ewh {

namespace {

constexpr double kJetTol = 1e-8;
constexpr double kNumericTol = 1e-5;
constexpr double kSkipGuard = 1e-6;  // |h| below this skips F_from_h points

double param(const ParamMap& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

std::string field_name(const CheckRequest& r, const std::string& key, const std::string& fallback) {
  const auto it = r.fields.find(key);
  return it == r.fields.end() ? fallback : it->second;
}

bool is_family_tag(const std::string& name) {
  try {
    family_tag_from_string(name);
    return true;
  } catch (const UsageError&) {
    return false;
  }
}

// One check, reduced to a per-point evaluator. eval returns false when the
// point is skipped (h too close to zero for F_from_h).
struct Pipeline {
  std::vector<std::string> names;
  std::function<bool(const Point&, std::vector<double>&)> eval;
  Window window;
  AxisSpec default_x;
  double default_tol = kJetTol;
  std::optional<NearHorizonData> nh;  // for (x, h, F) plots
  ParamMap params;
  std::map<std::string, std::string> fields;
  std::vector<std::string> notes;
};

AxisSpec axis_for_window(const Window& w) {
  if (w.bounded()) {
    const double pad = 0.05 * (w.hi - w.lo);
    return {w.lo + pad, w.hi - pad, 5};
  }
  if (std::isfinite(w.lo)) return {w.lo + 0.5, w.lo + 2.5, 5};
  if (std::isfinite(w.hi)) return {w.hi - 2.5, w.hi - 0.5, 5};
  return {-1.0, 1.0, 5};
}

std::vector<std::string> ew_names() {
  std::vector<std::string> out;
  for (const auto& [a, b] : kSymmetricComponents) out.push_back("ew" + component_name(a, b));
  return out;
}

void put_ew(const Mat3& m, std::vector<double>& out, std::size_t at) {
  for (std::size_t i = 0; i < kSymmetricComponents.size(); ++i) {
    const auto [a, b] = kSymmetricComponents[i];
    out[at + i] = std::abs(m[a][b]);
  }
}

// Pole-free x-range of P(x - x0 + a; 0, b).
Window weierstrass_window(double a, double b, double x0) {
  const double omega = weierstrass_half_period(b);
  const double margin = std::isinf(omega) ? 0.3 : std::min(0.3, 0.2 * omega);
  if (std::isinf(omega)) return {x0 + margin - a, x0 + margin - a + 3.0};
  return {x0 + margin - a, x0 + 2.0 * omega - margin - a};
}

// EW residual of the generic structure built from h, plus the ode4 residual of h.
Pipeline thm2_pipeline(ScalarField1D h, double c, Window window) {
  Pipeline pl;
  NearHorizonData d{h, F_from_h_field(h, c), c};
  pl.nh = d;
  pl.window = window;
  pl.names = ew_names();
  pl.names.push_back("ode4");
  const MetricField g = nh_metric(d);
  const OneFormField X = weyl_oneform_generic(d);
  pl.eval = [g, X, h, c](const Point& p, std::vector<double>& out) {
    const Jet1 hj = h.checked(p.x);
    if (std::abs(hj.value()) <= kSkipGuard) return false;
    put_ew(ew_residual(g, X, p), out, 0);
    out[6] = std::abs(ode4_residual(hj, c));
    return true;
  };
  return pl;
}

Pipeline thm1_pipeline(const CheckRequest& req) {
  Pipeline pl;
  const std::string hname = field_name(req, "h", "zero");
  const ScalarField1D h = named_field(hname, req.params);
  const double a = param(req.params, "a", 1.5), b = param(req.params, "b", 1.0);
  const double x0 = param(req.params, "x0", 0.0), scale = param(req.params, "scale", 1.0);
  const NearHorizonData d = weierstrass_data(h, a, b, x0);
  pl.nh = d;
  pl.fields["h"] = hname;
  pl.params = {{"a", a}, {"b", b}, {"x0", x0}, {"scale", scale}};
  pl.window = h.window();
  if (h.constant() && *h.constant() == 0.0) {
    pl.window = weierstrass_window(a, b, x0);
    pl.default_x = axis_for_window(pl.window);
  } else {
    pl.default_x = {-1.0, 1.0, 5};
  }
  pl.default_tol = weierstrass_closed_form(h) ? kJetTol : kNumericTol;
  pl.names = ew_names();
  const MetricField g = nh_metric(d);
  const OneFormField X = weyl_oneform_generic(d).scaled(scale);
  pl.eval = [g, X](const Point& p, std::vector<double>& out) {
    put_ew(ew_residual(g, X, p), out, 0);
    return true;
  };
  return pl;
}

Pipeline chalf_pipeline(const CheckRequest& req) {
  Pipeline pl = thm1_pipeline(req);
  const NearHorizonData d = *pl.nh;
  pl.names = {"F-ode"};
  pl.params.erase("scale");
  pl.eval = [d](const Point& p, std::vector<double>& out) {
    out[0] = std::abs(F_ode_residual_chalf(d.F.checked(p.x), d.h.checked(p.x)));
    return true;
  };
  return pl;
}

Pipeline thm2_request_pipeline(const CheckRequest& req) {
  const std::string hname = field_name(req, "h", "quadratic");
  ParamMap params = req.params;
  ScalarField1D h;
  Window window = Window::all();
  double c = param(params, "c", 1.0);
  bool numeric = false;
  if (is_family_tag(hname) && hname != "linear") {
    const FamilyInstance fam = family_catalog(family_tag_from_string(hname), params);
    h = fam.h;
    window = fam.window;
    if (!params.count("c")) c = fam.c;
    numeric = fam.tag == FamilyTag::kNumericODE;
  } else {
    h = named_field(hname, params);
  }
  const double eps = param(params, "eps", 0.0);
  if (eps != 0.0) h = h.perturbed(eps);
  Pipeline pl = thm2_pipeline(h, c, window);
  pl.default_x = axis_for_window(window);
  pl.default_tol = numeric ? kNumericTol : kJetTol;
  pl.fields["h"] = hname;
  pl.params = params;
  pl.params["c"] = c;
  pl.params["eps"] = eps;
  return pl;
}

Pipeline prop1_pipeline(const CheckRequest& req) {
  Pipeline pl;
  const std::string hname = field_name(req, "h", "one");
  const std::string fname = field_name(req, "F", "exp-int-h");
  const ScalarField1D h = named_field(hname, req.params);
  const ScalarField1D F = named_field(fname, req.params, &h);
  const NearHorizonData d{h, F, 0.0};
  pl.nh = d;
  pl.fields = {{"h", hname}, {"F", fname}};
  pl.default_x = {-1.0, 1.0, 5};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = b + 1; c < 3; ++c) pl.names.push_back("cotton" + component_name(a, b, c));
  pl.names.push_back("flatness");
  const MetricField g = nh_metric(d);
  pl.eval = [g, d](const Point& p, std::vector<double>& out) {
    const Tensor3 C = cotton(g, p);
    std::size_t i = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = b + 1; c < 3; ++c) out[i++] = std::abs(C[a][b][c]);
    out[i] = std::abs(flatness_defect(d, p.x));
    return true;
  };
  return pl;
}

Pipeline dkp_pipeline(const CheckRequest& req) {
  Pipeline pl;
  const double a = param(req.params, "a", 1.5), b = param(req.params, "b", 1.0);
  const double scale = param(req.params, "scale", 1.0);
  pl.params = {{"a", a}, {"b", b}, {"scale", scale}};
  pl.window = weierstrass_window(a, b, 0.0);
  pl.default_x = axis_for_window(pl.window);
  pl.names = {"dkp"};
  const PotentialField u = dkp_weierstrass(a, b).scaled(scale);
  pl.eval = [u](const Point& p, std::vector<double>& out) {
    out[0] = std::abs(dkp_residual(u, p));
    return true;
  };
  return pl;
}

Pipeline hypercr_pipeline(const CheckRequest& req) {
  Pipeline pl;
  HyperCRParams hp;
  hp.a = param(req.params, "a", 1.0);
  hp.b = param(req.params, "b", 2.0);
  hp.e = param(req.params, "e", 0.3);
  hp.j = param(req.params, "j", 0.5);
  hp.k = param(req.params, "k", -1.0);
  hp.l = param(req.params, "l", 2.0);
  const PotentialField H = hypercr_tanh_family(hp);
  pl.params = H.params();
  pl.default_x = {-1.0, 1.0, 5};
  pl.names = {"hypercr"};
  for (const auto& n : ew_names()) pl.names.push_back(n);
  const auto [g, X] = hypercr_structures(H);
  pl.eval = [H, g, X](const Point& p, std::vector<double>& out) {
    out[0] = std::abs(hypercr_residual(H, p));
    put_ew(ew_residual(g, X, p), out, 1);
    return true;
  };
  return pl;
}

double max_component_gap(const JetMatrix& a, const JetMatrix& b) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int s = 0; s < Jet3::kSize; ++s) m = std::max(m, std::abs(a[i][j][s] - b[i][j][s]));
  return m;
}

double max_component_gap(const JetVector& a, const JetVector& b) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int s = 0; s < Jet3::kSize; ++s) m = std::max(m, std::abs(a[i][s] - b[i][s]));
  return m;
}

Pipeline prop4_pipeline(const CheckRequest& req) {
  Pipeline pl;
  const double c = param(req.params, "c", -1.0), l = param(req.params, "l", -1.0);
  const double b = param(req.params, "b", 0.0);
  pl.params = {{"c", c}, {"l", l}, {"b", b}};
  const auto [g, X] = prop4_structures(c, l, b);
  const ScalarField1D h = prop4_h(c, l, b);
  pl.default_x = {-1.0, 1.0, 5};
  pl.names = ew_names();
  pl.names.push_back("ode2");
  pl.names.push_back("align-hypercr");
  const bool nh_form = c == -1.0;
  const auto hyper = rescale_r(hypercr_structures(hypercr_from_h(h, c)).first,
                               hypercr_structures(hypercr_from_h(h, c)).second, -0.5);
  std::optional<std::pair<MetricField, OneFormField>> nh;
  if (nh_form) {
    ScalarField1D F("h^2 - h'", [h](double x) {
      const Jet1 hj = h.at(x);
      return hj * hj - hj.derivative(0);
    });
    const NearHorizonData d{h, F, -1.0};
    pl.nh = d;
    nh = std::make_pair(nh_metric(d), weyl_oneform_generic(d));
    pl.names.push_back("align-nh");
    pl.names.push_back("ode4");
  }
  pl.eval = [=](const Point& p, std::vector<double>& out) {
    put_ew(ew_residual(g, X, p), out, 0);
    const Jet1 hj = h.checked(p.x);
    out[6] = std::abs(ode2_residual(hj, -2.0 * c, 0.0));
    // Compare through order 2: the hyperCR side differentiates H twice.
    const JetPoint q = seed(p);
    auto trunc = [](const JetMatrix& m) {
      JetMatrix o = m;
      for (auto& row : o)
        for (auto& e : row)
          for (int s = 0; s < Jet3::kSize; ++s)
            if (Jet3::degree_of(s) > 2) e.coeffs()[s] = 0.0;
      return o;
    };
    auto trunc_v = [](const JetVector& v) {
      JetVector o = v;
      for (auto& e : o)
        for (int s = 0; s < Jet3::kSize; ++s)
          if (Jet3::degree_of(s) > 1) e.coeffs()[s] = 0.0;
      return o;
    };
    out[7] = std::max(max_component_gap(trunc(hyper.first.at(q)), trunc(g.at(q))),
                      max_component_gap(trunc_v(hyper.second.at(q)), trunc_v(X.at(q))));
    if (nh) {
      out[8] = std::max(max_component_gap(trunc(nh->first.at(q)), trunc(g.at(q))),
                        max_component_gap(trunc_v(nh->second.at(q)), trunc_v(X.at(q))));
      out[9] = std::abs(ode4_residual(hj, c));
    }
    return true;
  };
  return pl;
}

Pipeline family_pipeline(const CheckRequest& req, const std::string& tag_name) {
  const FamilyTag tag = family_tag_from_string(tag_name);
  const FamilyInstance fam = family_catalog(tag, req.params);
  Pipeline pl;
  const double eps = param(req.params, "eps", 0.0);
  ScalarField1D h = eps != 0.0 ? fam.h.perturbed(eps) : fam.h;
  if (tag == FamilyTag::kWeierstrass) {
    const NearHorizonData d = fam.data();
    pl.nh = d;
    pl.names = ew_names();
    pl.names.push_back("F-ode");
    const MetricField g = nh_metric(d);
    const OneFormField X = weyl_oneform_generic(d);
    pl.eval = [g, X, d](const Point& p, std::vector<double>& out) {
      put_ew(ew_residual(g, X, p), out, 0);
      out[6] = std::abs(F_ode_residual_chalf(d.F.checked(p.x), d.h.checked(p.x)));
      return true;
    };
  } else {
    pl = thm2_pipeline(h, fam.c, fam.window);
    const auto base_eval = pl.eval;
    const auto ode2 = fam.ode2;
    const auto first = fam.first_integral;
    if (ode2) pl.names.push_back("ode2");
    if (first) pl.names.push_back("first-integral");
    pl.eval = [base_eval, h, ode2, first](const Point& p, std::vector<double>& out) {
      std::size_t i = 7;
      const Jet1 hj = h.checked(p.x);
      if (ode2) out[i++] = std::abs(ode2_residual(hj, ode2->first, ode2->second));
      if (first) out[i++] = std::abs(ode3_first_integral(hj) - *first);
      return base_eval(p, out);
    };
  }
  pl.window = fam.window;
  pl.default_x = axis_for_window(fam.window);
  pl.default_tol = tag == FamilyTag::kNumericODE ? kNumericTol : kJetTol;
  pl.params = fam.params;
  pl.params["eps"] = eps;
  pl.fields["family"] = tag_name;
  return pl;
}

Pipeline build_pipeline(const CheckRequest& req) {
  const std::string& id = req.check;
  if (id == "thm1") return thm1_pipeline(req);
  if (id == "thm2-ode") return thm2_request_pipeline(req);
  if (id == "prop1-iff") return prop1_pipeline(req);
  if (id == "dkp") return dkp_pipeline(req);
  if (id == "hypercr-family") return hypercr_pipeline(req);
  if (id == "prop4") return prop4_pipeline(req);
  if (id == "chalf-Fode") return chalf_pipeline(req);
  if (id.rfind("family:", 0) == 0) return family_pipeline(req, id.substr(7));
  throw UsageError("unknown check '" + id + "'");
}

struct GridResult {
  std::vector<double> maxima;
  std::size_t skipped = 0;
};

// Evaluates every point on a worker pool; maxima are reduced in point order
// afterwards so the result does not depend on scheduling.
GridResult evaluate_grid(const Pipeline& pl, const std::vector<Point>& points) {
  const std::size_t n = pl.names.size();
  std::vector<std::vector<double>> values(points.size(), std::vector<double>(n, 0.0));
  std::vector<char> used(points.size(), 0);
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        used[i] = pl.eval(points[i], values[i]) ? 1 : 0;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t nthreads = std::min<std::size_t>(worker_count(), points.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  GridResult out;
  out.maxima.assign(n, 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!used[i]) {
      ++out.skipped;
      continue;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double v = values[i][k];
      out.maxima[k] = (std::isnan(v) || std::isnan(out.maxima[k])) ? std::nan("") : std::max(out.maxima[k], v);
    }
  }
  return out;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = {"thm1", "thm2-ode", "prop1-iff", "dkp",
                                               "hypercr-family", "prop4", "chalf-Fode"};
  return ids;
}

std::string check_anchor(const std::string& check) {
  static const std::map<std::string, std::string> anchors = {
      {"thm1", "Weierstrass family: F = wp(int e^{H/2} dx + a; 0, b) e^H, c = -1/2, is Einstein-Weyl"},
      {"thm2-ode", "F = (h'' + 4chh' + 2c^2h^3)/(2h) with the generic 1-form is Einstein-Weyl iff h solves the 4th order ODE"},
      {"prop1-iff", "near-horizon metric is locally conformally flat iff F' = F h"},
      {"dkp", "u = -(r^2/2) wp(x + a; 0, b) solves the dKP equation 2(u_nu - u u_r)_r = u_xx"},
      {"hypercr-family", "H = j tanh^3(A) + k tanh(A) + l solves the hyperCR equation and gives an Einstein-Weyl structure"},
      {"prop4", "tanh data h'' = -2chh' defines a hyperCR Einstein-Weyl structure; c = -1 is near-horizon"},
      {"chalf-Fode", "c = -1/2: -3Fh^2 + 5hF' + 2Fh' + 12F^2 - 2F'' = 0 for the Weierstrass F"},
  };
  const auto it = anchors.find(check);
  if (it != anchors.end()) return it->second;
  if (check.rfind("family:", 0) == 0) {
    return "closed-form solution family '" + check.substr(7) +
           "' of the reduction ODEs, checked against the 4th order ODE and the Einstein-Weyl equations";
  }
  throw UsageError("unknown check '" + check + "'");
}

ScalarField1D named_field(const std::string& name, const ParamMap& params, const ScalarField1D* h) {
  if (name == "zero") return field_zero();
  if (name == "one") return field_constant(1.0);
  if (name == "sin") return field_sin();
  if (name == "cos") return field_cos();
  if (name == "exp") return field_exp();
  if (name == "linear") return field_linear(param(params, "l", 1.0), param(params, "b", 0.0));
  if (name == "constant") return field_constant(param(params, "k", 1.0));
  if (name == "exp-int-h") {
    if (!h) throw UsageError("field 'exp-int-h' needs h");
    return field_exp_primitive(*h, param(params, "x0", 0.0));
  }
  if (is_family_tag(name)) return family_catalog(family_tag_from_string(name), params).h;
  throw UsageError("unknown field '" + name + "'");
}

int worker_count() {
  if (const char* env = std::getenv("EWH_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(std::min(n, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ResidualReport cmd_verify(const CheckRequest& request) {
  const auto t0 = std::chrono::steady_clock::now();
  const Pipeline pl = build_pipeline(request);
  ResidualReport rep;
  rep.check = request.check;
  rep.anchor = check_anchor(request.check);
  rep.grid = request.grid;
  if (!request.grid.x_given) rep.grid.x = pl.default_x;
  for (double x : rep.grid.x.samples()) {
    if (!pl.window.contains(x)) {
      throw WindowError(request.check + ": grid x = " + fmt17(x) + " outside the admissible window");
    }
  }
  rep.tolerance = request.tolerance.value_or(pl.default_tol);
  rep.expect_fail = request.expect_fail;
  rep.params = pl.params;
  rep.fields = pl.fields;
  rep.notes = pl.notes;
  const GridResult res = evaluate_grid(pl, rep.grid.points());
  if (res.skipped == rep.grid.points().size()) {
    throw SingularPointError(request.check + ": every grid point has |h| below the F_from_h guard", 0.0);
  }
  if (res.skipped) {
    rep.notes.push_back(std::to_string(res.skipped) + " grid points skipped where |h| <= 1e-6");
  }
  for (std::size_t k = 0; k < pl.names.size(); ++k) rep.components[pl.names[k]] = res.maxima[k];
  rep.finalize();
  if (request.timing) {
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return rep;
}

// ---------------------------------------------------------------------------
// scan-c

namespace {

// Distance between the first two interior maxima of h, if any.
std::optional<double> estimate_period(const Trajectory& t) {
  constexpr int kSamples = 2000;
  const double a = t.x_begin(), b = t.x_end();
  std::vector<double> xs, hs;
  for (int i = 0; i <= kSamples; ++i) {
    const double x = a + (b - a) * i / kSamples;
    xs.push_back(x);
    hs.push_back(t.at(x)[0]);
  }
  std::vector<double> peaks;
  for (int i = 1; i < kSamples; ++i) {
    if (hs[i] > hs[i - 1] && hs[i] >= hs[i + 1]) {
      // refine on the sign change of h'
      double lo = xs[i - 1], hi = xs[i + 1];
      for (int k = 0; k < 100; ++k) {
        const double mid = 0.5 * (lo + hi);
        (t.at(mid)[1] > 0.0 ? lo : hi) = mid;
      }
      peaks.push_back(0.5 * (lo + hi));
      if (peaks.size() == 2) return std::abs(peaks[1] - peaks[0]);
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<ScanRow> cmd_scan_c(const ScanRequest& req) {
  if (req.steps < 1) throw UsageError("scan-c: steps must be >= 1");
  const FamilyTag tag = family_tag_from_string(req.seed);
  const FamilyInstance seed = family_catalog(tag, req.params);
  const double x0 = param(req.params, "x0", axis_for_window(seed.window).min);
  const double span = param(req.params, "span", 2.0);
  if (!seed.window.contains(x0)) throw WindowError("scan-c: x0 outside the seed window");
  const auto d = derivatives_of(seed.h.at(x0));

  std::vector<ScanRow> rows;
  for (int i = 0; i < req.steps; ++i) {
    ScanRow row;
    row.c = req.steps == 1 ? req.from : req.from + (req.to - req.from) * i / (req.steps - 1);
    row.x_start = row.x_end = x0;
    if (std::abs(d[0]) <= kSkipGuard) {
      row.status = "singular-start";
      row.message = "|h(x0)| <= 1e-6";
      rows.push_back(row);
      continue;
    }
    try {
      IvpSpec spec;
      spec.dimension = 4;
      spec.x0 = x0;
      spec.y0 = {d[0], d[1], d[2], d[3]};
      const double c = row.c;
      spec.rhs = [c](double, std::span<const double> y, std::span<double> dy) {
        dy[0] = y[1];
        dy[1] = y[2];
        dy[2] = y[3];
        dy[3] = ode4_fourth_derivative(y[0], y[1], y[2], y[3], c);
      };
      spec.guard = [](double, std::span<const double> y) { return std::abs(y[0]) <= kSkipGuard; };
      const auto traj = std::make_shared<Trajectory>(integrate(spec, x0 + span));
      row.status = to_string(traj->stop_reason());
      row.x_end = traj->x_end();
      row.steps = traj->steps();
      for (int k = 0; k <= 100; ++k) {
        const double x = x0 + (row.x_end - x0) * k / 100.0;
        if (seed.window.contains(x)) {
          row.seed_deviation = std::max(row.seed_deviation, std::abs(traj->at(x)[0] - seed.h.value(x)));
        }
      }
      row.period = estimate_period(*traj);
      if (row.period) {
        const Window w{std::min(x0, row.x_end), std::max(x0, row.x_end)};
        ScalarField1D hn("scan", [traj](double x) {
          if (!traj->contains(x)) throw WindowError("scan trajectory");
          const State s = traj->at(x);
          return jet1_from_derivatives({s[0], s[1], s[2], s[3], 0.0});
        }, w);
        row.periodic = w.hi - w.lo > *row.period && periodicity_check(hn, *row.period);
      }
    } catch (const StiffnessError& e) {
      // step-size collapse: the solution leaves every bounded region (pole)
      row.status = "blow-up";
      row.x_end = e.x();
      row.message = e.what();
    } catch (const Error& e) {
      row.status = "error";
      row.message = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "c,status,x_start,x_end,steps,seed_max_deviation,period,periodic,message\n";
  for (const auto& r : rows) {
    std::string msg = r.message;
    std::replace(msg.begin(), msg.end(), ',', ';');
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    os << fmt17(r.c) << ',' << r.status << ',' << fmt17(r.x_start) << ',' << fmt17(r.x_end) << ','
       << r.steps << ',' << fmt17(r.seed_deviation) << ',' << (r.period ? fmt17(*r.period) : "") << ','
       << (r.periodic ? "true" : "false") << ',' << msg << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// export-plot

std::string cmd_export_plot(const PlotRequest& req) {
  if (req.samples < 2) throw UsageError("export-plot: samples must be >= 2");
  const Pipeline pl = build_pipeline(req.base);
  const GridSpec& g = req.base.grid;
  // fixed coordinates: a single-valued grid axis, else a representative value
  auto fixed = [](const AxisSpec& a, double fallback) { return a.count == 1 ? a.min : fallback; };
  const AxisSpec xdef = g.x_given ? g.x : pl.default_x;
  Point base{fixed(g.nu, 0.5), fixed(g.r, 0.5), fixed(xdef, 0.5 * (xdef.min + xdef.max))};

  AxisSpec range;
  int coord = kX;
  if (req.axis == 'x') {
    range = req.range.value_or(xdef);
  } else if (req.axis == 'r') {
    coord = kR;
    range = req.range.value_or(g.r);
  } else if (req.axis == 'n') {
    coord = kNu;
    range = req.range.value_or(g.nu);
  } else {
    throw UsageError("export-plot: axis must be x, r or nu");
  }
  const bool with_hf = coord == kX && pl.nh.has_value();

  std::ostringstream os;
  os << (with_hf ? "x,h,F,residual\n" : "nu,r,x,residual\n");
  bool clipped = false;
  std::vector<double> vals(pl.names.size());
  for (int i = 0; i < req.samples; ++i) {
    Point p = base;
    p[coord] = range.min + (range.max - range.min) * i / (req.samples - 1);
    if (!pl.window.contains(p.x)) {
      clipped = true;
      continue;
    }
    std::fill(vals.begin(), vals.end(), 0.0);
    double res = std::nan("");
    if (pl.eval(p, vals)) {
      res = 0.0;
      for (double v : vals) res = std::isnan(v) ? v : std::max(res, v);
    }
    if (with_hf) {
      double F = std::nan("");
      try {
        F = pl.nh->F.value(p.x);
      } catch (const SingularPointError&) {
        // F_from_h at a zero of h
      }
      os << fmt17(p.x) << ',' << fmt17(pl.nh->h.value(p.x)) << ',' << fmt17(F) << ',' << fmt17(res) << '\n';
    } else {
      os << fmt17(p.nu) << ',' << fmt17(p.r) << ',' << fmt17(p.x) << ',' << fmt17(res) << '\n';
    }
  }
  if (clipped) os << "# window-clipped\n";
  return os.str();
}

}  // namespace ewh
