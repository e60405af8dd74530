#pragma once

// dKP and hyperCR potentials, their residuals, and the Einstein-Weyl
// structures built from them.

#include <functional>
#include <string>
#include <utility>

#include "ewh/curvature.hpp"
#include "ewh/nearhorizon.hpp"

namespace ewh {

class PotentialField {
 public:
  using Fn = std::function<Jet3(const JetPoint&)>;

  PotentialField() = default;
  PotentialField(std::string label, Fn fn, ParamMap params = {})
      : label_(std::move(label)), fn_(std::move(fn)), params_(std::move(params)) {}

  Jet3 at(const JetPoint& q) const { return fn_(q); }
  Jet3 at(const Point& p) const { return fn_(seed(p)); }
  const std::string& label() const { return label_; }
  const ParamMap& params() const { return params_; }

  PotentialField scaled(double k) const;

 private:
  std::string label_;
  Fn fn_;
  ParamMap params_;
};

// 2 u_nu_r - 2 (u_r^2 + u u_rr) - u_xx
double dkp_residual(const PotentialField& u, const Point& p);

// H_x H_rr - H_r H_xr - H_xx + H_r_nu
double hypercr_residual(const PotentialField& H, const Point& p);

// u = -(r^2/2) P(x + a; 0, b)
PotentialField dkp_weierstrass(double a, double b);

struct HyperCRParams {
  double a = 1.0, b = 1.0, e = 0.0, j = 1.0, k = 0.0, l = 0.0;
};

// H = j tanh^3(A) + k tanh(A) + l with A = (a^2/b) r + b nu + a x + e.
PotentialField hypercr_tanh_family(const HyperCRParams& p);

// H = c h(x) r^2
PotentialField hypercr_from_h(const ScalarField1D& h, double c);

// g = 2 dnu (-2 dr + H_r dx + (2 H_x + H_r^2 / 2) dnu) + dx^2,
// X = 1/2 H_rr dx + 1/2 (H_r H_rr + 2 H_xr) dnu.
std::pair<MetricField, OneFormField> hypercr_structures(const PotentialField& H);

// h = (sqrt(c l)/c) tanh(sqrt(c l)(x + b)).
ScalarField1D prop4_h(double c, double l, double b);

// g = 2 dnu (dr - c h r dx + (r^2/2)(c h' + c^2 h^2) dnu) + dx^2,
// X = c h dx - c r (c h^2 + h') dnu.
std::pair<MetricField, OneFormField> prop4_structures(double c, double l, double b);

}  // namespace ewh
