#pragma once

// Curvature of 3D metrics given as coordinate components over (nu, r, x).
//
// Conventions (fixed throughout):
//   Gamma^a_bc = 1/2 g^ad (d_b g_dc + d_c g_db - d_d g_bc)
//   R_bd       = d_a Gamma^a_db - d_d Gamma^a_ab + Gamma^a_ae Gamma^e_db - Gamma^a_de Gamma^e_ab
//   P_ab       = R_ab - (R/4) g_ab                       (3D Schouten)
//   C_abc      = nabla_c P_ab - nabla_b P_ac              (Cotton)
//   Einstein-Weyl: trace-free part of nabla_(a X_b) + X_a X_b + P_ab vanishes,
//   with D_a g_bc = 2 X_a g_bc.

#include <array>
#include <functional>
#include <string>
#include <utility>

#include "ewh/jets.hpp"

namespace ewh {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Tensor3 = std::array<Mat3, 3>;  // T[a][b][c]
using JetMatrix = std::array<std::array<Jet3, 3>, 3>;
using JetVector = std::array<Jet3, 3>;

inline constexpr double kDegenerateDet = 1e-12;

// The three coordinate functions seeded as jets at a point.
struct JetPoint {
  Jet3 nu, r, x;
  const Jet3& operator[](int i) const { return i == kNu ? nu : (i == kR ? r : x); }
};

JetPoint seed(const Point& p);

using JetScalarField = std::function<Jet3(const JetPoint&)>;

class MetricField {
 public:
  using Fn = std::function<JetMatrix(const JetPoint&)>;

  MetricField() = default;
  // Only the upper triangle of fn's result is read; the lower triangle is
  // mirrored so the field is exactly symmetric.
  MetricField(std::string label, Fn fn);

  JetMatrix at(const JetPoint& q) const;
  JetMatrix at(const Point& p) const { return at(seed(p)); }
  Mat3 values(const Point& p) const;
  const std::string& label() const { return label_; }

 private:
  std::string label_;
  Fn fn_;
};

class OneFormField {
 public:
  using Fn = std::function<JetVector(const JetPoint&)>;

  OneFormField() = default;
  OneFormField(std::string label, Fn fn);

  JetVector at(const JetPoint& q) const;
  JetVector at(const Point& p) const { return at(seed(p)); }
  std::array<double, 3> values(const Point& p) const;
  const std::string& label() const { return label_; }

  OneFormField scaled(double k) const;

 private:
  std::string label_;
  Fn fn_;
};

struct CurvaturePack {
  Mat3 metric{};
  Mat3 inverse{};
  Tensor3 christoffel{};  // Gamma^a_bc as [a][b][c]
  Mat3 ricci{};
  double scalar = 0.0;
  Mat3 schouten{};
  Tensor3 cotton{};  // C_abc as [a][b][c]
};

// Full stack from metric jets at a point. The jets must be exact through
// order 3 for the Cotton tensor and through order 2 for everything else.
CurvaturePack curvature_from_jets(const JetMatrix& g);

CurvaturePack curvature(const MetricField& g, const Point& p);

Tensor3 christoffel(const MetricField& g, const Point& p);

struct RicciData {
  Mat3 ricci{};
  double scalar = 0.0;
  Mat3 schouten{};
};
RicciData ricci_scalar_schouten(const MetricField& g, const Point& p);

Tensor3 cotton(const MetricField& g, const Point& p);

// Trace-free part (with respect to g) of nabla_(a X_b) + X_a X_b + P_ab.
Mat3 ew_residual(const MetricField& g, const OneFormField& X, const Point& p);
Mat3 ew_residual(const CurvaturePack& curv, const JetVector& X);

// (dX)_ab = d_a X_b - d_b X_a
Mat3 faraday(const OneFormField& X, const Point& p);

// (Omega^2 g, X + d ln Omega).
std::pair<MetricField, OneFormField> conformal_rescale(const MetricField& g, const OneFormField& X,
                                                       const JetScalarField& ln_omega);

// Pull back along r = scale * r' (nu and x unchanged). Expects seeded points.
std::pair<MetricField, OneFormField> rescale_r(const MetricField& g, const OneFormField& X,
                                               double scale);

double determinant(const Mat3& m);
double trace_with(const Mat3& inverse, const Mat3& t);
double max_abs(const Mat3& m);
double max_abs(const Tensor3& t);

// Component names of a symmetric 3x3 in (nu, r, x) order.
inline constexpr std::array<std::pair<int, int>, 6> kSymmetricComponents = {
    {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};
std::string component_name(int a, int b);
std::string component_name(int a, int b, int c);

}  // namespace ewh
