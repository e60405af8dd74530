#include "ewh/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ewh/errors.hpp"

namespace ewh {

JetPoint seed(const Point& p) {
  return {Jet3::variable(kNu, p.nu), Jet3::variable(kR, p.r), Jet3::variable(kX, p.x)};
}

MetricField::MetricField(std::string label, Fn fn) : label_(std::move(label)), fn_(std::move(fn)) {}

JetMatrix MetricField::at(const JetPoint& q) const {
  JetMatrix g = fn_(q);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < a; ++b) g[a][b] = g[b][a];
  }
  return g;
}

Mat3 MetricField::values(const Point& p) const {
  const JetMatrix g = at(p);
  Mat3 m{};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) m[a][b] = g[a][b].value();
  }
  return m;
}

OneFormField::OneFormField(std::string label, Fn fn)
    : label_(std::move(label)), fn_(std::move(fn)) {}

JetVector OneFormField::at(const JetPoint& q) const { return fn_(q); }

std::array<double, 3> OneFormField::values(const Point& p) const {
  const JetVector v = at(p);
  return {v[0].value(), v[1].value(), v[2].value()};
}

OneFormField OneFormField::scaled(double k) const {
  auto fn = fn_;
  return OneFormField(label_ + " x " + std::to_string(k), [fn, k](const JetPoint& q) {
    JetVector v = fn(q);
    for (auto& c : v) c *= k;
    return v;
  });
}

namespace {

using JetTensor3 = std::array<JetMatrix, 3>;

JetMatrix inverse_jets(const JetMatrix& g) {
  JetMatrix adj;
  adj[0][0] = g[1][1] * g[2][2] - g[1][2] * g[2][1];
  adj[0][1] = g[0][2] * g[2][1] - g[0][1] * g[2][2];
  adj[0][2] = g[0][1] * g[1][2] - g[0][2] * g[1][1];
  adj[1][0] = g[1][2] * g[2][0] - g[1][0] * g[2][2];
  adj[1][1] = g[0][0] * g[2][2] - g[0][2] * g[2][0];
  adj[1][2] = g[0][2] * g[1][0] - g[0][0] * g[1][2];
  adj[2][0] = g[1][0] * g[2][1] - g[1][1] * g[2][0];
  adj[2][1] = g[0][1] * g[2][0] - g[0][0] * g[2][1];
  adj[2][2] = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  const Jet3 det = g[0][0] * adj[0][0] + g[0][1] * adj[1][0] + g[0][2] * adj[2][0];
  if (!(std::abs(det.value()) > kDegenerateDet)) {
    throw DegenerateMetricError("metric is degenerate: |det g| = " +
                                    std::to_string(std::abs(det.value())),
                                det.value());
  }
  const Jet3 inv_det = reciprocal(det);
  for (auto& row : adj) {
    for (auto& e : row) e = e * inv_det;
  }
  return adj;
}

Mat3 values_of(const JetMatrix& m) {
  Mat3 out{};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) out[a][b] = m[a][b].value();
  }
  return out;
}

struct ConnectionJets {
  JetMatrix ginv;
  JetTensor3 gamma;  // Gamma^a_bc
};

ConnectionJets connection(const JetMatrix& g) {
  ConnectionJets out;
  out.ginv = inverse_jets(g);
  JetTensor3 dg;  // dg[c][a][b] = d_c g_ab
  for (int c = 0; c < 3; ++c) {
    for (int a = 0; a < 3; ++a) {
      for (int b = a; b < 3; ++b) {
        dg[c][a][b] = g[a][b].derivative(c);
        dg[c][b][a] = dg[c][a][b];
      }
    }
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = b; c < 3; ++c) {
        Jet3 acc;
        for (int d = 0; d < 3; ++d) {
          acc += out.ginv[a][d] * (dg[b][d][c] + dg[c][d][b] - dg[d][b][c]);
        }
        acc *= 0.5;
        out.gamma[a][b][c] = acc;
        out.gamma[a][c][b] = acc;
      }
    }
  }
  return out;
}

struct RicciJets {
  JetMatrix ricci;
  Jet3 scalar;
  JetMatrix schouten;
};

RicciJets ricci_jets(const JetMatrix& g, const ConnectionJets& conn) {
  const auto& G = conn.gamma;
  // trace Gamma^a_ab, used in two terms
  std::array<Jet3, 3> trace;
  for (int b = 0; b < 3; ++b) {
    for (int a = 0; a < 3; ++a) trace[b] += G[a][a][b];
  }
  RicciJets out;
  for (int b = 0; b < 3; ++b) {
    for (int d = b; d < 3; ++d) {
      Jet3 acc;
      for (int a = 0; a < 3; ++a) acc += G[a][d][b].derivative(a);
      acc -= trace[b].derivative(d);
      for (int e = 0; e < 3; ++e) {
        acc += trace[e] * G[e][d][b];
        for (int a = 0; a < 3; ++a) acc -= G[a][d][e] * G[e][a][b];
      }
      out.ricci[b][d] = acc;
      out.ricci[d][b] = acc;
    }
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) out.scalar += conn.ginv[a][b] * out.ricci[a][b];
  }
  const Jet3 quarter = 0.25 * out.scalar;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) out.schouten[a][b] = out.ricci[a][b] - quarter * g[a][b];
  }
  return out;
}

}  // namespace

CurvaturePack curvature_from_jets(const JetMatrix& g) {
  const ConnectionJets conn = connection(g);
  const RicciJets ric = ricci_jets(g, conn);
  CurvaturePack pack;
  pack.metric = values_of(g);
  pack.inverse = values_of(conn.ginv);
  for (int a = 0; a < 3; ++a) pack.christoffel[a] = values_of(conn.gamma[a]);
  pack.ricci = values_of(ric.ricci);
  pack.scalar = ric.scalar.value();
  pack.schouten = values_of(ric.schouten);

  // nabla_c P_ab = d_c P_ab - Gamma^e_ca P_eb - Gamma^e_cb P_ae
  const auto& G = pack.christoffel;
  const auto& P = pack.schouten;
  Tensor3 nablaP{};  // [c][a][b]
  for (int c = 0; c < 3; ++c) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        double v = ric.schouten[a][b].d(c);
        for (int e = 0; e < 3; ++e) v -= G[e][c][a] * P[e][b] + G[e][c][b] * P[a][e];
        nablaP[c][a][b] = v;
      }
    }
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) pack.cotton[a][b][c] = nablaP[c][a][b] - nablaP[b][a][c];
    }
  }
  return pack;
}

CurvaturePack curvature(const MetricField& g, const Point& p) { return curvature_from_jets(g.at(p)); }

Tensor3 christoffel(const MetricField& g, const Point& p) {
  const ConnectionJets conn = connection(g.at(p));
  Tensor3 out{};
  for (int a = 0; a < 3; ++a) out[a] = values_of(conn.gamma[a]);
  return out;
}

RicciData ricci_scalar_schouten(const MetricField& g, const Point& p) {
  const JetMatrix gj = g.at(p);
  const RicciJets ric = ricci_jets(gj, connection(gj));
  return {values_of(ric.ricci), ric.scalar.value(), values_of(ric.schouten)};
}

Tensor3 cotton(const MetricField& g, const Point& p) { return curvature(g, p).cotton; }

Mat3 ew_residual(const CurvaturePack& curv, const JetVector& X) {
  const auto& G = curv.christoffel;
  std::array<double, 3> x{X[0].value(), X[1].value(), X[2].value()};
  Mat3 nablaX{};  // [a][b] = nabla_a X_b
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      double v = X[b].d(a);
      for (int e = 0; e < 3; ++e) v -= G[e][a][b] * x[e];
      nablaX[a][b] = v;
    }
  }
  Mat3 t{};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      t[a][b] = 0.5 * (nablaX[a][b] + nablaX[b][a]) + x[a] * x[b] + curv.schouten[a][b];
    }
  }
  const double tr = trace_with(curv.inverse, t);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) t[a][b] -= tr / 3.0 * curv.metric[a][b];
  }
  return t;
}

Mat3 ew_residual(const MetricField& g, const OneFormField& X, const Point& p) {
  const JetPoint q = seed(p);
  return ew_residual(curvature_from_jets(g.at(q)), X.at(q));
}

Mat3 faraday(const OneFormField& X, const Point& p) {
  const JetVector v = X.at(p);
  Mat3 out{};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) out[a][b] = v[b].d(a) - v[a].d(b);
  }
  return out;
}

std::pair<MetricField, OneFormField> conformal_rescale(const MetricField& g, const OneFormField& X,
                                                       const JetScalarField& ln_omega) {
  MetricField gt("exp(2 lnOmega) " + g.label(), [g, ln_omega](const JetPoint& q) {
    const Jet3 factor = exp(2.0 * ln_omega(q));
    JetMatrix m = g.at(q);
    for (auto& row : m) {
      for (auto& e : row) e = factor * e;
    }
    return m;
  });
  OneFormField Xt(X.label() + " + d lnOmega", [X, ln_omega](const JetPoint& q) {
    const Jet3 w = ln_omega(q);
    JetVector v = X.at(q);
    for (int a = 0; a < 3; ++a) v[a] += w.derivative(a);
    return v;
  });
  return {std::move(gt), std::move(Xt)};
}

std::pair<MetricField, OneFormField> rescale_r(const MetricField& g, const OneFormField& X,
                                               double scale) {
  // Fields may differentiate their own jets, so evaluate them at the image
  // point in their own coordinates and then substitute r = scale * r' into
  // the Taylor coefficients (an r-power j picks up scale^j).
  auto image = [scale](const JetPoint& q) {
    return seed(Point{q.nu.value(), scale * q.r.value(), q.x.value()});
  };
  auto substitute = [scale](Jet3& j) {
    for (int s = 0; s < Jet3::kSize; ++s) j.coeffs()[s] *= std::pow(scale, Jet3::index_of(s)[kR]);
  };
  const std::array<double, 3> jac{1.0, scale, 1.0};
  MetricField gt(g.label() + " (r -> " + std::to_string(scale) + " r)",
                 [g, image, substitute, jac](const JetPoint& q) {
                   JetMatrix m = g.at(image(q));
                   for (int a = 0; a < 3; ++a) {
                     for (int b = 0; b < 3; ++b) {
                       substitute(m[a][b]);
                       m[a][b] *= jac[a] * jac[b];
                     }
                   }
                   return m;
                 });
  OneFormField Xt(X.label() + " (r rescaled)", [X, image, substitute, jac](const JetPoint& q) {
    JetVector v = X.at(image(q));
    for (int a = 0; a < 3; ++a) {
      substitute(v[a]);
      v[a] *= jac[a];
    }
    return v;
  });
  return {std::move(gt), std::move(Xt)};
}

double determinant(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double trace_with(const Mat3& inverse, const Mat3& t) {
  double s = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) s += inverse[a][b] * t[a][b];
  }
  return s;
}

double max_abs(const Mat3& m) {
  double v = 0.0;
  for (const auto& row : m) {
    for (double e : row) v = std::max(v, std::abs(e));
  }
  return v;
}

double max_abs(const Tensor3& t) {
  double v = 0.0;
  for (const auto& m : t) v = std::max(v, max_abs(m));
  return v;
}

std::string component_name(int a, int b) {
  static const char* names[3] = {"nu", "r", "x"};
  return std::string("[") + names[a] + "," + names[b] + "]";
}

std::string component_name(int a, int b, int c) {
  static const char* names[3] = {"nu", "r", "x"};
  return std::string("[") + names[a] + "," + names[b] + "," + names[c] + "]";
}

}  // namespace ewh
