#pragma once

// Codimension-one statistical immersions. Everything here is measured from
// the immersion map and the ambient model alone: the Jacobian and the unit
// normal come from finite differences and an SVD kernel, the induced
// connection and the fundamental form from a tangential/normal linear solve,
// shape operators and transversal forms from differentiating the normal
// field. On top of that sit the structure checks a hypersurface of a
// constant-curvature statistical manifold has to satisfy: the Gauss/Codazzi/
// Ricci-type line identities, the equiaffine condition, and the closed-form
// operator expressions that pin down totally umbilical hypersurfaces of
// Hessian ambients.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "statgeo/domain.hpp"
#include "statgeo/errors.hpp"
#include "statgeo/fd.hpp"
#include "statgeo/models.hpp"
#include "statgeo/statistical.hpp"
#include "statgeo/tensor.hpp"

namespace statgeo {

struct Immersion {
  std::string label;
  StatisticalManifoldModel ambient;
  std::function<Point(const Point&)> map;  // base chart -> ambient chart
  ChartDomain base_domain;
  double orientation = 1.0;  // flips the normal; fixed by a deterministic sign rule otherwise
  Point anchor;              // base point used for single-point diagnostics
};

enum class AmbientConnection { primal, dual, riemannian };

namespace immersion_detail {

inline Tensor3 ambient_symbols(const Immersion& imm, AmbientConnection which,
                               const Point& y) {
  switch (which) {
    case AmbientConnection::primal: return imm.ambient.connection_at(y);
    case AmbientConnection::dual: return dual_connection(imm.ambient, y);
    case AmbientConnection::riemannian: return levi_civita(imm.ambient, y);
  }
  throw UsageError("unknown ambient connection selector");
}

}  // namespace immersion_detail

struct NormalFrame {
  Vec xi;        // ambient components, normalized to g~(xi, xi) = 1
  Mat jacobian;  // ambient_dim x base_dim, columns are f_* of the chart basis
};

// Normal direction = kernel of J^T g~. The sign is fixed deterministically:
// positive last component when it is nonzero, otherwise positive largest
// component; `orientation` then flips it as requested.
inline NormalFrame unit_normal(const Immersion& imm, const Point& p) {
  imm.base_domain.require_inside(p);
  const int n = imm.base_domain.dim;
  const int m = imm.ambient.domain.dim;
  if (m != n + 1) throw ShapeError("unit_normal: immersion must have codimension one");
  Mat J(m, n);
  for (int i = 0; i < n; ++i) {
    J.col(i) = fd_derivative(imm.map, p, i, FDScheme::analytic_default());
  }
  const Point y = imm.map(p);
  const MetricValue G = imm.ambient.metric_at(y);
  Mat M = J.transpose() * G;  // n x m, one-dimensional kernel iff J has full rank
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(0) <= 0.0 || sv(n - 1) < 1e-10 * sv(0)) {
    throw DegenerateError("unit_normal: immersion jacobian is rank-deficient");
  }
  Vec v = svd.matrixV().col(m - 1);
  const double norm2 = v.dot(G * v);
  v /= std::sqrt(norm2);
  double pick = v(m - 1);
  if (std::abs(pick) <= 1e-12) {
    int arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    pick = v(arg);
  }
  if (pick < 0.0) v = -v;
  NormalFrame out;
  out.xi = v * imm.orientation;
  out.jacobian = J;
  return out;
}

struct GaussSplit {
  Tensor3 connection;  // induced symbols, conn(k,i,j)
  Mat form;            // normal component, form(i,j)
};

// Split of the ambient covariant derivative of f_* along coordinate
// directions into a tangential part (the induced connection) and a normal
// part (the fundamental form for that ambient connection).
inline GaussSplit gauss_split(const Immersion& imm, const Point& p,
                              AmbientConnection which) {
  const int n = imm.base_domain.dim;
  const int m = n + 1;
  const NormalFrame nf = unit_normal(imm, p);
  const Point y = imm.map(p);
  const Tensor3 Gam = immersion_detail::ambient_symbols(imm, which, y);
  Mat A(m, m);
  A.leftCols(n) = nf.jacobian;
  A.col(n) = nf.xi;
  Eigen::FullPivLU<Mat> lu(A);
  if (!lu.isInvertible()) {
    throw ImmersionError("gauss_split: tangent frame plus normal is singular");
  }
  GaussSplit out{Tensor3(n), Mat::Zero(n, n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec hess = fd_second_derivative(imm.map, p, i, j);
      Vec D = hess;
      for (int c = 0; c < m; ++c) {
        double s = 0.0;
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            s += Gam(c, a, b) * nf.jacobian(a, i) * nf.jacobian(b, j);
        D(c) += s;
      }
      const Vec u = lu.solve(D);
      for (int k = 0; k < n; ++k) out.connection(k, i, j) = u(k);
      out.form(i, j) = u(n);
    }
  return out;
}

struct WeingartenSplit {
  Mat shape;  // shape(k,i): k-th component of the operator applied to d_i
  Vec tau;    // transversal one-form
};

// Derivative of the normal field split the same way; the tangential block
// carries a minus sign so `shape` is the operator in d~_X xi = -f_*(shape X)
// + tau(X) xi.
inline WeingartenSplit weingarten_split(const Immersion& imm, const Point& p,
                                        AmbientConnection which) {
  const int n = imm.base_domain.dim;
  const int m = n + 1;
  const NormalFrame nf = unit_normal(imm, p);
  const Point y = imm.map(p);
  const Tensor3 Gam = immersion_detail::ambient_symbols(imm, which, y);
  Mat A(m, m);
  A.leftCols(n) = nf.jacobian;
  A.col(n) = nf.xi;
  Eigen::FullPivLU<Mat> lu(A);
  if (!lu.isInvertible()) {
    throw ImmersionError("weingarten_split: tangent frame plus normal is singular");
  }
  auto normal_field = [&imm](const Point& q) { return unit_normal(imm, q).xi; };
  WeingartenSplit out{Mat::Zero(n, n), Vec::Zero(n)};
  for (int i = 0; i < n; ++i) {
    const Vec dxi = fd_derivative(normal_field, p, i, FDScheme::nested_default());
    Vec D = dxi;
    for (int c = 0; c < m; ++c) {
      double s = 0.0;
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) s += Gam(c, a, b) * nf.jacobian(a, i) * nf.xi(b);
      D(c) += s;
    }
    const Vec u = lu.solve(D);
    for (int k = 0; k < n; ++k) out.shape(k, i) = -u(k);
    out.tau(i) = u(n);
  }
  return out;
}

struct InducedStructure {
  MetricValue metric;
  Tensor3 connection;
  Mat form;
  // max |g(nab_i d_j, d_k) - g~(D_ij, f_* d_k)| over indices: how well the
  // split reproduces the defining property of the induced structure
  double definition_residual = 0.0;
};

inline InducedStructure induce_structure(const Immersion& imm, const Point& p) {
  const int n = imm.base_domain.dim;
  const int m = n + 1;
  const NormalFrame nf = unit_normal(imm, p);
  const Point y = imm.map(p);
  const MetricValue G = imm.ambient.metric_at(y);
  InducedStructure out;
  out.metric = nf.jacobian.transpose() * G * nf.jacobian;
  validate_metric(out.metric);
  const GaussSplit split = gauss_split(imm, p, AmbientConnection::primal);
  out.connection = split.connection;
  out.form = split.form;
  const Tensor3 Gam = imm.ambient.connection_at(y);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec D = fd_second_derivative(imm.map, p, i, j);
      for (int c = 0; c < m; ++c) {
        double s = 0.0;
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            s += Gam(c, a, b) * nf.jacobian(a, i) * nf.jacobian(b, j);
        D(c) += s;
      }
      for (int k = 0; k < n; ++k) {
        double lhs = 0.0;
        for (int mm = 0; mm < n; ++mm) lhs += split.connection(mm, i, j) * out.metric(mm, k);
        const double rhs = D.dot(G * nf.jacobian.col(k));
        out.definition_residual = std::max(out.definition_residual, std::abs(lhs - rhs));
      }
    }
  return out;
}

struct HypersurfaceData {
  MetricValue metric;            // induced g
  Tensor3 conn, conn_dual, conn_riem;
  Mat h, h_dual, second_fundamental;  // forms of nabla~, nabla~*, nabla~(LC)
  Mat A_star, A, S;              // shape operators of the same three splits
  Vec tau_star, tau, tau_riem;
  Mat b, B, B_star;              // h - II, A - S, A* - S
  double nu = 0.0;               // -(2/n) trace(B*), the affine mean curvature
  Vec xi;
  Mat jacobian;
};

inline HypersurfaceData gauss_weingarten(const Immersion& imm, const Point& p) {
  const int n = imm.base_domain.dim;
  const NormalFrame nf = unit_normal(imm, p);
  const MetricValue G = imm.ambient.metric_at(imm.map(p));
  HypersurfaceData D;
  D.xi = nf.xi;
  D.jacobian = nf.jacobian;
  D.metric = nf.jacobian.transpose() * G * nf.jacobian;
  validate_metric(D.metric);

  const GaussSplit gp = gauss_split(imm, p, AmbientConnection::primal);
  const GaussSplit gd = gauss_split(imm, p, AmbientConnection::dual);
  const GaussSplit gr = gauss_split(imm, p, AmbientConnection::riemannian);
  D.conn = gp.connection;
  D.conn_dual = gd.connection;
  D.conn_riem = gr.connection;
  D.h = gp.form;
  D.h_dual = gd.form;
  D.second_fundamental = gr.form;

  const WeingartenSplit wp = weingarten_split(imm, p, AmbientConnection::primal);
  const WeingartenSplit wd = weingarten_split(imm, p, AmbientConnection::dual);
  const WeingartenSplit wr = weingarten_split(imm, p, AmbientConnection::riemannian);
  D.A_star = wp.shape;
  D.tau_star = wp.tau;
  D.A = wd.shape;
  D.tau = wd.tau;
  D.S = wr.shape;
  D.tau_riem = wr.tau;

  D.b = D.h - D.second_fundamental;
  D.B = D.A - D.S;
  D.B_star = D.A_star - D.S;
  D.nu = -(2.0 / n) * D.B_star.trace();
  return D;
}

struct EquiaffineReport {
  double max_tau_star = 0.0;
  double tolerance = 1e-6;
  bool pass = false;
};

// tau* = 0 is the equiaffine condition (parallel induced volume); checked
// pointwise over the samples.
inline EquiaffineReport check_equiaffine(const Immersion& imm,
                                         const std::vector<Point>& samples,
                                         double tolerance = 1e-6) {
  if (samples.empty()) throw UsageError("check_equiaffine: empty sample set");
  EquiaffineReport rep;
  rep.tolerance = tolerance;
  for (const Point& p : samples) {
    const WeingartenSplit w = weingarten_split(imm, p, AmbientConnection::primal);
    rep.max_tau_star = std::max(rep.max_tau_star, w.tau.cwiseAbs().maxCoeff());
  }
  rep.pass = rep.max_tau_star <= tolerance;
  return rep;
}

namespace immersion_detail {

// covariant derivatives of measured fields along the base, with the measured
// induced connection; all steps use the nested scheme because every field
// evaluation is itself an FD composition
template <class F>
Tensor3 nabla_02(F&& field, const std::function<Tensor3(const Point&)>& connf,
                 const Point& p) {
  const int n = static_cast<int>(p.size());
  const Mat T = field(p);
  const Tensor3 G = connf(p);
  Tensor3 out(n);
  for (int i = 0; i < n; ++i) {
    const Mat dT = fd_derivative(field, p, i, FDScheme::nested_default());
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = dT(j, k);
        for (int mm = 0; mm < n; ++mm) s -= G(mm, i, j) * T(mm, k) + G(mm, i, k) * T(j, mm);
        out(i, j, k) = s;
      }
  }
  return out;
}

template <class F>
Tensor3 nabla_11(F&& field, const std::function<Tensor3(const Point&)>& connf,
                 const Point& p) {
  const int n = static_cast<int>(p.size());
  const Mat T = field(p);
  const Tensor3 G = connf(p);
  Tensor3 out(n);  // out(i,l,j) = (nab_i T)^l_j
  for (int i = 0; i < n; ++i) {
    const Mat dT = fd_derivative(field, p, i, FDScheme::nested_default());
    for (int l = 0; l < n; ++l)
      for (int j = 0; j < n; ++j) {
        double s = dT(l, j);
        for (int mm = 0; mm < n; ++mm) s += G(l, i, mm) * T(mm, j) - G(mm, i, j) * T(l, mm);
        out(i, l, j) = s;
      }
  }
  return out;
}

template <class F>
Mat nabla_01(F&& field, const std::function<Tensor3(const Point&)>& connf, const Point& p) {
  const int n = static_cast<int>(p.size());
  const Vec T = field(p);
  const Tensor3 G = connf(p);
  Mat out = Mat::Zero(n, n);  // out(i,j) = (nab_i T)_j
  for (int i = 0; i < n; ++i) {
    const Vec dT = fd_derivative(field, p, i, FDScheme::nested_default());
    for (int j = 0; j < n; ++j) {
      double s = dT(j);
      for (int mm = 0; mm < n; ++mm) s -= G(mm, i, j) * T(mm);
      out(i, j) = s;
    }
  }
  return out;
}

}  // namespace immersion_detail

struct LineResiduals {
  double curvature_line = 0.0;   // Gauss-type identity with the curvature gap
  double form_line = 0.0;        // Codazzi-type identity for b
  double operator_line = 0.0;    // Codazzi-type identity for B*
  double ricci_line = 0.0;       // Ricci-type identity for tau*
  double dual_curvature_line = 0.0;  // curvature gap against b and B*
  double commutator = 0.0;       // || B B* - B* B ||_max
};

// The five structure identities a hypersurface of a constant-curvature
// statistical ambient must satisfy, evaluated on a g-orthonormal frame at p.
// k_primal and k_riemannian are the ambient curvature constants of nabla~
// and of its Levi-Civita connection.
inline LineResiduals codazzi_ricci_residuals(const Immersion& imm, const Point& p,
                                             double k_primal, double k_riemannian) {
  const int n = imm.base_domain.dim;
  const HypersurfaceData D = gauss_weingarten(imm, p);

  std::function<Tensor3(const Point&)> connf = [&imm](const Point& q) {
    return gauss_split(imm, q, AmbientConnection::primal).connection;
  };
  auto b_field = [&imm](const Point& q) -> Mat {
    return gauss_split(imm, q, AmbientConnection::primal).form -
           gauss_split(imm, q, AmbientConnection::riemannian).form;
  };
  auto Bstar_field = [&imm](const Point& q) -> Mat {
    return weingarten_split(imm, q, AmbientConnection::primal).shape -
           weingarten_split(imm, q, AmbientConnection::riemannian).shape;
  };
  auto taustar_field = [&imm](const Point& q) -> Vec {
    return weingarten_split(imm, q, AmbientConnection::primal).tau;
  };

  // induced metric as a measured field, for the induced Levi-Civita symbols
  auto metric_field = [&imm](const Point& q) -> Mat {
    const NormalFrame nf = unit_normal(imm, q);
    return nf.jacobian.transpose() * imm.ambient.metric_at(imm.map(q)) * nf.jacobian;
  };
  StatisticalManifoldModel induced;
  induced.label = imm.label + ":induced";
  induced.domain = imm.base_domain;
  induced.metric = metric_field;
  induced.metric_scheme = FDScheme::composed_default();
  auto K_field = [&imm, &induced](const Point& q) -> Tensor3 {
    return gauss_split(imm, q, AmbientConnection::primal).connection -
           levi_civita(induced, q);
  };

  const Tensor3 nb = immersion_detail::nabla_02(b_field, connf, p);
  const Tensor3 nBs = immersion_detail::nabla_11(Bstar_field, connf, p);
  const Mat nts = immersion_detail::nabla_01(taustar_field, connf, p);

  const Tensor3 K = K_field(p);
  const Tensor3 G = D.conn;
  Tensor4 nK(n);  // nK(i,l,j,k) = (nab_i K)^l_jk, differentiated along slot i
  for (int i = 0; i < n; ++i) {
    const Tensor3 dK = fd_derivative(K_field, p, i, FDScheme::nested_default());
    for (int l = 0; l < n; ++l)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = dK(l, j, k);
          for (int mm = 0; mm < n; ++mm) {
            s += G(l, i, mm) * K(mm, j, k);
            s -= G(mm, i, j) * K(l, mm, k) + G(mm, i, k) * K(l, j, mm);
          }
          nK(i, l, j, k) = s;
        }
  }

  const Mat E = orthonormal_frame(D.metric);
  const double gap = k_primal - k_riemannian;
  LineResiduals R;
  auto contract_nK = [&](const Vec& X, const Vec& Y, const Vec& Z) -> Vec {
    Vec out = Vec::Zero(n);
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) s += X(i) * nK(i, l, j, k) * Y(j) * Z(k);
      out(l) = s;
    }
    return out;
  };
  auto contract3 = [&](const Tensor3& T, const Vec& X, const Vec& Y, const Vec& Z) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) s += X(i) * T(i, j, k) * Y(j) * Z(k);
    return s;
  };
  auto contract_op = [&](const Tensor3& T, const Vec& X, const Vec& Y) -> Vec {
    Vec out = Vec::Zero(n);  // T(i,l,j) X^i Y^j
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += X(i) * T(i, l, j) * Y(j);
      out(l) = s;
    }
    return out;
  };

  for (int ia = 0; ia < n; ++ia)
    for (int ja = 0; ja < n; ++ja) {
      const Vec X = E.col(ia), Y = E.col(ja);
      for (int ka = 0; ka < n; ++ka) {
        const Vec Z = E.col(ka);
        const double gYZ = Y.dot(D.metric * Z), gXZ = X.dot(D.metric * Z);
        const double bYZ = Y.dot(D.b * Z), bXZ = X.dot(D.b * Z);
        const double hYZ = Y.dot(D.h * Z), hXZ = X.dot(D.h * Z);
        const double tsX = D.tau_star.dot(X), tsY = D.tau_star.dot(Y);

        const Vec lhs1 = 2.0 * gap * (gYZ * X - gXZ * Y);
        const Vec rhs1 = contract_nK(X, Y, Z) - contract_nK(Y, X, Z) -
                         bYZ * (D.A_star * X) + bXZ * (D.A_star * Y) +
                         hXZ * (D.B_star * Y) - hYZ * (D.B_star * X);
        R.curvature_line =
            std::max(R.curvature_line, (lhs1 - rhs1).cwiseAbs().maxCoeff());

        const Vec v43 = gap * (gYZ * X - gXZ * Y) + bYZ * (D.B_star * X) -
                        bXZ * (D.B_star * Y);
        R.dual_curvature_line =
            std::max(R.dual_curvature_line, v43.cwiseAbs().maxCoeff());

        const double v2 = contract3(nb, X, Y, Z) - contract3(nb, Y, X, Z) +
                          tsX * bYZ - tsY * bXZ + tsX * hYZ - tsY * hXZ;
        R.form_line = std::max(R.form_line, std::abs(v2));
      }
      const double tsX = D.tau_star.dot(X), tsY = D.tau_star.dot(Y);
      const Vec v3 = -tsY * (D.A_star * X) + tsX * (D.A_star * Y) -
                     contract_op(nBs, X, Y) + contract_op(nBs, Y, X) +
                     tsX * (D.B_star * Y) - tsY * (D.B_star * X);
      R.operator_line = std::max(R.operator_line, v3.cwiseAbs().maxCoeff());

      const double v4 = -X.dot(D.h * (D.B_star * Y)) + Y.dot(D.h * (D.B_star * X)) +
                        X.dot(nts * Y) - Y.dot(nts * X) +
                        Y.dot(D.b * (D.A_star * X)) - X.dot(D.b * (D.A_star * Y));
      R.ricci_line = std::max(R.ricci_line, std::abs(v4));
    }
  R.commutator = (D.B * D.B_star - D.B_star * D.B).cwiseAbs().maxCoeff();
  return R;
}

struct Lemma41Residuals {
  double a_star = 0.0;
  double b_star = 0.0;
  double h = 0.0;
  double a = 0.0;
  double b = 0.0;
  double worst = 0.0;
};

// Closed forms for the operators of a totally umbilical-type hypersurface of
// a Hessian ambient: A* = (k nu / c) I, B* = -(nu/2) I, h = (c/nu) g,
// A = (c/nu) I, B = (2c^2 - (2k+c) nu^2) / (2 nu c) I. Needs nu != 0 and
// c != 0; callers treat the DegenerateError as "hypotheses not met".
inline Lemma41Residuals lemma41_residuals(const Immersion& imm, const Point& p,
                                          double k, double c) {
  if (std::abs(c) < 1e-12) {
    throw DegenerateError("lemma41_residuals: ambient Hessian curvature is zero");
  }
  const HypersurfaceData D = gauss_weingarten(imm, p);
  const int n = imm.base_domain.dim;
  const double nu = D.nu;
  if (std::abs(nu) < 1e-8) {
    throw DegenerateError("lemma41_residuals: affine mean curvature vanishes");
  }
  const Mat I = Mat::Identity(n, n);
  Lemma41Residuals r;
  r.a_star = (D.A_star - (k * nu / c) * I).cwiseAbs().maxCoeff();
  r.b_star = (D.B_star + 0.5 * nu * I).cwiseAbs().maxCoeff();
  r.h = (D.h - (c / nu) * D.metric).cwiseAbs().maxCoeff();
  r.a = (D.A - (c / nu) * I).cwiseAbs().maxCoeff();
  const double bcoef = (2.0 * c * c - (2.0 * k + c) * nu * nu) / (2.0 * nu * c);
  r.b = (D.B - bcoef * I).cwiseAbs().maxCoeff();
  r.worst = std::max({r.a_star, r.b_star, r.h, r.a, r.b});
  return r;
}

struct Theorem42Prediction {
  double s_scalar = 0.0;  // S = s_scalar * I
  double nu = 0.0;
};

// Branch formulas for the shape operator and affine mean curvature once the
// discriminant 2k + c is positive; branch is +1 or -1.
inline Theorem42Prediction theorem42_predict(double k, double c, int branch) {
  if (branch != 1 && branch != -1) throw UsageError("theorem42_predict: branch must be +-1");
  const double disc = 2.0 * k + c;
  if (!(disc > 0.0)) throw UsageError("theorem42_predict: discriminant must be positive");
  if (c == 0.0) throw UsageError("theorem42_predict: c must be nonzero");
  Theorem42Prediction pred;
  pred.s_scalar = branch * (std::abs(c) / (2.0 * c)) * std::sqrt(disc);
  pred.nu = branch * std::abs(c) / std::sqrt(disc);
  return pred;
}

struct Theorem42Report {
  double discriminant = 0.0;
  int branch = 0;          // sign of the measured nu; 0 on the boundary
  double s_residual = 0.0;
  double nu_residual = 0.0;
  bool boundary = false;   // |2k + c| below boundary_tolerance: S must vanish
  bool pass = false;
  double tolerance = 1e-6;
};

// Checks the measured shape operator and affine mean curvature against the
// branch the theorem allows. A negative discriminant outside the boundary
// band contradicts the existence bound and throws.
inline Theorem42Report theorem42_check(const Immersion& imm, const Point& p, double k,
                                       double c, double tolerance = 1e-6,
                                       double boundary_tolerance = 1e-9) {
  const HypersurfaceData D = gauss_weingarten(imm, p);
  const int n = imm.base_domain.dim;
  Theorem42Report rep;
  rep.tolerance = tolerance;
  rep.discriminant = 2.0 * k + c;
  if (rep.discriminant < -boundary_tolerance) {
    throw TheoremViolation("theorem42_check: hypersurface exists but 2k + c = " +
                           std::to_string(rep.discriminant) + " is negative");
  }
  if (std::abs(rep.discriminant) <= boundary_tolerance) {
    rep.boundary = true;
    rep.s_residual = D.S.cwiseAbs().maxCoeff();
    rep.pass = rep.s_residual <= tolerance;
    return rep;
  }
  rep.branch = D.nu >= 0.0 ? 1 : -1;
  const Theorem42Prediction pred = theorem42_predict(k, c, rep.branch);
  rep.s_residual =
      (D.S - pred.s_scalar * Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  rep.nu_residual = std::abs(D.nu - pred.nu);
  rep.pass = rep.s_residual <= tolerance && rep.nu_residual <= tolerance;
  return rep;
}

// ---- immersion registry ---------------------------------------------------

struct ImmersionInfo {
  std::string name;
  std::string description;
  std::string parameters;
};

inline const std::vector<ImmersionInfo>& immersion_registry() {
  static const std::vector<ImmersionInfo> infos = {
      {"example_4_1",
       "coordinate-plane slice (x,y) -> (0,x,y) of affine_r3; flat induced structure with "
       "vanishing shape operator and nu = 0 in the default variant",
       "a (>0, default 1), b (default 1), variant (0, 1, or 2; default 0)"},
      {"example_4_2",
       "horizontal slice x -> (x, y0) of upper_half_space(dim+1); totally umbilical with "
       "S = I and nu = 2, independent of y0",
       "dim (base dimension, 2 or 3, default 2), y0 (>0, default 1)"},
  };
  return infos;
}

inline Immersion build_immersion(const ModelSpec& spec) {
  if (spec.name == "example_4_1") {
    model_detail::reject_unknown_params(spec, {"a", "b", "variant"});
    ModelSpec ambient_spec{"affine_r3", spec.params, spec.as_printed};
    Immersion imm;
    imm.label = "example_4_1";
    imm.ambient = build_model(ambient_spec);
    imm.map = [](const Point& x) {
      Point y(3);
      y << 0.0, x(0), x(1);
      return y;
    };
    imm.base_domain.dim = 2;
    imm.base_domain.contains = [](const Point&) { return true; };
    imm.base_domain.sample_box = Box{Point::Constant(2, -2.0), Point::Constant(2, 2.0)};
    imm.anchor = model_detail::make_point({0.4, -0.9});
    return imm;
  }
  if (spec.name == "example_4_2") {
    model_detail::reject_unknown_params(spec, {"dim", "y0"});
    const int n = model_detail::get_dim_param(spec, 2, 2, kMaxDim - 1);
    const double y0 = model_detail::get_param(spec, "y0", 1.0);
    if (!(y0 > 0.0)) throw UsageError("example_4_2: y0 must be positive");
    ModelSpec ambient_spec{"upper_half_space", {{"dim", double(n + 1)}}, false};
    Immersion imm;
    imm.label = "example_4_2";
    imm.ambient = build_model(ambient_spec);
    imm.map = [n, y0](const Point& x) {
      Point y(n + 1);
      for (int i = 0; i < n; ++i) y(i) = x(i);
      y(n) = y0;
      return y;
    };
    imm.base_domain.dim = n;
    imm.base_domain.contains = [](const Point&) { return true; };
    imm.base_domain.sample_box = Box{Point::Constant(n, -2.0), Point::Constant(n, 2.0)};
    const double anchor_vals[3] = {0.3, -0.7, 0.2};
    Point anchor(n);
    for (int i = 0; i < n; ++i) anchor(i) = anchor_vals[i];
    imm.anchor = anchor;
    return imm;
  }
  std::string known;
  for (const auto& info : immersion_registry()) known += " " + info.name;
  throw UsageError("unknown immersion '" + spec.name + "' (known:" + known + ")");
}

}  // namespace statgeo
