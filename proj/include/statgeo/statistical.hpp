#pragma once

// Statistical-structure machinery on chart-based models: Levi-Civita and
// dual connections, the alpha family, curvature, the difference tensor,
// constant-curvature fitting, Hessian-curvature residuals, and the
// interpolation identities that tie curvature constants at different alpha
// together.
//
// Conventions used throughout:
//   Christoffel storage     G(k,i,j) = Gamma^k_ij (upper index first)
//   curvature storage       R(l,i,j,k) = coefficient of d_l in R(d_i,d_j)d_k
//   curvature formula       R^l_ijk = d_i G^l_jk - d_j G^l_ik
//                                     + G^l_im G^m_jk - G^l_jm G^m_ik
//   duality                 d_i g_jk = G_ij|k + G*_ik|j
// Residuals that feed verdicts are evaluated in a g-orthonormal frame so a
// single tolerance works across models whose metrics differ by orders of
// magnitude.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "statgeo/domain.hpp"
#include "statgeo/errors.hpp"
#include "statgeo/fd.hpp"
#include "statgeo/tensor.hpp"

namespace statgeo {

enum class Provenance { analytic, finite_difference, composed };

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::analytic: return "analytic";
    case Provenance::finite_difference: return "finite_difference";
    case Provenance::composed: return "composed";
  }
  return "unknown";
}

struct ChristoffelField {
  std::function<Tensor3(const Point&)> eval;
  Provenance provenance = Provenance::analytic;

  Tensor3 operator()(const Point& p) const {
    Tensor3 G = eval(p);
    if (!G.all_finite()) throw EvalError("christoffel symbols are non-finite");
    const double defect = max_symmetry_defect_lower2(G);
    if (defect > 1e-10 * std::max(1.0, G.max_abs())) {
      throw StructureError("connection has torsion (defect " + std::to_string(defect) + ")");
    }
    return G;
  }

  // step used when this field is differentiated (curvature, nabla K, ...)
  FDScheme derivative_scheme() const {
    return provenance == Provenance::analytic ? FDScheme::analytic_default()
                                              : FDScheme::composed_default();
  }
};

struct StatisticalManifoldModel {
  std::string label;
  ChartDomain domain;
  std::function<MetricValue(const Point&)> metric;
  ChristoffelField connection;  // the structure's nabla (alpha = +1 member)
  std::function<Tensor3(const Point&)> cubic;  // optional: C = nabla g, totally symmetric
  std::function<ChristoffelField(double)> alpha_family;  // optional analytic family
  Point anchor;                 // documented interior point for spot reports
  FDScheme metric_scheme = FDScheme::analytic_default();

  MetricValue metric_at(const Point& p) const {
    domain.require_inside(p);
    MetricValue g = metric(p);
    validate_metric(g);
    return g;
  }

  Tensor3 connection_at(const Point& p) const {
    domain.require_inside(p);
    return connection(p);
  }

  bool has_cubic() const { return static_cast<bool>(cubic); }
  bool has_alpha_family() const { return static_cast<bool>(alpha_family); }
};

inline Tensor3 levi_civita(const StatisticalManifoldModel& m, const Point& p) {
  const int n = m.domain.dim;
  const MetricValue g = m.metric_at(p);
  const Mat gi = metric_inverse(g);
  std::vector<Mat> dg;
  dg.reserve(static_cast<std::size_t>(n));
  auto field = [&](const Point& q) { return m.metric_at(q); };
  for (int i = 0; i < n; ++i) dg.push_back(fd_derivative(field, p, i, m.metric_scheme));
  Tensor3 G(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += gi(k, l) * (dg[static_cast<std::size_t>(i)](j, l) +
                                                     dg[static_cast<std::size_t>(j)](i, l) -
                                                     dg[static_cast<std::size_t>(l)](i, j));
        G(k, i, j) = 0.5 * s;
      }
  return G;
}

// Dual symbols from the duality identity, solved componentwise:
// G*^m_ik = g^mj (d_i g_jk - G_ij|k). A statistical input makes the result
// torsion-free; the torsion defect is therefore the duality residual, and a
// defect above tolerance means the input was not statistical.
inline Tensor3 dual_connection(const StatisticalManifoldModel& m, const Point& p,
                               double tolerance = 1e-6) {
  const int n = m.domain.dim;
  const MetricValue g = m.metric_at(p);
  const Mat gi = metric_inverse(g);
  const Tensor3 low = lower_index(m.connection_at(p), g);  // low(k,i,j) = G_ij|k
  std::vector<Mat> dg;
  auto field = [&](const Point& q) { return m.metric_at(q); };
  for (int i = 0; i < n; ++i) dg.push_back(fd_derivative(field, p, i, m.metric_scheme));
  Tensor3 dual(n);
  for (int mm = 0; mm < n; ++mm)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int j = 0; j < n; ++j)
          s += gi(mm, j) * (dg[static_cast<std::size_t>(i)](j, k) - low(k, i, j));
        dual(mm, i, k) = s;
      }
  const double defect = max_symmetry_defect_lower2(dual);
  if (defect > tolerance * std::max(1.0, dual.max_abs())) {
    throw StructureError("dual connection has torsion " + std::to_string(defect) +
                         "; input structure is not statistical");
  }
  // symmetrize away FD noise
  Tensor3 out(n);
  for (int mm = 0; mm < n; ++mm)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) out(mm, i, k) = 0.5 * (dual(mm, i, k) + dual(mm, k, i));
  return out;
}

inline Tensor3 alpha_connection(const StatisticalManifoldModel& m, double alpha,
                                const Point& p) {
  const Tensor3 primal = m.connection_at(p);
  const Tensor3 dual = dual_connection(m, p);
  return primal * (0.5 * (1.0 + alpha)) + dual * (0.5 * (1.0 - alpha));
}

struct StatisticalCheck {
  double max_torsion = 0.0;
  double max_codazzi = 0.0;   // frame components of (nab_X g)(Y,Z) - (nab_Y g)(X,Z)
  double tolerance = 1e-6;
  bool pass = false;
  Point worst_point;
};

inline StatisticalCheck check_statistical(const StatisticalManifoldModel& m,
                                          const std::vector<Point>& samples,
                                          double tolerance = 1e-6) {
  if (samples.empty()) throw UsageError("check_statistical: empty sample set");
  StatisticalCheck rep;
  rep.tolerance = tolerance;
  auto metric_field = [&](const Point& q) { return m.metric_at(q); };
  for (const Point& p : samples) {
    const int n = m.domain.dim;
    m.domain.require_inside(p);
    // bypass the field's own torsion guard so the defect is reported, not thrown
    const Tensor3 raw = m.connection.eval(p);
    if (!raw.all_finite()) throw EvalError("christoffel symbols are non-finite");
    const double torsion = max_symmetry_defect_lower2(raw);
    Tensor3 G(n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(k, i, j) = 0.5 * (raw(k, i, j) + raw(k, j, i));

    const MetricValue g = m.metric_at(p);
    std::vector<Mat> dg;
    for (int i = 0; i < n; ++i) dg.push_back(fd_derivative(metric_field, p, i, m.metric_scheme));
    // nabla_i g_jk = d_i g_jk - G^m_ij g_mk - G^m_ik g_jm
    Tensor3 nablag(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = dg[static_cast<std::size_t>(i)](j, k);
          for (int mm = 0; mm < n; ++mm) s -= G(mm, i, j) * g(mm, k) + G(mm, i, k) * g(j, mm);
          nablag(i, j, k) = s;
        }
    const Mat E = orthonormal_frame(g);
    double codazzi = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          double sab = 0.0, sba = 0.0;
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              for (int k = 0; k < n; ++k) {
                const double w = E(i, a) * E(j, b) * E(k, c);
                sab += w * nablag(i, j, k);
                sba += w * nablag(j, i, k);
              }
          codazzi = std::max(codazzi, std::abs(sab - sba));
        }
    if (std::max(torsion, codazzi) > std::max(rep.max_torsion, rep.max_codazzi)) {
      rep.worst_point = p;
    }
    rep.max_torsion = std::max(rep.max_torsion, torsion);
    rep.max_codazzi = std::max(rep.max_codazzi, codazzi);
  }
  rep.pass = rep.max_torsion <= tolerance && rep.max_codazzi <= tolerance;
  return rep;
}

// K = nabla - nabla(LC), symmetric in the lower slots.
inline Tensor3 difference_tensor(const StatisticalManifoldModel& m, const Point& p) {
  return m.connection_at(p) - levi_civita(m, p);
}

inline Tensor4 curvature(const ChristoffelField& conn, const Point& p,
                         const FDScheme& scheme) {
  const Tensor3 G = conn(p);
  const int n = G.dim();
  std::vector<Tensor3> dG;
  dG.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    dG.push_back(fd_derivative([&](const Point& q) { return conn(q); }, p, i, scheme));
  }
  Tensor4 R(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = dG[static_cast<std::size_t>(i)](l, j, k) -
                     dG[static_cast<std::size_t>(j)](l, i, k);
          for (int mm = 0; mm < n; ++mm)
            s += G(l, i, mm) * G(mm, j, k) - G(l, j, mm) * G(mm, i, k);
          R(l, i, j, k) = s;
        }
  return R;
}

inline Tensor4 curvature(const ChristoffelField& conn, const Point& p) {
  return curvature(conn, p, conn.derivative_scheme());
}

struct PointResidual {
  Point p;
  double residual = 0.0;
};

struct CurvatureReport {
  double k_hat = 0.0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool constant = false;  // verdict, inclusive at the tolerance
  std::vector<PointResidual> points;
};

// Least-squares fit of R(X,Y)Z = k { g(Y,Z)X - g(X,Z)Y } over all index
// combinations of all samples, expressed in the per-point g-orthonormal
// frame where the right-hand coefficient tensor is delta_bc delta_da -
// delta_ac delta_db.
inline CurvatureReport constant_curvature_fit(const StatisticalManifoldModel& m,
                                              const ChristoffelField& conn,
                                              const std::vector<Point>& samples,
                                              double tolerance = -1.0) {
  if (samples.size() < 2) throw UsageError("constant_curvature_fit: need at least 2 samples");
  const int n = m.domain.dim;
  if (n < 2) throw UsageError("constant_curvature_fit: dimension must be at least 2");
  if (tolerance <= 0.0) {
    tolerance = conn.provenance == Provenance::analytic ? 1e-8 : 1e-5;
  }

  auto coef = [&](int d, int a, int b, int c) -> double {
    return (b == c && d == a ? 1.0 : 0.0) - (a == c && d == b ? 1.0 : 0.0);
  };

  std::vector<Tensor4> framed;
  framed.reserve(samples.size());
  double num = 0.0, den = 0.0;
  for (const Point& p : samples) {
    const Mat E = orthonormal_frame(m.metric_at(p));
    Tensor4 Rh = to_frame(curvature(conn, p), E);
    for (int d = 0; d < n; ++d)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) {
            const double w = coef(d, a, b, c);
            num += Rh(d, a, b, c) * w;
            den += w * w;
          }
    framed.push_back(Rh);
  }

  CurvatureReport rep;
  rep.tolerance = tolerance;
  if (den < 1e-12) {
    double worst = 0.0;
    for (const Tensor4& Rh : framed) worst = std::max(worst, Rh.max_abs());
    if (worst > tolerance) throw FitError("constant-curvature fit is degenerate");
    rep.k_hat = 0.0;
  } else {
    rep.k_hat = num / den;
  }

  for (std::size_t s = 0; s < samples.size(); ++s) {
    double r = 0.0;
    for (int d = 0; d < n; ++d)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            r = std::max(r, std::abs(framed[s](d, a, b, c) - rep.k_hat * coef(d, a, b, c)));
    rep.points.push_back({samples[s], r});
    rep.max_residual = std::max(rep.max_residual, r);
  }
  rep.constant = rep.max_residual <= tolerance;
  return rep;
}

// k(alpha) from two known members of the alpha family.
inline double interpolate_alpha_curvature(double k1, double k2, double alpha1,
                                          double alpha2, double alpha) {
  if (std::abs(std::abs(alpha1) - std::abs(alpha2)) < 1e-15) {
    throw UsageError("interpolate_alpha_curvature: |alpha1| must differ from |alpha2|");
  }
  return (k2 * alpha1 * alpha1 - k1 * alpha2 * alpha2 + (k1 - k2) * alpha * alpha) /
         (alpha1 * alpha1 - alpha2 * alpha2);
}

// The alpha values where the family becomes flat; empty when the equation
// alpha^2 = v has no real solution.
inline std::vector<double> flat_alpha_values(double k1, double k2, double alpha1,
                                             double alpha2) {
  if (k1 == k2) throw UsageError("flat_alpha_values: k1 must differ from k2");
  if (std::abs(std::abs(alpha1) - std::abs(alpha2)) < 1e-15) {
    throw UsageError("flat_alpha_values: |alpha1| must differ from |alpha2|");
  }
  const double v = (k2 * alpha1 * alpha1 - k1 * alpha2 * alpha2) / (k2 - k1);
  if (v < 0.0) return {};
  const double root = std::sqrt(v);
  if (root == 0.0) return {0.0};
  return {-root, root};
}

// Covariant derivative of the difference tensor with the model's own nabla:
// W(l,i,j,k) = (nab_i K)^l_jk. The K field is FD-composed, so the nested
// scheme keeps the outer derivative stable.
inline Tensor4 nabla_difference_tensor(const StatisticalManifoldModel& m, const Point& p) {
  const int n = m.domain.dim;
  const Tensor3 G = m.connection_at(p);
  const Tensor3 K = difference_tensor(m, p);
  auto K_field = [&](const Point& q) { return difference_tensor(m, q); };
  Tensor4 W(n);
  for (int i = 0; i < n; ++i) {
    const Tensor3 dK = fd_derivative(K_field, p, i, FDScheme::nested_default());
    for (int l = 0; l < n; ++l)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = dK(l, j, k);
          for (int mm = 0; mm < n; ++mm) {
            s += G(l, i, mm) * K(mm, j, k);
            s -= G(mm, i, j) * K(l, mm, k);
            s -= G(mm, i, k) * K(l, j, mm);
          }
          W(l, i, j, k) = s;
        }
  }
  return W;
}

// Max frame residual of (nab K)(Y,Z;X) + (c/2){ g(X,Y)Z + g(X,Z)Y } over the
// samples. Requires the connection to be flat (the Hessian hypothesis); the
// flatness gate throws with the measured curvature norm otherwise.
inline double hessian_curvature_residual(const StatisticalManifoldModel& m,
                                         const std::vector<Point>& samples, double c,
                                         double flat_tolerance = 1e-6) {
  if (samples.empty()) throw UsageError("hessian_curvature_residual: empty sample set");
  double residual = 0.0;
  const int n = m.domain.dim;
  for (const Point& p : samples) {
    const Mat E = orthonormal_frame(m.metric_at(p));
    const Tensor4 R = to_frame(curvature(m.connection, p), E);
    if (R.max_abs() > flat_tolerance) {
      throw StructureError("connection is not flat (curvature norm " +
                           std::to_string(R.max_abs()) + "); Hessian hypothesis fails");
    }
    const Tensor4 W = to_frame(nabla_difference_tensor(m, p), E);
    for (int a = 0; a < n; ++a)      // X = e_a, the differentiation slot
      for (int b = 0; b < n; ++b)    // Y
        for (int cc = 0; cc < n; ++cc)  // Z
          for (int d = 0; d < n; ++d) {
            const double target = 0.5 * c * ((a == b && cc == d ? 1.0 : 0.0) +
                                             (a == cc && b == d ? 1.0 : 0.0));
            residual = std::max(residual, std::abs(W(d, a, b, cc) + target));
          }
  }
  return residual;
}

struct HessianCurvatureFit {
  double c_hat = 0.0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool constant = false;
};

// Least-squares estimate of the Hessian curvature constant from the measured
// nab K, fitting (nab K)(Y,Z;X) = -(c/2){ g(X,Y)Z + g(X,Z)Y } in per-point
// orthonormal frames. Callers gate on flatness of nabla separately.
inline HessianCurvatureFit hessian_curvature_fit(const StatisticalManifoldModel& m,
                                                 const std::vector<Point>& samples,
                                                 double tolerance = 1e-5) {
  if (samples.empty()) throw UsageError("hessian_curvature_fit: empty sample set");
  const int n = m.domain.dim;
  auto coef = [](int d, int a, int b, int cc) -> double {
    return (a == b && cc == d ? 1.0 : 0.0) + (a == cc && b == d ? 1.0 : 0.0);
  };
  std::vector<Tensor4> framed;
  framed.reserve(samples.size());
  double num = 0.0, den = 0.0;
  for (const Point& p : samples) {
    const Mat E = orthonormal_frame(m.metric_at(p));
    Tensor4 W = to_frame(nabla_difference_tensor(m, p), E);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int cc = 0; cc < n; ++cc)
          for (int d = 0; d < n; ++d) {
            const double w = coef(d, a, b, cc);
            num += W(d, a, b, cc) * w;
            den += w * w;
          }
    framed.push_back(W);
  }
  HessianCurvatureFit fit;
  fit.tolerance = tolerance;
  fit.c_hat = den > 0.0 ? -2.0 * num / den : 0.0;
  for (const Tensor4& W : framed) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int cc = 0; cc < n; ++cc)
          for (int d = 0; d < n; ++d) {
            fit.max_residual = std::max(
                fit.max_residual, std::abs(W(d, a, b, cc) + 0.5 * fit.c_hat * coef(d, a, b, cc)));
          }
  }
  fit.constant = fit.max_residual <= tolerance;
  return fit;
}

// Internal-consistency identity relating the curvature tensors of nabla and
// of the Levi-Civita connection through K and nab K; must vanish for every
// statistical structure. Returns the max frame component of the defect.
inline double curvature_decomposition_residual(const StatisticalManifoldModel& m,
                                               const Point& p) {
  const int n = m.domain.dim;
  ChristoffelField lc_field{[&](const Point& q) { return levi_civita(m, q); },
                            Provenance::composed};
  const Tensor4 Rlc = curvature(lc_field, p);
  const Tensor4 R = curvature(m.connection, p);
  const Tensor4 W = nabla_difference_tensor(m, p);
  const Tensor3 K = difference_tensor(m, p);
  Tensor4 defect(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double kk = 0.0;
          for (int mm = 0; mm < n; ++mm)
            kk += K(l, i, mm) * K(mm, j, k) - K(l, j, mm) * K(mm, k, i);
          defect(l, i, j, k) =
              Rlc(l, i, j, k) - (R(l, i, j, k) - W(l, i, j, k) + W(l, j, k, i) + kk);
        }
  const Mat E = orthonormal_frame(m.metric_at(p));
  return to_frame(defect, E).max_abs();
}

// Metric field from a convex potential: g_ij = d^2 phi / dx_i dx_j by nested
// FD, symmetrized; evaluation throws NotConvexError off the convex region.
inline std::function<MetricValue(const Point&)> hessian_metric_from_potential(
    std::function<double(const Point&)> phi, const ChartDomain& domain) {
  return [phi, domain](const Point& p) -> MetricValue {
    domain.require_inside(p);
    const int n = domain.dim;
    Mat H(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double v = fd_second_derivative(phi, p, i, j);
        H(i, j) = v;
        H(j, i) = v;
      }
    Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0) {
      throw NotConvexError("potential Hessian is not positive definite at the point");
    }
    return H;
  };
}

}  // namespace statgeo
