#pragma once

// Fisher information and the skewness cubic straight from a parametric
// density, by adaptive Gauss-Legendre quadrature over the sample space.
// Families supported on the positive half-line integrate in u = log x, which
// tames both the x^(-1/2) boundary layer and the exponential tail with a
// handful of panels.

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "statgeo/domain.hpp"
#include "statgeo/errors.hpp"
#include "statgeo/fd.hpp"
#include "statgeo/quadrature.hpp"
#include "statgeo/statistical.hpp"
#include "statgeo/tensor.hpp"

namespace statgeo {

enum class Support { real_line, positive_halfline };

struct DensityFamily {
  std::string label;
  int param_dim = 0;
  Support support = Support::real_line;
  // log p(x; theta), differentiable in theta for every x in the window
  std::function<double(double, const Point&)> log_density;
  // integration window in x for a given theta; must capture all but a
  // negligible (< rel_tol) fraction of every moment we take
  std::function<std::pair<double, double>(const Point&)> window;
  ChartDomain theta_domain;
};

struct FisherStructure {
  MetricValue metric;
  Tensor3 cubic;
  double mass = 0.0;  // integral of the density itself, as a diagnostic
};

namespace density_detail {

// integral of f(x) over the family's window, in log space when the support
// is the positive half-line
inline double moment(const DensityFamily& fam, const Point& theta,
                     const std::function<double(double)>& f,
                     const QuadratureOptions& opt) {
  const auto [lo, hi] = fam.window(theta);
  if (!(lo < hi)) throw UsageError("density window is empty");
  if (fam.support == Support::positive_halfline) {
    if (lo <= 0.0) throw UsageError("positive-support window must have lo > 0");
    return integrate_adaptive([&](double u) { const double x = std::exp(u); return f(x) * x; },
                              std::log(lo), std::log(hi), opt);
  }
  return integrate_adaptive(f, lo, hi, opt);
}

}  // namespace density_detail

// Metric g_ij = E[s_i s_j] and cubic T_ijk = E[s_i s_j s_k] of the score
// s_i = d(log p)/d(theta_i). The density must integrate to 1 over its window
// (checked to 1e-6); a miss means the window is too small or the density is
// not normalized, either way the moments are untrustworthy.
inline FisherStructure fisher_structure_from_density(const DensityFamily& fam,
                                                     const Point& theta,
                                                     const QuadratureOptions& opt = {}) {
  fam.theta_domain.require_inside(theta);
  const int n = fam.param_dim;

  auto score = [&](double x, int i) {
    auto along_theta = [&](const Point& t) { return fam.log_density(x, t); };
    return fd_derivative(along_theta, theta, i, FDScheme::analytic_default());
  };
  auto density = [&](double x) { return std::exp(fam.log_density(x, theta)); };

  FisherStructure out;
  out.mass = density_detail::moment(fam, theta, density, opt);
  if (std::abs(out.mass - 1.0) > 1e-6) {
    throw StructureError(fam.label + ": density mass is " + std::to_string(out.mass) +
                         ", not 1; window or normalization is wrong");
  }

  out.metric = Mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = density_detail::moment(
          fam, theta, [&](double x) { return density(x) * score(x, i) * score(x, j); }, opt);
      out.metric(i, j) = v;
      out.metric(j, i) = v;
    }
  validate_metric(out.metric);

  out.cubic = Tensor3(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        const double v = density_detail::moment(
            fam, theta,
            [&](double x) { return density(x) * score(x, i) * score(x, j) * score(x, k); },
            opt);
        out.cubic(i, j, k) = v;
        out.cubic(i, k, j) = v;
        out.cubic(j, i, k) = v;
        out.cubic(j, k, i) = v;
        out.cubic(k, i, j) = v;
        out.cubic(k, j, i) = v;
      }
  return out;
}

// Alpha connection assembled from a metric field and a totally symmetric
// cubic field: Gamma(alpha) = Gamma(LC) - (alpha/2) * C with the last index
// raised. Works for measured (quadrature-backed) fields, hence the nested FD
// scheme for the metric derivatives.
inline ChristoffelField connection_from_cubic(
    std::function<MetricValue(const Point&)> metric_field,
    std::function<Tensor3(const Point&)> cubic_field, double alpha,
    const ChartDomain& domain, const FDScheme& metric_scheme = FDScheme::nested_default()) {
  auto eval = [metric_field, cubic_field, alpha, domain, metric_scheme](
                  const Point& p) -> Tensor3 {
    domain.require_inside(p);
    const int n = domain.dim;
    MetricValue g = metric_field(p);
    validate_metric(g);
    const Tensor3 C = cubic_field(p);
    const double defect = max_total_symmetry_defect(C);
    if (defect > 1e-6 * std::max(1.0, C.max_abs())) {
      throw StructureError("cubic field is not totally symmetric (defect " +
                           std::to_string(defect) + ")");
    }

    std::vector<Mat> dg;
    for (int i = 0; i < n; ++i) dg.push_back(fd_derivative(metric_field, p, i, metric_scheme));
    const Mat gi = metric_inverse(g);
    Tensor3 G(n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l)
            s += gi(k, l) * (dg[static_cast<std::size_t>(i)](j, l) +
                             dg[static_cast<std::size_t>(j)](i, l) -
                             dg[static_cast<std::size_t>(l)](i, j));
          G(k, i, j) = 0.5 * s;
        }
    const Tensor3 Csharp = raise_index(C, g);
    return G - Csharp * (0.5 * alpha);
  };
  return ChristoffelField{eval, Provenance::composed};
}

}  // namespace statgeo
