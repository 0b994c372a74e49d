#pragma once

// The model registry: named statistical manifolds with analytic metric,
// analytic alpha families of connections, cubic tensors where they are known
// in closed form, and (for the two probability families) the underlying
// densities so the quadrature path can be cross-checked against the closed
// forms.

#include <cmath>
#include <numbers>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "statgeo/density.hpp"
#include "statgeo/domain.hpp"
#include "statgeo/errors.hpp"
#include "statgeo/statistical.hpp"
#include "statgeo/tensor.hpp"

namespace statgeo {

struct ModelSpec {
  std::string name;
  std::map<std::string, double> params;
  bool as_printed = false;  // swap in the literal textbook symbol tables where they differ
};

struct ModelInfo {
  std::string name;
  std::string description;
  std::string parameters;  // human-readable parameter summary for list-models
};

namespace model_detail {

inline double get_param(const ModelSpec& spec, const std::string& key, double fallback) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

inline void reject_unknown_params(const ModelSpec& spec,
                                  const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : spec.params) {
    (void)value;
    bool ok = false;
    for (const auto& a : allowed) ok = ok || a == key;
    if (!ok) {
      std::string msg = spec.name + ": unknown parameter '" + key + "' (allowed:";
      if (allowed.empty()) msg += " none";
      for (const auto& a : allowed) msg += " " + a;
      throw UsageError(msg + ")");
    }
  }
}

inline int get_dim_param(const ModelSpec& spec, int fallback, int lo, int hi) {
  const double raw = get_param(spec, "dim", fallback);
  const int dim = static_cast<int>(raw);
  if (raw != dim || dim < lo || dim > hi) {
    throw UsageError(spec.name + ": dim must be an integer in [" + std::to_string(lo) +
                     "," + std::to_string(hi) + "]");
  }
  return dim;
}

inline Point make_point(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p(i++) = x;
  return p;
}

// ---- euclidean ----------------------------------------------------------

inline StatisticalManifoldModel build_euclidean(const ModelSpec& spec) {
  reject_unknown_params(spec, {"dim"});
  const int n = get_dim_param(spec, 2, 2, kMaxDim);
  StatisticalManifoldModel m;
  m.label = "euclidean";
  m.domain.dim = n;
  m.domain.contains = [](const Point&) { return true; };
  m.domain.sample_box = Box{Point::Constant(n, -2.0), Point::Constant(n, 2.0)};
  m.metric = [n](const Point&) -> MetricValue { return Mat::Identity(n, n); };
  m.connection = ChristoffelField{[n](const Point&) { return Tensor3(n); },
                                  Provenance::analytic};
  m.cubic = [n](const Point&) { return Tensor3(n); };
  m.alpha_family = [n](double) {
    return ChristoffelField{[n](const Point&) { return Tensor3(n); }, Provenance::analytic};
  };
  m.anchor = Point::Zero(n);
  return m;
}

// ---- normal family ------------------------------------------------------
// Chart theta = (theta1, theta2) with mean sqrt(2)*theta1 and standard
// deviation theta2 > 0, which makes the Fisher metric conformally flat:
// g = 2/(theta2)^2 * I.

inline StatisticalManifoldModel build_normal(const ModelSpec& spec) {
  reject_unknown_params(spec, {});
  StatisticalManifoldModel m;
  m.label = "normal_family";
  m.domain.dim = 2;
  m.domain.contains = [](const Point& p) { return p(1) > 0.0; };
  m.domain.sample_box = Box{make_point({-2.0, 0.5}), make_point({2.0, 3.0})};
  m.metric = [](const Point& p) -> MetricValue {
    const double s = 2.0 / (p(1) * p(1));
    Mat g = Mat::Zero(2, 2);
    g(0, 0) = s;
    g(1, 1) = s;
    return g;
  };
  const bool printed = spec.as_printed;
  m.alpha_family = [printed](double alpha) {
    auto eval = [alpha, printed](const Point& p) {
      const double t = p(1);
      Tensor3 G(2);
      if (printed) {
        // literal symbol table; fails the statistical check for most alpha
        G(1, 0, 0) = (2.0 * alpha - 1.0) / t;
        G(1, 1, 1) = (1.0 + alpha) / t;
      } else {
        G(0, 0, 1) = G(0, 1, 0) = -(1.0 + alpha) / t;
        G(1, 0, 0) = (1.0 - alpha) / t;
        G(1, 1, 1) = -(1.0 + 2.0 * alpha) / t;
      }
      return G;
    };
    return ChristoffelField{eval, Provenance::analytic};
  };
  m.connection = m.alpha_family(1.0);
  if (!printed) {
    m.cubic = [](const Point& p) {
      const double w = 4.0 / (p(1) * p(1) * p(1));
      Tensor3 C(2);
      C(0, 0, 1) = C(0, 1, 0) = C(1, 0, 0) = w;
      C(1, 1, 1) = 2.0 * w;
      return C;
    };
  }
  m.anchor = make_point({0.0, 1.0});
  return m;
}

// ---- inverse gaussian family --------------------------------------------
// Positive chart (theta1, theta2); the symbol table is the consistent one
// (it equals Levi-Civita minus alpha/2 times the raised cubic), so the
// printed flag changes nothing here.

inline StatisticalManifoldModel build_inverse_gaussian(const ModelSpec& spec) {
  reject_unknown_params(spec, {});
  StatisticalManifoldModel m;
  m.label = "inverse_gaussian_family";
  m.domain.dim = 2;
  m.domain.contains = [](const Point& p) { return p(0) > 0.0 && p(1) > 0.0; };
  m.domain.sample_box = Box{make_point({0.5, 0.5}), make_point({3.0, 3.0})};
  m.metric = [](const Point& p) -> MetricValue {
    Mat g = Mat::Zero(2, 2);
    g(0, 0) = p(1) / (p(0) * p(0) * p(0));
    g(1, 1) = 0.5 / (p(1) * p(1));
    return g;
  };
  m.alpha_family = [](double alpha) {
    auto eval = [alpha](const Point& p) {
      const double t1 = p(0), t2 = p(1);
      Tensor3 G(2);
      G(0, 0, 0) = -1.5 * (1.0 + alpha) / t1;
      G(1, 0, 0) = (alpha - 1.0) * t2 * t2 / (t1 * t1 * t1);
      G(0, 0, 1) = G(0, 1, 0) = 0.5 * (1.0 + alpha) / t2;
      G(1, 1, 1) = (alpha - 1.0) / t2;
      return G;
    };
    return ChristoffelField{eval, Provenance::analytic};
  };
  m.connection = m.alpha_family(1.0);
  m.cubic = [](const Point& p) {
    const double t1 = p(0), t2 = p(1);
    Tensor3 C(2);
    C(0, 0, 0) = 3.0 * t2 / (t1 * t1 * t1 * t1);
    const double c112 = -1.0 / (t1 * t1 * t1);
    C(0, 0, 1) = C(0, 1, 0) = C(1, 0, 0) = c112;
    C(1, 1, 1) = -1.0 / (t2 * t2 * t2);
    return C;
  };
  m.anchor = make_point({1.0, 1.0});
  return m;
}

// ---- upper half space ----------------------------------------------------
// Hyperbolic metric w^-2 * I on { y : y_dim = w > 0 } paired with a flat
// connection; a Hessian structure whose Hessian curvature constant is 4.

inline Tensor3 uhs_flat_connection(int n, const Point& p) {
  const double w = p(n - 1);
  Tensor3 G(n);
  G(n - 1, n - 1, n - 1) = 1.0 / w;
  for (int i = 0; i + 1 < n; ++i) G(n - 1, i, i) = 2.0 / w;
  return G;
}

inline Tensor3 uhs_levi_civita(int n, const Point& p) {
  // closed form for g = w^-2 delta: G^k_ij = -(d_ik d_jd + d_jk d_id - d_ij d_kd)/w
  const double w = p(n - 1);
  Tensor3 G(n);
  const int d = n - 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double v = (i == k && j == d ? 1.0 : 0.0) + (j == k && i == d ? 1.0 : 0.0) -
                         (i == j && k == d ? 1.0 : 0.0);
        if (v != 0.0) G(k, i, j) = -v / w;
      }
  return G;
}

inline StatisticalManifoldModel build_upper_half_space(const ModelSpec& spec) {
  reject_unknown_params(spec, {"dim"});
  const int n = get_dim_param(spec, 2, 2, kMaxDim);
  StatisticalManifoldModel m;
  m.label = "upper_half_space";
  m.domain.dim = n;
  m.domain.contains = [n](const Point& p) { return p(n - 1) > 0.0; };
  Point lo = Point::Constant(n, -2.0), hi = Point::Constant(n, 2.0);
  lo(n - 1) = 0.5;
  hi(n - 1) = 3.0;
  m.domain.sample_box = Box{lo, hi};
  m.metric = [n](const Point& p) -> MetricValue {
    const double w = p(n - 1);
    return Mat::Identity(n, n) / (w * w);
  };
  m.connection = ChristoffelField{[n](const Point& p) { return uhs_flat_connection(n, p); },
                                  Provenance::analytic};
  m.cubic = [n](const Point& p) {
    const double w3 = std::pow(p(n - 1), 3);
    Tensor3 C(n);
    const int d = n - 1;
    for (int i = 0; i < d; ++i) {
      C(i, i, d) = C(i, d, i) = C(d, i, i) = -2.0 / w3;
    }
    C(d, d, d) = -4.0 / w3;
    return C;
  };
  // the family runs through LC at alpha 0 and the flat connection at 1:
  // Gamma(alpha) = Gamma(LC) + alpha * (Gamma(flat) - Gamma(LC))
  m.alpha_family = [n](double alpha) {
    auto eval = [n, alpha](const Point& p) {
      const Tensor3 lcv = uhs_levi_civita(n, p);
      return lcv + (uhs_flat_connection(n, p) - lcv) * alpha;
    };
    return ChristoffelField{eval, Provenance::analytic};
  };
  Point anchor = Point::Zero(n);
  anchor(n - 1) = 1.0;
  m.anchor = anchor;
  return m;
}

// ---- affine R^3 -----------------------------------------------------------
// Constant metric a * I with a strength-b cubic connection. Three symbol
// tables are wired in:
//   variant 0 (default)  G^k_ij = b/2 whenever {i,j,k} = {1,2,3}; constant
//                        curvature -b^2/(4a)
//   variant 1            literal table kept for failure-path demos; it is
//                        torsion-free but not statistical
//   variant 2            diagonal-heavy reading; constant curvature +b^2/(4a)
// The as_printed flag selects variant 1.

inline StatisticalManifoldModel build_affine_r3(const ModelSpec& spec) {
  reject_unknown_params(spec, {"a", "b", "variant"});
  const double a = get_param(spec, "a", 1.0);
  const double b = get_param(spec, "b", 1.0);
  if (a <= 0.0) throw UsageError("affine_r3: a must be positive");
  const double vraw = get_param(spec, "variant", spec.as_printed ? 1.0 : 0.0);
  const int variant = static_cast<int>(vraw);
  if (vraw != variant || variant < 0 || variant > 2) {
    throw UsageError("affine_r3: variant must be 0, 1, or 2");
  }

  StatisticalManifoldModel m;
  m.label = "affine_r3";
  m.domain.dim = 3;
  m.domain.contains = [](const Point&) { return true; };
  m.domain.sample_box = Box{Point::Constant(3, -2.0), Point::Constant(3, 2.0)};
  m.metric = [a](const Point&) -> MetricValue { return Mat::Identity(3, 3) * a; };

  auto symbols = [b, variant](double scale_b) {
    // scale_b multiplies b; the alpha family is alpha * (symbols at b)
    const double bb = b * scale_b;
    const double s = 0.5 * bb;
    Tensor3 G(3);
    if (variant == 0) {
      G(0, 1, 2) = G(0, 2, 1) = s;
      G(1, 0, 2) = G(1, 2, 0) = s;
      G(2, 0, 1) = G(2, 1, 0) = s;
    } else if (variant == 1) {
      G(0, 0, 0) = bb;
      G(0, 1, 1) = s;
      G(0, 2, 2) = s;
      G(1, 0, 1) = G(1, 1, 0) = s;
      G(1, 0, 2) = G(1, 2, 0) = s;
    } else {
      G(0, 0, 0) = bb;
      G(0, 1, 1) = s;
      G(0, 2, 2) = s;
      G(1, 0, 1) = G(1, 1, 0) = s;
      G(2, 0, 2) = G(2, 2, 0) = s;
    }
    return G;
  };
  m.connection = ChristoffelField{[symbols](const Point&) { return symbols(1.0); },
                                  Provenance::analytic};
  // metric is constant, so LC = 0 and the alpha member just rescales b
  m.alpha_family = [symbols](double alpha) {
    return ChristoffelField{[symbols, alpha](const Point&) { return symbols(alpha); },
                            Provenance::analytic};
  };
  if (variant != 1) {
    // C = nabla g = -2 a * (symbols lowered); constant coefficients
    m.cubic = [a, symbols](const Point&) {
      Tensor3 C(3);
      const Tensor3 G = symbols(1.0);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) C(i, j, k) = -2.0 * a * G(i, j, k);
      return C;
    };
  }
  m.anchor = Point::Zero(3);
  return m;
}

}  // namespace model_detail

inline const std::vector<ModelInfo>& model_registry() {
  static const std::vector<ModelInfo> infos = {
      {"euclidean", "flat chart with the identity metric and zero connection; every curvature check is trivially zero",
       "dim (integer, 2..4, default 2)"},
      {"normal_family", "Gaussian location-scale chart with conformally flat Fisher metric; alpha connections of constant curvature (alpha^2-1)/2",
       "none"},
      {"inverse_gaussian_family", "two-parameter exponential family on the positive half-line; same constant-curvature profile (alpha^2-1)/2",
       "none"},
      {"upper_half_space", "hyperbolic metric with a flat connection; Hessian structure of Hessian curvature 4, alpha curvature alpha^2-1",
       "dim (integer, 2..4, default 2)"},
      {"affine_r3", "constant metric a*I on R^3 with a strength-b cubic connection; constant curvature -b^2/(4a) in the default variant",
       "a (>0, default 1), b (default 1), variant (0, 1, or 2; default 0)"},
  };
  return infos;
}

inline StatisticalManifoldModel build_model(const ModelSpec& spec) {
  if (spec.name == "euclidean") return model_detail::build_euclidean(spec);
  if (spec.name == "normal_family") return model_detail::build_normal(spec);
  if (spec.name == "inverse_gaussian_family") return model_detail::build_inverse_gaussian(spec);
  if (spec.name == "upper_half_space") return model_detail::build_upper_half_space(spec);
  if (spec.name == "affine_r3") return model_detail::build_affine_r3(spec);
  std::string known;
  for (const auto& info : model_registry()) known += " " + info.name;
  throw UsageError("unknown model '" + spec.name + "' (known:" + known + ")");
}

// Densities behind the two probability families, for cross-checking the
// closed-form metric and cubic against direct quadrature.
inline std::optional<DensityFamily> density_family_for(const std::string& model_name) {
  if (model_name == "normal_family") {
    DensityFamily fam;
    fam.label = "normal_family";
    fam.param_dim = 2;
    fam.support = Support::real_line;
    fam.log_density = [](double x, const Point& t) {
      const double mean = std::sqrt(2.0) * t(0);
      const double sd = t(1);
      const double z = (x - mean) / sd;
      return -0.5 * std::log(2.0 * std::numbers::pi) - std::log(sd) - 0.5 * z * z;
    };
    fam.window = [](const Point& t) {
      const double mean = std::sqrt(2.0) * t(0);
      const double sd = t(1);
      return std::make_pair(mean - 12.0 * sd, mean + 12.0 * sd);
    };
    fam.theta_domain.dim = 2;
    fam.theta_domain.contains = [](const Point& t) { return t(1) > 0.0; };
    fam.theta_domain.sample_box =
        Box{model_detail::make_point({-2.0, 0.5}), model_detail::make_point({2.0, 3.0})};
    return fam;
  }
  if (model_name == "inverse_gaussian_family") {
    DensityFamily fam;
    fam.label = "inverse_gaussian_family";
    fam.param_dim = 2;
    fam.support = Support::positive_halfline;
    fam.log_density = [](double x, const Point& t) {
      const double mu = 1.0 / t(0);
      const double d = x - mu;
      return 0.5 * std::log(t(1)) - 0.5 * std::log(2.0 * std::numbers::pi) - 0.5 * std::log(x) -
             0.5 * t(1) * d * d / x;
    };
    fam.window = [](const Point& t) {
      const double mu = 1.0 / t(0);
      const double z = t(1) / t(0);
      const double lo = mu * std::min(1e-3, z / 100.0);
      const double hi = mu + 90.0 / t(1) + 10.0 * std::sqrt(mu / t(1));
      return std::make_pair(lo, hi);
    };
    fam.theta_domain.dim = 2;
    fam.theta_domain.contains = [](const Point& t) { return t(0) > 0.0 && t(1) > 0.0; };
    fam.theta_domain.sample_box =
        Box{model_detail::make_point({0.5, 0.5}), model_detail::make_point({3.0, 3.0})};
    return fam;
  }
  return std::nullopt;
}

}  // namespace statgeo
