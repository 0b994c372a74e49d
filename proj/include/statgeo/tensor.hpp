#pragma once

// Dense storage and index algebra for the small tensors this library works
// with. Chart dimensions never exceed 4 (the models are 2- and 3-dimensional,
// ambients go up to 4), so everything lives in fixed-capacity arrays and
// Eigen matrices capped at 4x4; no heap traffic on the hot paths.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>

#include "statgeo/errors.hpp"

namespace statgeo {

inline constexpr int kMaxDim = 4;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

// A chart point is just its coordinate vector.
using Point = Vec;

// Symmetric positive definite matrix by convention; validated where it
// enters computations (validate_metric, metric_inverse).
using MetricValue = Mat;

namespace detail {
inline void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw ShapeError("tensor dimension " + std::to_string(dim) +
                     " outside supported range [1, " + std::to_string(kMaxDim) + "]");
  }
}
}  // namespace detail

// Rank-3 tensor, indexed (a,b,c). Christoffel symbols are stored with the
// upper index first: G(k,i,j) = Gamma^k_ij. Cubic tensors use their natural
// (i,j,k) order.
class Tensor3 {
 public:
  Tensor3() : Tensor3(1) {}
  explicit Tensor3(int dim) : dim_(dim) {
    detail::check_dim(dim);
    v_.fill(0.0);
  }

  int dim() const { return dim_; }

  double& operator()(int a, int b, int c) { return v_[idx(a, b, c)]; }
  double operator()(int a, int b, int c) const { return v_[idx(a, b, c)]; }

  Tensor3& operator+=(const Tensor3& o) {
    require_same(o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  Tensor3& operator-=(const Tensor3& o) {
    require_same(o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }
  Tensor3& operator*=(double s) {
    for (double& x : v_) x *= s;
    return *this;
  }

  friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
  friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
  friend Tensor3 operator*(Tensor3 a, double s) { return a *= s; }
  friend Tensor3 operator*(double s, Tensor3 a) { return a *= s; }

  double max_abs() const {
    double m = 0.0;
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b)
        for (int c = 0; c < dim_; ++c) m = std::max(m, std::abs((*this)(a, b, c)));
    return m;
  }

  bool all_finite() const {
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b)
        for (int c = 0; c < dim_; ++c)
          if (!std::isfinite((*this)(a, b, c))) return false;
    return true;
  }

 private:
  std::size_t idx(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * kMaxDim + b) * kMaxDim + c;
  }
  void require_same(const Tensor3& o) const {
    if (o.dim_ != dim_) throw ShapeError("tensor3 dimension mismatch");
  }

  int dim_;
  std::array<double, kMaxDim * kMaxDim * kMaxDim> v_;
};

// Rank-4 tensor. Curvature is stored R(l,i,j,k) = R^l_ijk, the coefficient
// of d_l in R(d_i,d_j)d_k.
class Tensor4 {
 public:
  Tensor4() : Tensor4(1) {}
  explicit Tensor4(int dim) : dim_(dim) {
    detail::check_dim(dim);
    v_.fill(0.0);
  }

  int dim() const { return dim_; }

  double& operator()(int a, int b, int c, int d) { return v_[idx(a, b, c, d)]; }
  double operator()(int a, int b, int c, int d) const { return v_[idx(a, b, c, d)]; }

  Tensor4& operator+=(const Tensor4& o) {
    require_same(o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  Tensor4& operator-=(const Tensor4& o) {
    require_same(o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }
  Tensor4& operator*=(double s) {
    for (double& x : v_) x *= s;
    return *this;
  }

  friend Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
  friend Tensor4 operator-(Tensor4 a, const Tensor4& b) { return a -= b; }
  friend Tensor4 operator*(Tensor4 a, double s) { return a *= s; }
  friend Tensor4 operator*(double s, Tensor4 a) { return a *= s; }

  double max_abs() const {
    double m = 0.0;
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b)
        for (int c = 0; c < dim_; ++c)
          for (int d = 0; d < dim_; ++d) m = std::max(m, std::abs((*this)(a, b, c, d)));
    return m;
  }

  bool all_finite() const {
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b)
        for (int c = 0; c < dim_; ++c)
          for (int d = 0; d < dim_; ++d)
            if (!std::isfinite((*this)(a, b, c, d))) return false;
    return true;
  }

 private:
  std::size_t idx(int a, int b, int c, int d) const {
    return ((static_cast<std::size_t>(a) * kMaxDim + b) * kMaxDim + c) * kMaxDim + d;
  }
  void require_same(const Tensor4& o) const {
    if (o.dim_ != dim_) throw ShapeError("tensor4 dimension mismatch");
  }

  int dim_;
  std::array<double, kMaxDim * kMaxDim * kMaxDim * kMaxDim> v_;
};

// Throws unless g is finite, symmetric (1e-12 relative) and positive
// definite with condition number below 1e12.
inline void validate_metric(const Mat& g) {
  if (g.rows() != g.cols()) throw ShapeError("metric matrix is not square");
  if (!g.allFinite()) throw EvalError("metric has non-finite entries");
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw SingularMetricError("metric is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo <= 0.0) {
    throw SingularMetricError("metric is not positive definite (min eigenvalue " +
                              std::to_string(lo) + ")");
  }
  if (hi / lo > 1e12) {
    throw SingularMetricError("metric condition number exceeds 1e12");
  }
}

inline Mat metric_inverse(const Mat& g) {
  validate_metric(g);
  const int n = static_cast<int>(g.rows());
  Mat inv = g.ldlt().solve(Mat::Identity(n, n));
  // symmetrize away the solver's rounding
  inv = 0.5 * (inv + inv.transpose()).eval();
  return inv;
}

// Contracts the first slot with the metric: given T(m,i,j) = Gamma^m_ij,
// returns L with L(k,i,j) = sum_m g_km Gamma^m_ij, i.e. the lowered symbols
// Gamma_ij,k kept in the same slot layout so an identity metric leaves the
// array unchanged.
inline Tensor3 lower_index(const Tensor3& T, const Mat& g) {
  const int n = T.dim();
  if (g.rows() != n) throw ShapeError("lower_index: metric dimension mismatch");
  Tensor3 L(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int m = 0; m < n; ++m) s += g(k, m) * T(m, i, j);
        L(k, i, j) = s;
      }
  return L;
}

inline Tensor3 raise_index(const Tensor3& T, const Mat& g) {
  return lower_index(T, metric_inverse(g));
}

// Gram-Schmidt on the coordinate basis against g. Column a of the result is
// the a-th frame vector; the frame is g-orthonormal, so residual tensors
// expressed in it are scale-free across models.
inline Mat orthonormal_frame(const Mat& g) {
  validate_metric(g);
  const int n = static_cast<int>(g.rows());
  Mat E = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    Vec v = Vec::Zero(n);
    v(a) = 1.0;
    for (int b = 0; b < a; ++b) {
      const Vec eb = E.col(b);
      v -= (eb.dot(g * v)) * eb;
    }
    const double len = std::sqrt(v.dot(g * v));
    if (!(len > 0.0) || !std::isfinite(len)) {
      throw SingularMetricError("orthonormal frame construction failed");
    }
    E.col(a) = v / len;
  }
  return E;
}

// R(l,i,j,k) -> Rhat(d,a,b,c) = Einv(d,l) R(l,i,j,k) E(i,a) E(j,b) E(k,c).
inline Tensor4 to_frame(const Tensor4& R, const Mat& E) {
  const int n = R.dim();
  if (E.rows() != n) throw ShapeError("to_frame: frame dimension mismatch");
  const Mat Einv = E.inverse();
  Tensor4 out(n);
  for (int d = 0; d < n; ++d)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          double s = 0.0;
          for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                  s += Einv(d, l) * R(l, i, j, k) * E(i, a) * E(j, b) * E(k, c);
          out(d, a, b, c) = s;
        }
  return out;
}

// Same change of basis for a (1,2)-tensor stored T(l,i,j).
inline Tensor3 to_frame(const Tensor3& T, const Mat& E) {
  const int n = T.dim();
  if (E.rows() != n) throw ShapeError("to_frame: frame dimension mismatch");
  const Mat Einv = E.inverse();
  Tensor3 out(n);
  for (int d = 0; d < n; ++d)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += Einv(d, l) * T(l, i, j) * E(i, a) * E(j, b);
        out(d, a, b) = s;
      }
  return out;
}

inline double max_symmetry_defect_lower2(const Tensor3& T) {
  // asymmetry of the two trailing slots, e.g. torsion of Gamma^k_ij
  double m = 0.0;
  for (int a = 0; a < T.dim(); ++a)
    for (int b = 0; b < T.dim(); ++b)
      for (int c = 0; c < T.dim(); ++c) m = std::max(m, std::abs(T(a, b, c) - T(a, c, b)));
  return m;
}

inline double max_total_symmetry_defect(const Tensor3& C) {
  double m = 0.0;
  for (int a = 0; a < C.dim(); ++a)
    for (int b = 0; b < C.dim(); ++b)
      for (int c = 0; c < C.dim(); ++c) {
        m = std::max(m, std::abs(C(a, b, c) - C(b, a, c)));
        m = std::max(m, std::abs(C(a, b, c) - C(a, c, b)));
      }
  return m;
}

}  // namespace statgeo
