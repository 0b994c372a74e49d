#pragma once

// Central finite differences for fields over chart coordinates. Fields may
// return doubles, Vec/Mat, or Tensor3/Tensor4; anything with +, - and
// scalar * works. The default scheme (order 4 plus one Richardson halving)
// was chosen so that triple derivatives of the model metrics stay accurate
// at the points the verification suites probe.

#include <cmath>
#include <string>
#include <type_traits>

#include "statgeo/errors.hpp"
#include "statgeo/tensor.hpp"

namespace statgeo {

struct FDScheme {
  double step = 1e-4;
  int order = 4;          // 2 or 4
  bool richardson = true; // one halving: (16 D(h/2) - D(h)) / 15

  static FDScheme analytic_default() { return FDScheme{}; }
  // For fields that are themselves finite-difference compositions
  // (e.g. Christoffels extracted from an immersion solve): a larger step
  // keeps the inner FD noise from being amplified.
  static FDScheme composed_default() { return FDScheme{2e-3, 4, true}; }
  // For quadrature-backed fields and for second derivatives.
  static FDScheme nested_default() { return FDScheme{1e-3, 4, true}; }
};

namespace detail {

template <class V>
void check_finite(const V& v) {
  if constexpr (std::is_floating_point_v<V>) {
    if (!std::isfinite(v)) throw EvalError("field evaluated to a non-finite value");
  } else if constexpr (std::is_same_v<V, Tensor3> || std::is_same_v<V, Tensor4>) {
    if (!v.all_finite()) throw EvalError("field evaluated to a non-finite tensor");
  } else {
    if (!v.allFinite()) throw EvalError("field evaluated to a non-finite value");
  }
}

template <class F>
auto central_diff(F&& field, const Point& p, int axis, double h, int order)
    -> decltype(field(p)) {
  Point q = p;
  auto at = [&](double offset) {
    q(axis) = p(axis) + offset;
    auto v = field(q);
    check_finite(v);
    return v;
  };
  if (order == 2) {
    return (at(h) - at(-h)) * (1.0 / (2.0 * h));
  }
  // order 4: (-f(+2h) + 8 f(+h) - 8 f(-h) + f(-2h)) / 12h
  return (at(-2.0 * h) - at(2.0 * h) + 8.0 * (at(h) - at(-h))) * (1.0 / (12.0 * h));
}

}  // namespace detail

template <class F>
auto fd_derivative(F&& field, const Point& p, int axis, const FDScheme& scheme = {})
    -> decltype(field(p)) {
  if (axis < 0 || axis >= p.size()) throw UsageError("fd_derivative: axis out of range");
  if (!(scheme.step > 0.0)) throw UsageError("fd_derivative: step must be positive");
  if (scheme.order != 2 && scheme.order != 4) {
    throw UsageError("fd_derivative: order must be 2 or 4");
  }
  if (!scheme.richardson) {
    return detail::central_diff(field, p, axis, scheme.step, scheme.order);
  }
  auto coarse = detail::central_diff(field, p, axis, scheme.step, scheme.order);
  auto fine = detail::central_diff(field, p, axis, scheme.step / 2.0, scheme.order);
  if (scheme.order == 4) {
    return (fine * 16.0 - coarse) * (1.0 / 15.0);
  }
  return (fine * 4.0 - coarse) * (1.0 / 3.0);
}

// d^2 field / (dx_i dx_j) as an FD of an FD. Both layers use the scheme's
// step, so callers pass a coarser scheme than for first derivatives.
template <class F>
auto fd_second_derivative(F&& field, const Point& p, int i, int j,
                          const FDScheme& scheme = FDScheme::nested_default())
    -> decltype(field(p)) {
  auto inner = [&](const Point& q) { return fd_derivative(field, q, j, scheme); };
  return fd_derivative(inner, p, i, scheme);
}

}  // namespace statgeo
