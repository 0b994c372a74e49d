#pragma once

// Adaptive panel Gauss-Legendre quadrature for the Fisher-information
// moment integrals. A fixed-order rule is applied on uniformly split panels
// and the panel count doubles until two successive estimates agree to 1e-7
// relative; positive-support densities are integrated in log substitution by
// the caller, which keeps the panel counts tiny.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "statgeo/errors.hpp"

namespace statgeo {

struct QuadratureOptions {
  int order = 16;          // Gauss-Legendre points per panel
  int initial_panels = 8;
  int max_panels = 1024;
  double rel_tol = 1e-7;   // componentwise against max(1, |value|)
};

namespace quad_detail {

struct Rule {
  std::array<double, 32> nodes{};
  std::array<double, 32> weights{};
  int order = 0;
};

// Legendre nodes by Newton iteration from the Chebyshev initial guess;
// weights 2 / ((1-x^2) P_n'(x)^2).
inline Rule gauss_legendre_rule(int order) {
  if (order < 2 || order > 32) throw UsageError("quadrature order must be in [2, 32]");
  Rule r;
  r.order = order;
  for (int i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // evaluate P_n and P_n' via the three-term recurrence
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[static_cast<std::size_t>(i)] = x;
    r.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

inline const Rule& cached_rule(int order) {
  static const Rule r16 = gauss_legendre_rule(16);
  if (order == 16) return r16;
  thread_local Rule other;
  if (other.order != order) other = gauss_legendre_rule(order);
  return other;
}

}  // namespace quad_detail

inline double integrate_panels(const std::function<double(double)>& f, double lo,
                               double hi, int panels, int order) {
  const quad_detail::Rule& rule = quad_detail::cached_rule(order);
  double total = 0.0;
  const double width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * width;
    const double mid = a + 0.5 * width;
    double panel = 0.0;
    for (int i = 0; i < order; ++i) {
      const double x = mid + 0.5 * width * rule.nodes[static_cast<std::size_t>(i)];
      const double v = f(x);
      if (!std::isfinite(v)) {
        throw EvalError("integrand evaluated to a non-finite value at x=" + std::to_string(x));
      }
      panel += rule.weights[static_cast<std::size_t>(i)] * v;
    }
    total += 0.5 * width * panel;
  }
  return total;
}

inline double integrate_adaptive(const std::function<double(double)>& f, double lo,
                                 double hi, const QuadratureOptions& opt = {}) {
  if (!(hi > lo)) throw UsageError("integration window is empty");
  int panels = opt.initial_panels;
  double prev = integrate_panels(f, lo, hi, panels, opt.order);
  double delta = 0.0;
  while (panels <= opt.max_panels) {
    panels *= 2;
    const double cur = integrate_panels(f, lo, hi, panels, opt.order);
    delta = std::abs(cur - prev);
    if (delta < opt.rel_tol * std::max(1.0, std::abs(cur))) {
      return cur;
    }
    prev = cur;
  }
  throw QuadratureError("quadrature did not converge within " +
                        std::to_string(opt.max_panels) + " panels (last delta " +
                        std::to_string(delta) + ")");
}

}  // namespace statgeo
