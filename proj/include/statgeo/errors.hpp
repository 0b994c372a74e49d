#pragma once

#include <stdexcept>
#include <string>

namespace statgeo {

// Base class for everything this library throws on purpose. Callers that
// want blanket handling catch this; the CLI maps it to exit code 2 unless a
// more specific code applies.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A point (or an FD stencil point) left the chart domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A field evaluation produced a non-finite value.
class EvalError : public Error {
 public:
  using Error::Error;
};

// Metric not positive definite, or condition number beyond 1e12.
class SingularMetricError : public Error {
 public:
  using Error::Error;
};

// Tensor dimensions disagree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Input violates a structural requirement (not statistical, asymmetric
// cubic, non-flat where flatness is a hypothesis, ...). Carries the
// measured residual in the message.
class StructureError : public Error {
 public:
  using Error::Error;
};

// Caller misuse: bad argument combinations, unknown names, empty samples.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Least-squares curvature fit is degenerate.
class FitError : public Error {
 public:
  using Error::Error;
};

// Potential is not convex where a Hessian metric was requested.
class NotConvexError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature hit its refinement cap without converging.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

// Immersion map is rank-deficient or otherwise unusable.
class ImmersionError : public Error {
 public:
  using Error::Error;
};

// A quantity a theorem divides by is numerically zero (e.g. nu).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Measured data contradicts a theorem's asserted inequality.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace statgeo
