#pragma once

#include "sturm/coefficient.hpp"

namespace sturm {

/// Separated self-adjoint boundary conditions
///   u(0)   cos(left)  + u'(0) sin(left)  = 0,   left  in (0, pi],
///   u(L)   cos(right) + u'(L) sin(right) = 0,   right in [0, pi).
struct BoundaryAngles {
  double left;
  double right;

  /// Validates the ranges; values within 1e-12 of pi snap to pi.
  static BoundaryAngles checked(double left, double right);
};

/// Unified boundary-value problem  -u'' + q(x) u = lambda w(x) u  on [0, L],
/// covering the weighted string (q = 0, w = density, L = 1) and the
/// Sturm-Liouville form (w = 1, L = pi).
struct SpectralProblem {
  CoefficientFn potential;  // q
  CoefficientFn weight;     // w, positive and bounded away from 0
  BoundaryAngles angles;

  double length() const { return weight.domain_end(); }

  static SpectralProblem string(CoefficientFn density, double alpha, double beta,
                                double positivity_floor = kPositivityFloor);
  static SpectralProblem sturm_liouville(CoefficientFn q, double gamma, double delta);
};

}  // namespace sturm
