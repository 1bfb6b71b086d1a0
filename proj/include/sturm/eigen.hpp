#pragma once

#include <vector>

#include "sturm/ivp.hpp"

namespace sturm {

struct EigenOptions {
  IvpOptions ivp{};
  /// Relative/absolute tolerance on the located eigenvalue.
  double lambda_tol = 1e-10;
  /// Bracket expansion gives up beyond this magnitude.
  double bracket_limit = 1e12;
};

/// Characteristic function W(lambda) = u(L) cos(right) + u'(L) sin(right);
/// its zeros are the eigenvalues. Kept for diagnostics; indexing goes
/// through the Prufer angle.
double characteristic(const SpectralProblem& prob, double lambda,
                      const IvpOptions& opts = {});

/// n-th eigenvalue, located as the unique lambda with terminal Prufer angle
/// theta(L, lambda) = (n+1) pi - right. theta(L, .) is strictly increasing,
/// so the root is bracketed by geometric expansion (downward from -1,
/// upward from an oscillation-count bound), narrowed by bisection and
/// polished by secant steps on the angle residual.
double eigenvalue(const SpectralProblem& prob, int n, const EigenOptions& opts = {});

struct Eigenpair {
  int n = 0;
  double value = 0.0;
  /// Weighted norm integral of the raw shot, used to scale samples to
  /// norm 1. The sign of the samples stays fixed by the initial data.
  double normalization = 0.0;
  std::vector<double> x, u, du;
};

/// Dense-sampled eigenfunction at lambda_n, scaled so that
/// int_0^L w u^2 dx = 1 (Simpson on the sample grid). grid_points must be
/// odd and >= 3.
Eigenpair eigenfunction(const SpectralProblem& prob, int n, int grid_points = 4097,
                        const EigenOptions& opts = {});

struct SampledFn {
  std::vector<double> x;
  std::vector<double> y;
};

/// int weight * f * g dx by composite Simpson on the common uniform grid
/// (weight = 1 when null). Throws DomainError on mismatched grids.
double inner_product(const SampledFn& f, const SampledFn& g,
                     const CoefficientFn* weight = nullptr);

}  // namespace sturm
