#pragma once

#include <optional>

#include "sturm/analysis.hpp"

namespace sturm {

struct CheckOptions {
  /// Residual tolerance, relative to max(|lhs|, |rhs reference|, 1).
  double rel_tol = 1e-7;
  /// Eigenfunction sample grid for inner-product conditions.
  int grid_points = 4097;
  /// Curve-membership tolerance on the indicator.
  double curve_tol = 1e-12;
  EigenOptions eigen{};
};

/// Which extremum of the coefficient ratio/difference a condition uses.
enum class ExtremalSide { Min, Max };

/// Outcome of a uniqueness-condition check. target is the theorem's
/// left-hand side (an eigenvalue, or an eigenvalue gap), condition the
/// right-hand side. When satisfied, `reconstructed` carries the coefficient
/// the theorem asserts ((lref/l) p_ref for densities, q_ref + gap for
/// potentials) and reconstruction_residual its exact max deviation from the
/// given coefficient. scale_factor is the reconstruction constant: the
/// eigenvalue ratio for densities, the gap for potentials.
struct AmbVerdict {
  double target = 0.0;
  double condition = 0.0;
  double residual = 0.0;
  bool satisfied = false;
  /// Extremal side swapped because the reference eigenvalue is negative.
  bool swapped = false;
  double scale_factor = 0.0;
  std::optional<CoefficientFn> reconstructed;
  double reconstruction_residual = 0.0;
  /// Present only for the n-th-eigenvalue check, which couples an
  /// inner-product condition (reported in `condition`) with an extremal one.
  std::optional<double> condition_extremal;
  std::optional<double> residual_mean;
  std::optional<double> residual_extremal;
};

/// lambda_0 = lref_0 * ext(p_ref / p). Refuses boundary pairs on the zero
/// curve (CurveExcludedError), where every density yields lambda_0 = 0.
AmbVerdict check_extremal(const CoefficientFn& p, const CoefficientFn& p_ref,
                          double alpha, double beta, ExtremalSide side,
                          const CheckOptions& opts = {});

/// lambda_0 = lref_0 * (pcheck f0, f0) / (f0, f0) with f0 the ground
/// eigenfunction of the reference density and unweighted inner products.
AmbVerdict check_weighted_mean(const CoefficientFn& p, const CoefficientFn& p_ref,
                               double alpha, double beta, const CheckOptions& opts = {});

/// n-th eigenvalue variant (n > 0, lambda_n != 0): both the inner-product
/// and the extremal condition must hold.
AmbVerdict check_nth(const CoefficientFn& p, const CoefficientFn& p_ref, double alpha,
                     double beta, int n, ExtremalSide side = ExtremalSide::Max,
                     const CheckOptions& opts = {});

/// mu_0 - mu_ref_0 = ((q - q_ref) f0, f0) / (f0, f0); satisfied checks
/// reconstruct q = q_ref + (mu_0 - mu_ref_0).
AmbVerdict sl_check_yurko(const CoefficientFn& q, const CoefficientFn& q_ref,
                          double gamma, double delta, const CheckOptions& opts = {});

/// mu_0 - mu_ref_0 = essinf/esssup of (q - q_ref); extrema are exact for
/// piecewise polynomials.
AmbVerdict sl_check_extremal(const CoefficientFn& q, const CoefficientFn& q_ref,
                             double gamma, double delta, ExtremalSide side,
                             const CheckOptions& opts = {});

}  // namespace sturm
