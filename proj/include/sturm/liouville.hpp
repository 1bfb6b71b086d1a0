#pragma once

#include <vector>

#include "sturm/eigen.hpp"

namespace sturm {

/// Image of a smooth-density string problem under the Liouville change of
/// variables s(x) = (pi/c) int_0^x sqrt(p), c = int_0^1 sqrt(p): a
/// Sturm-Liouville problem on [0, pi] with potential q(s) sampled along the
/// map and transformed boundary angles, satisfying
/// lambda_n(p, a, b) = (pi^2/c^2) mu_n(q, g, d).
struct LiouvilleImage {
  double c = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  std::vector<double> x;  // sample grid on [0, 1]
  std::vector<double> s;  // s(x_i); s.front() = 0 and s.back() = pi exactly
  std::vector<double> q;  // q at s(x_i)
};

/// Requires p twice continuously differentiable (single piece, or matching
/// value and first two derivatives at breakpoints). q is evaluated from
/// exact polynomial derivatives of p via the chain rule,
///   q(s) = (c/pi)^2 [ p''/(4 p^2) - (5/16) p'^2 / p^3 ],
/// never by numeric differencing.
LiouvilleImage transform(const CoefficientFn& p, double alpha, double beta,
                         int grid_points = 2049);

struct ConsistencyRow {
  int n;
  double lambda_direct;       // lambda_n(p, a, b)
  double lambda_transformed;  // (pi^2/c^2) mu_n(q, g, d)
  double rel_gap;             // |difference| / max(1, |lambda_direct|)
};

/// Solves both sides of the eigenvalue relation for n = 0..n_max, the
/// transformed side on a piecewise-cubic interpolant of the sampled q.
std::vector<ConsistencyRow> consistency_check(const CoefficientFn& p, double alpha,
                                              double beta, int n_max,
                                              int grid_points = 2049,
                                              const EigenOptions& opts = {});

}  // namespace sturm
