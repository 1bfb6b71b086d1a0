#pragma once

#include <string>
#include <vector>

#include "sturm/eigen.hpp"

namespace sturm {

/// Sign of the first string eigenvalue as a function of the boundary pair
/// alone: zero exactly on the curve cos(a)cos(b) - sin(a-b) = 0 inside
/// [pi/4, pi] x [0, 3pi/4], positive on the indicator-negative part of that
/// rectangle, negative otherwise.
enum class SignClass { Zero, Positive, Negative };

const char* to_string(SignClass cls);

/// cos(alpha) cos(beta) - sin(alpha - beta).
double curve_indicator(double alpha, double beta);

/// The unique beta in [0, 3pi/4] with curve_indicator(alpha, beta) = 0,
/// for alpha in [pi/4, pi]; from tan(beta) = tan(alpha) - 1 with the branch
/// chosen inside [0, 3pi/4] (beta = pi/2 at alpha = pi/2 by continuity).
double curve_beta(double alpha);

SignClass classify_lambda0(double alpha, double beta, double indicator_tol = 1e-12);

/// Linear eigenfunction u = k x + c at lambda = 0 on the zero curve,
/// normalized k^2 + c^2 = 1 with the first nonzero of (k, c) positive.
/// Independent of the density.
struct ZeroMode {
  double k;
  double c;
  double residual_left;   // |c cos a + k sin a|
  double residual_right;  // |c cos b + k (sin b + cos b)|
};

ZeroMode zero_mode(double alpha, double beta, double indicator_tol = 1e-12);

struct Bounds {
  double lower;
  double upper;
};

/// lambda_0(1, a, b) scaled by the extrema of 1/p; the factor roles swap
/// when lambda_0(1, a, b) < 0 so that lower <= upper.
Bounds lambda0_bounds(const CoefficientFn& p, double alpha, double beta,
                      const EigenOptions& opts = {});

/// (mu_0(0, g, d) + min q, mu_0(0, g, d) + max q); extrema are exact for
/// piecewise polynomials.
Bounds mu0_bounds(const CoefficientFn& q, double gamma, double delta,
                  const EigenOptions& opts = {});

struct TraceCheck {
  double lhs;  // mu_0(q, g, d)
  double rhs;  // mu_0(0, g, d) + int_0^1 int q h0^2(., t q) dx dt
  double gap;
};

/// Checks the ground-eigenvalue integral identity: the t-integral uses
/// Gauss-Legendre (t_nodes >= 4), the inner integral composite Simpson on
/// the normalized ground eigenfunction of L(t q, g, d).
TraceCheck trace_formula_check(const CoefficientFn& q, double gamma, double delta,
                               int t_nodes = 32, int grid_points = 4097,
                               const EigenOptions& opts = {});

struct Lattice {
  double alpha_min, alpha_max;
  int alpha_count;
  double beta_min, beta_max;
  int beta_count;
};

struct SignMapNode {
  double alpha;
  double beta;
  SignClass cls;
  double lambda0;  // NaN when the solver failed at this node
  bool ok;
};

/// Classification plus numeric lambda_0(p, ., .) on every lattice node.
/// Nodes are independent; jobs > 1 fans them out over a worker pool with
/// order-independent assembly. Per-node solver failures are recorded, not
/// fatal.
std::vector<SignMapNode> sign_map(const Lattice& lattice, const CoefficientFn& p,
                                  int jobs = 1, const EigenOptions& opts = {});

}  // namespace sturm
