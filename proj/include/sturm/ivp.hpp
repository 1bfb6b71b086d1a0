#pragma once

#include <cstdint>
#include <vector>

#include "sturm/problem.hpp"

namespace sturm {

struct IvpOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::int64_t max_steps = 5'000'000;
};

struct CartesianState {
  double x;
  double u;
  double du;
};

/// Prufer phase state: u = exp(logr) sin(theta), u' = exp(logr) cos(theta).
/// theta is integrated directly (never reduced mod pi), so floor(theta/pi)
/// carries the oscillation count.
struct PruferState {
  double x;
  double theta;
  double logr;
};

/// Integrates u'' = (q - lambda w) u from u(0) = sin(left), u'(0) = -cos(left)
/// to the interval end, restarting at every coefficient breakpoint.
CartesianState integrate_cartesian(const SpectralProblem& prob, double lambda,
                                   const IvpOptions& opts = {});

/// Same trajectory sampled on a uniform grid of grid_points nodes
/// (both endpoints included; the integrator steps exactly onto each node).
std::vector<CartesianState> integrate_cartesian_grid(const SpectralProblem& prob,
                                                     double lambda, int grid_points,
                                                     const IvpOptions& opts = {});

/// Integrates theta' = cos^2(theta) + (lambda w - q) sin^2(theta),
/// (log r)' = (1 - lambda w + q) sin(theta) cos(theta) from
/// theta(0) = pi - left.
PruferState integrate_prufer(const SpectralProblem& prob, double lambda,
                             const IvpOptions& opts = {});

std::vector<PruferState> integrate_prufer_grid(const SpectralProblem& prob, double lambda,
                                               int grid_points, const IvpOptions& opts = {});

}  // namespace sturm
