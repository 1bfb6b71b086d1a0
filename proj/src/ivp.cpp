#include "sturm/ivp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace sturm {

namespace {

using State2 = std::array<double, 2>;

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA2[1] = {1.0 / 5};
constexpr double kA3[2] = {3.0 / 40, 9.0 / 40};
constexpr double kA4[3] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
constexpr double kA5[4] = {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729};
constexpr double kA6[5] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
                           -5103.0 / 18656};
constexpr double kB[6] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784,
                          11.0 / 84};
constexpr double kE[7] = {71.0 / 57600, 0.0,           -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

/// One adaptive DOPRI5 pass over a smooth span [x0, x1]; the right-hand side
/// must be smooth on the whole span (callers split at breakpoints).
template <class Rhs>
void dopri5_span(Rhs&& rhs, double x0, double x1, State2& y, const IvpOptions& opts,
                 std::int64_t& steps_left, double freq_scale) {
  const double span = x1 - x0;
  if (span <= 0.0) return;

  double x = x0;
  State2 k1 = rhs(x, y);
  double h = std::min(span, 0.5 / freq_scale);

  while (x < x1) {
    if (--steps_left < 0)
      throw SolverError("integration exceeded the step budget", x);
    const double hmin = 32.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(x), 1.0);
    if (h < hmin) throw SolverError("integration step size underflow", x);
    bool last = false;
    if (x + h >= x1) {
      h = x1 - x;
      last = true;
    }

    State2 k2, k3, k4, k5, k6, k7, yt, ynew;
    for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * kA2[0] * k1[i];
    k2 = rhs(x + kC[1] * h, yt);
    for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (kA3[0] * k1[i] + kA3[1] * k2[i]);
    k3 = rhs(x + kC[2] * h, yt);
    for (int i = 0; i < 2; ++i)
      yt[i] = y[i] + h * (kA4[0] * k1[i] + kA4[1] * k2[i] + kA4[2] * k3[i]);
    k4 = rhs(x + kC[3] * h, yt);
    for (int i = 0; i < 2; ++i)
      yt[i] = y[i] + h * (kA5[0] * k1[i] + kA5[1] * k2[i] + kA5[2] * k3[i] + kA5[3] * k4[i]);
    k5 = rhs(x + kC[4] * h, yt);
    for (int i = 0; i < 2; ++i)
      yt[i] = y[i] + h * (kA6[0] * k1[i] + kA6[1] * k2[i] + kA6[2] * k3[i] +
                          kA6[3] * k4[i] + kA6[4] * k5[i]);
    k6 = rhs(x + h, yt);
    for (int i = 0; i < 2; ++i)
      ynew[i] = y[i] + h * (kB[0] * k1[i] + kB[2] * k3[i] + kB[3] * k4[i] + kB[4] * k5[i] +
                            kB[5] * k6[i]);
    k7 = rhs(x + h, ynew);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double e = h * (kE[0] * k1[i] + kE[2] * k3[i] + kE[3] * k4[i] + kE[4] * k5[i] +
                            kE[5] * k6[i] + kE[6] * k7[i]);
      const double scale =
          opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (e / scale) * (e / scale);
    }
    err = std::sqrt(0.5 * err);

    if (err <= 1.0) {
      x = last ? x1 : x + h;
      y = ynew;
      k1 = k7;  // FSAL
      const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
      h *= fac;
    } else {
      const double fac = std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
      h *= fac;
      last = false;
    }
  }
}

struct Stop {
  double x;
  bool is_grid;
};

/// Merged, ascending stop list: coefficient breakpoints plus grid nodes.
std::vector<Stop> make_stops(const SpectralProblem& prob, int grid_points) {
  const double L = prob.length();
  std::vector<Stop> stops;
  for (double b : prob.weight.breakpoints()) stops.push_back({b, false});
  for (double b : prob.potential.breakpoints()) stops.push_back({b, false});
  if (grid_points > 0) {
    for (int i = 0; i < grid_points; ++i)
      stops.push_back({L * static_cast<double>(i) / (grid_points - 1), true});
  }
  std::sort(stops.begin(), stops.end(), [](const Stop& a, const Stop& b) { return a.x < b.x; });
  std::vector<Stop> merged;
  const double tol = 1e-13 * (1.0 + L);
  for (const Stop& s : stops) {
    if (!merged.empty() && s.x - merged.back().x <= tol)
      merged.back().is_grid = merged.back().is_grid || s.is_grid;
    else
      merged.push_back(s);
  }
  merged.front().x = 0.0;
  merged.back().x = L;
  return merged;
}

/// Drives the integrator across all stops. make_rhs(wp, qp) must return the
/// smooth right-hand side valid while the weight/potential pieces are fixed;
/// observe(x, y, is_grid) fires at every stop, including x = 0.
template <class MakeRhs, class Observe>
void integrate_path(const SpectralProblem& prob, double lambda, int grid_points,
                    const IvpOptions& opts, State2 y, MakeRhs make_rhs, Observe observe) {
  const std::vector<Stop> stops = make_stops(prob, grid_points);
  std::int64_t steps_left = opts.max_steps;
  observe(stops.front().x, y, stops.front().is_grid);
  for (std::size_t i = 0; i + 1 < stops.size(); ++i) {
    const double lo = stops[i].x, hi = stops[i + 1].x;
    const double mid = 0.5 * (lo + hi);
    const auto& wp = prob.weight.piece(prob.weight.piece_index(mid));
    const auto& qp = prob.potential.piece(prob.potential.piece_index(mid));
    const double freq =
        std::sqrt(std::max(1.0, std::abs(lambda * wp.eval(mid)) + std::abs(qp.eval(mid))));
    dopri5_span(make_rhs(wp, qp), lo, hi, y, opts, steps_left, freq);
    observe(hi, y, stops[i + 1].is_grid);
  }
}

State2 initial_cartesian(const BoundaryAngles& angles) {
  return {std::sin(angles.left), -std::cos(angles.left)};
}

}  // namespace

CartesianState integrate_cartesian(const SpectralProblem& prob, double lambda,
                                   const IvpOptions& opts) {
  CartesianState out{};
  integrate_path(
      prob, lambda, 0, opts, initial_cartesian(prob.angles),
      [lambda](const CoefficientFn::Piece& wp, const CoefficientFn::Piece& qp) {
        return [lambda, &wp, &qp](double x, const State2& y) -> State2 {
          return {y[1], (qp.eval(x) - lambda * wp.eval(x)) * y[0]};
        };
      },
      [&out](double x, const State2& y, bool) { out = {x, y[0], y[1]}; });
  return out;
}

std::vector<CartesianState> integrate_cartesian_grid(const SpectralProblem& prob,
                                                     double lambda, int grid_points,
                                                     const IvpOptions& opts) {
  if (grid_points < 2) throw DomainError("trace grid needs at least 2 points");
  std::vector<CartesianState> out;
  out.reserve(static_cast<std::size_t>(grid_points));
  integrate_path(
      prob, lambda, grid_points, opts, initial_cartesian(prob.angles),
      [lambda](const CoefficientFn::Piece& wp, const CoefficientFn::Piece& qp) {
        return [lambda, &wp, &qp](double x, const State2& y) -> State2 {
          return {y[1], (qp.eval(x) - lambda * wp.eval(x)) * y[0]};
        };
      },
      [&out](double x, const State2& y, bool is_grid) {
        if (is_grid) out.push_back({x, y[0], y[1]});
      });
  return out;
}

PruferState integrate_prufer(const SpectralProblem& prob, double lambda,
                             const IvpOptions& opts) {
  PruferState out{};
  integrate_path(
      prob, lambda, 0, opts, State2{std::numbers::pi - prob.angles.left, 0.0},
      [lambda](const CoefficientFn::Piece& wp, const CoefficientFn::Piece& qp) {
        return [lambda, &wp, &qp](double x, const State2& y) -> State2 {
          const double s = std::sin(y[0]), c = std::cos(y[0]);
          const double coef = lambda * wp.eval(x) - qp.eval(x);
          return {c * c + coef * s * s, (1.0 - coef) * s * c};
        };
      },
      [&out](double x, const State2& y, bool) { out = {x, y[0], y[1]}; });
  return out;
}

std::vector<PruferState> integrate_prufer_grid(const SpectralProblem& prob, double lambda,
                                               int grid_points, const IvpOptions& opts) {
  if (grid_points < 2) throw DomainError("trace grid needs at least 2 points");
  std::vector<PruferState> out;
  out.reserve(static_cast<std::size_t>(grid_points));
  integrate_path(
      prob, lambda, grid_points, opts, State2{std::numbers::pi - prob.angles.left, 0.0},
      [lambda](const CoefficientFn::Piece& wp, const CoefficientFn::Piece& qp) {
        return [lambda, &wp, &qp](double x, const State2& y) -> State2 {
          const double s = std::sin(y[0]), c = std::cos(y[0]);
          const double coef = lambda * wp.eval(x) - qp.eval(x);
          return {c * c + coef * s * s, (1.0 - coef) * s * c};
        };
      },
      [&out](double x, const State2& y, bool is_grid) {
        if (is_grid) out.push_back({x, y[0], y[1]});
      });
  return out;
}

}  // namespace sturm
