#include "sturm/eigen.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "sturm/quadrature.hpp"

namespace sturm {

namespace {

constexpr double kPi = std::numbers::pi;

double theta_end(const SpectralProblem& prob, double lambda, const IvpOptions& opts) {
  return integrate_prufer(prob, lambda, opts).theta;
}

}  // namespace

double characteristic(const SpectralProblem& prob, double lambda, const IvpOptions& opts) {
  const CartesianState end = integrate_cartesian(prob, lambda, opts);
  return end.u * std::cos(prob.angles.right) + end.du * std::sin(prob.angles.right);
}

double eigenvalue(const SpectralProblem& prob, int n, const EigenOptions& opts) {
  if (n < 0) throw DomainError("eigenvalue index must be nonnegative");
  const double L = prob.length();
  const double target = (n + 1) * kPi - prob.angles.right;

  auto g = [&](double lam) { return theta_end(prob, lam, opts.ivp) - target; };

  // Upper start: if lambda w - q >= m^2 with m = (n+2) pi / L, the angle
  // advances by at least m L - pi = (n+1) pi >= target over the interval.
  const Extremum we = prob.weight.extremum();
  const Extremum qe = prob.potential.extremum();
  const double m = (n + 2) * kPi / L;
  double hi = std::max(1.0, (m * m + std::max(qe.max, 0.0)) / we.min);
  double ghi = g(hi);
  while (ghi < 0.0) {
    hi *= 2.0;
    if (hi > opts.bracket_limit)
      throw SolverError("eigenvalue bracket expansion exceeded the upper limit", hi);
    ghi = g(hi);
  }

  double lo = -1.0;
  double glo = g(lo);
  while (glo > 0.0) {
    lo *= 2.0;
    if (-lo > opts.bracket_limit)
      throw SolverError("eigenvalue bracket expansion exceeded the lower limit", lo);
    glo = g(lo);
  }
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;

  // Bisection down to a short bracket, then secant on the smooth residual.
  while (hi - lo > 1e-6 * std::max({1.0, std::abs(lo), std::abs(hi)})) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if (gm < 0.0) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
      ghi = gm;
    }
  }

  double a = lo, ga = glo, b = hi, gb = ghi;
  for (int it = 0; it < 60; ++it) {
    double next = b - gb * (b - a) / (gb - ga);
    if (!(next > lo && next < hi) || gb == ga) next = 0.5 * (lo + hi);
    const double gn = g(next);
    if (gn == 0.0) return next;
    if (gn < 0.0)
      lo = next;
    else
      hi = next;
    a = b;
    ga = gb;
    b = next;
    gb = gn;
    if (std::abs(b - a) <= opts.lambda_tol * std::max(1.0, std::abs(b))) return b;
    if (hi - lo <= opts.lambda_tol * std::max(1.0, std::abs(b))) break;
  }
  return 0.5 * (lo + hi);
}

Eigenpair eigenfunction(const SpectralProblem& prob, int n, int grid_points,
                        const EigenOptions& opts) {
  if (grid_points < 3 || grid_points % 2 == 0)
    throw DomainError("eigenfunction grid_points must be odd and >= 3");
  Eigenpair ep;
  ep.n = n;
  ep.value = eigenvalue(prob, n, opts);

  const std::vector<CartesianState> trace =
      integrate_cartesian_grid(prob, ep.value, grid_points, opts.ivp);
  const std::size_t count = trace.size();
  ep.x.resize(count);
  ep.u.resize(count);
  ep.du.resize(count);
  std::vector<double> wu2(count);
  for (std::size_t i = 0; i < count; ++i) {
    ep.x[i] = trace[i].x;
    ep.u[i] = trace[i].u;
    ep.du[i] = trace[i].du;
    wu2[i] = prob.weight.eval(trace[i].x) * trace[i].u * trace[i].u;
  }
  const double h = prob.length() / (grid_points - 1);
  ep.normalization = simpson_uniform(wu2, h);
  if (!(ep.normalization > 0.0) || !std::isfinite(ep.normalization))
    throw SolverError("eigenfunction normalization integral is not positive", prob.length());
  const double scale = 1.0 / std::sqrt(ep.normalization);
  for (std::size_t i = 0; i < count; ++i) {
    ep.u[i] *= scale;
    ep.du[i] *= scale;
  }
  return ep;
}

double inner_product(const SampledFn& f, const SampledFn& g, const CoefficientFn* weight) {
  const std::size_t n = f.x.size();
  if (n != f.y.size() || n != g.x.size() || n != g.y.size())
    throw DomainError("inner_product: mismatched grids");
  if (n < 3 || n % 2 == 0)
    throw DomainError("inner_product needs an odd number of samples (>= 3)");
  const double h = (f.x.back() - f.x.front()) / static_cast<double>(n - 1);
  const double xtol = 1e-9 * (std::abs(f.x.front()) + std::abs(f.x.back()) + h);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(f.x[i] - g.x[i]) > xtol)
      throw DomainError("inner_product: mismatched grids");
    const double expected = f.x.front() + h * static_cast<double>(i);
    if (std::abs(f.x[i] - expected) > xtol)
      throw DomainError("inner_product requires a uniform grid");
  }
  std::vector<double> integrand(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weight ? weight->eval(f.x[i]) : 1.0;
    integrand[i] = w * f.y[i] * g.y[i];
  }
  return simpson_uniform(integrand, h);
}

}  // namespace sturm
