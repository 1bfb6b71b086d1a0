#include "sturm/analysis.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <thread>

#include "sturm/quadrature.hpp"

namespace sturm {

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* to_string(SignClass cls) {
  switch (cls) {
    case SignClass::Zero: return "zero";
    case SignClass::Positive: return "positive";
    case SignClass::Negative: return "negative";
  }
  return "?";
}

double curve_indicator(double alpha, double beta) {
  return std::cos(alpha) * std::cos(beta) - std::sin(alpha - beta);
}

double curve_beta(double alpha) {
  if (!(alpha >= kPi / 4 - 1e-15 && alpha <= kPi + 1e-12)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "curve_beta: alpha %.17g outside [pi/4, pi]", alpha);
    throw DomainError(buf);
  }
  if (std::abs(alpha - kPi / 2) <= 1e-12) return kPi / 2;
  const double t = std::tan(alpha) - 1.0;
  // tan is negative past pi/2; the curve branch continues into (pi/2, 3pi/4].
  return alpha < kPi / 2 ? std::atan(t) : kPi + std::atan(t);
}

SignClass classify_lambda0(double alpha, double beta, double indicator_tol) {
  BoundaryAngles::checked(alpha, beta);
  const double ind = curve_indicator(alpha, beta);
  const bool in_closed_rect =
      alpha >= kPi / 4 && alpha <= kPi && beta >= 0.0 && beta <= 3 * kPi / 4;
  if (std::abs(ind) <= indicator_tol && in_closed_rect) return SignClass::Zero;
  const bool in_positive_rect = alpha > kPi / 4 && alpha <= kPi && beta >= 0.0 &&
                                beta < 3 * kPi / 4;
  if (ind < 0.0 && in_positive_rect) return SignClass::Positive;
  return SignClass::Negative;
}

ZeroMode zero_mode(double alpha, double beta, double indicator_tol) {
  if (classify_lambda0(alpha, beta, indicator_tol) != SignClass::Zero)
    throw DomainError("zero_mode is defined only on the zero curve");
  // (c, k) spans the null space of
  //   [ cos a   sin a       ]
  //   [ cos b   sin b+cos b ]
  // whose determinant is the curve indicator. Use the better-conditioned row.
  const double r1c = std::cos(alpha), r1k = std::sin(alpha);
  const double r2c = std::cos(beta), r2k = std::sin(beta) + std::cos(beta);
  double c, k;
  if (std::hypot(r1c, r1k) >= std::hypot(r2c, r2k)) {
    c = -r1k;
    k = r1c;
  } else {
    c = -r2k;
    k = r2c;
  }
  const double norm = std::hypot(c, k);
  c /= norm;
  k /= norm;
  // Sign fixed by the first nonzero of (k, c).
  const double lead = std::abs(k) > 1e-12 ? k : c;
  if (lead < 0.0) {
    c = -c;
    k = -k;
  }
  return ZeroMode{k, c, std::abs(c * r1c + k * r1k), std::abs(c * r2c + k * r2k)};
}

Bounds lambda0_bounds(const CoefficientFn& p, double alpha, double beta,
                      const EigenOptions& opts) {
  p.require_positive(kPositivityFloor, "density");
  const SpectralProblem unit = SpectralProblem::string(
      CoefficientFn::constant(1.0, p.domain_start(), p.domain_end()), alpha, beta);
  const double lam_unit = eigenvalue(unit, 0, opts);
  const Extremum pe = p.extremum();
  const double inv_min = 1.0 / pe.max, inv_max = 1.0 / pe.min;
  if (lam_unit >= 0.0) return Bounds{lam_unit * inv_min, lam_unit * inv_max};
  return Bounds{lam_unit * inv_max, lam_unit * inv_min};
}

Bounds mu0_bounds(const CoefficientFn& q, double gamma, double delta,
                  const EigenOptions& opts) {
  const SpectralProblem zero = SpectralProblem::sturm_liouville(
      CoefficientFn::constant(0.0, q.domain_start(), q.domain_end()), gamma, delta);
  const double mu_zero = eigenvalue(zero, 0, opts);
  const Extremum qe = q.extremum();
  return Bounds{mu_zero + qe.min, mu_zero + qe.max};
}

TraceCheck trace_formula_check(const CoefficientFn& q, double gamma, double delta,
                               int t_nodes, int grid_points, const EigenOptions& opts) {
  if (t_nodes < 4) throw DomainError("trace_formula_check needs t_nodes >= 4");

  const double lhs = eigenvalue(SpectralProblem::sturm_liouville(q, gamma, delta), 0, opts);
  const double mu_zero = eigenvalue(
      SpectralProblem::sturm_liouville(
          CoefficientFn::constant(0.0, q.domain_start(), q.domain_end()), gamma, delta),
      0, opts);

  const GaussLegendre gl = gauss_legendre(t_nodes);
  double integral = 0.0;
  for (int i = 0; i < t_nodes; ++i) {
    const double t = 0.5 * (gl.nodes[static_cast<std::size_t>(i)] + 1.0);
    const double wt = 0.5 * gl.weights[static_cast<std::size_t>(i)];
    const Eigenpair h0 = eigenfunction(
        SpectralProblem::sturm_liouville(q.scaled(t), gamma, delta), 0, grid_points, opts);
    const SampledFn u{h0.x, h0.u};
    integral += wt * inner_product(u, u, &q);
  }
  const double rhs = mu_zero + integral;
  return TraceCheck{lhs, rhs, std::abs(lhs - rhs)};
}

std::vector<SignMapNode> sign_map(const Lattice& lattice, const CoefficientFn& p,
                                  int jobs, const EigenOptions& opts) {
  if (lattice.alpha_count < 1 || lattice.beta_count < 1)
    throw DomainError("sign_map lattice needs at least one node per axis");
  p.require_positive(kPositivityFloor, "density");

  auto axis = [](double lo, double hi, int count, int i) {
    if (count == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  };

  std::vector<SignMapNode> nodes;
  nodes.reserve(static_cast<std::size_t>(lattice.alpha_count) *
                static_cast<std::size_t>(lattice.beta_count));
  for (int i = 0; i < lattice.alpha_count; ++i) {
    const double a = axis(lattice.alpha_min, lattice.alpha_max, lattice.alpha_count, i);
    for (int j = 0; j < lattice.beta_count; ++j) {
      const double b = axis(lattice.beta_min, lattice.beta_max, lattice.beta_count, j);
      BoundaryAngles::checked(a, b);  // rejects lattices touching the domain edge
      nodes.push_back(SignMapNode{a, b, classify_lambda0(a, b),
                                  std::numeric_limits<double>::quiet_NaN(), false});
    }
  }

  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= nodes.size()) return;
      SignMapNode& node = nodes[i];
      try {
        node.lambda0 =
            eigenvalue(SpectralProblem::string(p, node.alpha, node.beta), 0, opts);
        node.ok = true;
      } catch (const SolverError&) {
        node.ok = false;
      }
    }
  };

  const int threads = std::max(1, jobs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return nodes;
}

}  // namespace sturm
