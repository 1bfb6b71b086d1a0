#include "sturm/liouville.hpp"

#include <cmath>
#include <numbers>

#include "sturm/quadrature.hpp"

namespace sturm {

namespace {

constexpr double kPi = std::numbers::pi;

/// Inverts cot(angle) onto the principal branch (0, pi).
double angle_from_cot(double cot_value) { return std::atan2(1.0, cot_value); }

}  // namespace

LiouvilleImage transform(const CoefficientFn& p, double alpha, double beta,
                         int grid_points) {
  const BoundaryAngles angles = BoundaryAngles::checked(alpha, beta);
  p.require_positive(kPositivityFloor, "density");
  if (!p.is_twice_differentiable())
    throw DomainError(
        "the Liouville transformation needs a density with two continuous derivatives");
  if (grid_points < 5) throw DomainError("transform needs at least 5 grid points");

  const double a = p.domain_start(), b = p.domain_end();
  auto sqrt_p = [&p](double x) { return std::sqrt(p.eval(x)); };

  LiouvilleImage im;
  im.x.resize(static_cast<std::size_t>(grid_points));
  im.s.resize(im.x.size());
  for (int i = 0; i < grid_points; ++i)
    im.x[static_cast<std::size_t>(i)] =
        a + (b - a) * static_cast<double>(i) / (grid_points - 1);

  // Cumulative quadrature of sqrt(p), normalized by its own total so that
  // s(0) = 0 and s(1) = pi hold exactly.
  double cum = 0.0;
  im.s[0] = 0.0;
  for (std::size_t i = 1; i < im.x.size(); ++i) {
    cum += integrate_adaptive(sqrt_p, im.x[i - 1], im.x[i], 1e-13, 1e-15);
    im.s[i] = cum;
  }
  im.c = cum;
  for (std::size_t i = 0; i < im.s.size(); ++i) im.s[i] *= kPi / im.c;
  im.s.back() = kPi;

  const CoefficientFn dp = p.derivative();
  const CoefficientFn ddp = dp.derivative();
  const double cpi2 = (im.c / kPi) * (im.c / kPi);
  im.q.resize(im.x.size());
  for (std::size_t i = 0; i < im.x.size(); ++i) {
    const double x = im.x[i];
    const double pv = p.eval(x), d1 = dp.eval(x), d2 = ddp.eval(x);
    im.q[i] = cpi2 * (d2 / (4.0 * pv * pv) - 5.0 / 16.0 * d1 * d1 / (pv * pv * pv));
  }

  // Boundary angles: the Robin condition transforms to
  //   cot(alpha) = (pi/c) sqrt(p(0)) cot(gamma) + p'(0)/(4 p(0)),
  // with alpha = pi <-> gamma = pi; same pattern at x = 1 with
  // beta = 0 <-> delta = 0.
  if (angles.left == kPi) {
    im.gamma = kPi;
  } else {
    const double p0 = p.eval(a), d0 = dp.eval(a);
    im.gamma = angle_from_cot((im.c / kPi) / std::sqrt(p0) *
                              (1.0 / std::tan(angles.left) - d0 / (4.0 * p0)));
  }
  if (angles.right == 0.0) {
    im.delta = 0.0;
  } else {
    const double p1 = p.eval(b), d1 = dp.eval(b);
    im.delta = angle_from_cot((im.c / kPi) / std::sqrt(p1) *
                              (1.0 / std::tan(angles.right) - d1 / (4.0 * p1)));
  }
  return im;
}

std::vector<ConsistencyRow> consistency_check(const CoefficientFn& p, double alpha,
                                              double beta, int n_max, int grid_points,
                                              const EigenOptions& opts) {
  if (n_max < 0) throw DomainError("consistency_check needs n_max >= 0");
  const LiouvilleImage im = transform(p, alpha, beta, grid_points);
  const CoefficientFn q = CoefficientFn::from_samples_cubic(im.s, im.q);
  const SpectralProblem direct = SpectralProblem::string(p, alpha, beta);
  const SpectralProblem image = SpectralProblem::sturm_liouville(q, im.gamma, im.delta);
  const double factor = kPi * kPi / (im.c * im.c);

  std::vector<ConsistencyRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    const double lam = eigenvalue(direct, n, opts);
    const double mapped = factor * eigenvalue(image, n, opts);
    rows.push_back(ConsistencyRow{n, lam, mapped,
                                  std::abs(lam - mapped) / std::max(1.0, std::abs(lam))});
  }
  return rows;
}

}  // namespace sturm
