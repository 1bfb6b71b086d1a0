#include "sturm/ambarzumyan.hpp"

#include <cmath>
#include <cstdio>

namespace sturm {

namespace {

void check_shared_interval(const CoefficientFn& a, const CoefficientFn& b) {
  const double tol = 1e-12 * (1.0 + std::abs(a.domain_end()));
  if (std::abs(a.domain_start() - b.domain_start()) > tol ||
      std::abs(a.domain_end() - b.domain_end()) > tol)
    throw DomainError("both coefficients must live on the same interval");
}

void reject_curve_pair(double alpha, double beta, double curve_tol) {
  if (classify_lambda0(alpha, beta, curve_tol) == SignClass::Zero) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "boundary pair (%.12g, %.12g) lies on the zero curve "
                  "cos(a)cos(b) - sin(a-b) = 0: lambda_0 vanishes for every "
                  "density, so first-eigenvalue uniqueness conditions degenerate",
                  alpha, beta);
    throw CurveExcludedError(buf);
  }
}

/// Exact max deviation of `given` from `rec` via symbolic subtraction.
double max_deviation(const CoefficientFn& given, const CoefficientFn& rec) {
  const Extremum d = given.minus(rec).extremum();
  return std::max(std::abs(d.min), std::abs(d.max));
}

double tolerance_scale(const CheckOptions& opts, double lhs, double rhs_ref) {
  return opts.rel_tol * std::max({1.0, std::abs(lhs), std::abs(rhs_ref)});
}

/// Unweighted inner-product mean ((num/den) f, f) / (f, f) over the samples
/// of f, with num/den evaluated pointwise.
double ratio_mean(const Eigenpair& f, const CoefficientFn& num, const CoefficientFn& den) {
  SampledFn lhs{f.x, f.u};
  for (std::size_t i = 0; i < lhs.x.size(); ++i)
    lhs.y[i] *= num.eval(lhs.x[i]) / den.eval(lhs.x[i]);
  const SampledFn rhs{f.x, f.u};
  return inner_product(lhs, rhs) / inner_product(rhs, rhs);
}

}  // namespace

AmbVerdict check_extremal(const CoefficientFn& p, const CoefficientFn& p_ref, double alpha,
                          double beta, ExtremalSide side, const CheckOptions& opts) {
  check_shared_interval(p, p_ref);
  reject_curve_pair(alpha, beta, opts.curve_tol);

  const double lam = eigenvalue(SpectralProblem::string(p, alpha, beta), 0, opts.eigen);
  const double lam_ref =
      eigenvalue(SpectralProblem::string(p_ref, alpha, beta), 0, opts.eigen);
  const RatioScan rs = ratio(p_ref, p);

  AmbVerdict v;
  v.swapped = lam_ref < 0.0;
  const bool use_max = (side == ExtremalSide::Max) != v.swapped;
  v.target = lam;
  v.condition = lam_ref * (use_max ? rs.max : rs.min);
  v.residual = std::abs(v.target - v.condition);
  v.satisfied = v.residual <= tolerance_scale(opts, lam, lam_ref);
  if (v.satisfied) {
    v.scale_factor = lam_ref / lam;
    v.reconstructed = p_ref.scaled(v.scale_factor);
    v.reconstruction_residual = max_deviation(p, *v.reconstructed);
  }
  return v;
}

AmbVerdict check_weighted_mean(const CoefficientFn& p, const CoefficientFn& p_ref,
                               double alpha, double beta, const CheckOptions& opts) {
  check_shared_interval(p, p_ref);
  reject_curve_pair(alpha, beta, opts.curve_tol);

  const double lam = eigenvalue(SpectralProblem::string(p, alpha, beta), 0, opts.eigen);
  const SpectralProblem ref = SpectralProblem::string(p_ref, alpha, beta);
  const Eigenpair f0 = eigenfunction(ref, 0, opts.grid_points, opts.eigen);

  AmbVerdict v;
  v.target = lam;
  v.condition = f0.value * ratio_mean(f0, p_ref, p);
  v.residual = std::abs(v.target - v.condition);
  v.satisfied = v.residual <= tolerance_scale(opts, lam, f0.value);
  if (v.satisfied) {
    v.scale_factor = f0.value / lam;
    v.reconstructed = p_ref.scaled(v.scale_factor);
    v.reconstruction_residual = max_deviation(p, *v.reconstructed);
  }
  return v;
}

AmbVerdict check_nth(const CoefficientFn& p, const CoefficientFn& p_ref, double alpha,
                     double beta, int n, ExtremalSide side, const CheckOptions& opts) {
  if (n <= 0) throw DomainError("check_nth needs a fixed index n > 0");
  check_shared_interval(p, p_ref);

  const double lam = eigenvalue(SpectralProblem::string(p, alpha, beta), n, opts.eigen);
  if (std::abs(lam) <= 1e-9)
    throw DomainError("check_nth requires lambda_n != 0");
  const SpectralProblem ref = SpectralProblem::string(p_ref, alpha, beta);
  const Eigenpair fn = eigenfunction(ref, n, opts.grid_points, opts.eigen);
  const RatioScan rs = ratio(p_ref, p);

  AmbVerdict v;
  v.swapped = fn.value < 0.0;
  const bool use_max = (side == ExtremalSide::Max) != v.swapped;
  v.target = lam;
  v.condition = fn.value * ratio_mean(fn, p_ref, p);
  v.condition_extremal = fn.value * (use_max ? rs.max : rs.min);
  v.residual_mean = std::abs(v.target - v.condition);
  v.residual_extremal = std::abs(v.target - *v.condition_extremal);
  v.residual = std::max(*v.residual_mean, *v.residual_extremal);
  v.satisfied = v.residual <= tolerance_scale(opts, lam, fn.value);
  if (v.satisfied) {
    v.scale_factor = fn.value / lam;
    v.reconstructed = p_ref.scaled(v.scale_factor);
    v.reconstruction_residual = max_deviation(p, *v.reconstructed);
  }
  return v;
}

AmbVerdict sl_check_yurko(const CoefficientFn& q, const CoefficientFn& q_ref, double gamma,
                          double delta, const CheckOptions& opts) {
  check_shared_interval(q, q_ref);

  const double mu = eigenvalue(SpectralProblem::sturm_liouville(q, gamma, delta), 0,
                               opts.eigen);
  const SpectralProblem ref = SpectralProblem::sturm_liouville(q_ref, gamma, delta);
  const Eigenpair f0 = eigenfunction(ref, 0, opts.grid_points, opts.eigen);

  // qhat := q - q_ref, oriented so a satisfied check reconstructs
  // q = q_ref + (mu - mu_ref).
  SampledFn qhat_f{f0.x, f0.u};
  for (std::size_t i = 0; i < qhat_f.x.size(); ++i)
    qhat_f.y[i] *= q.eval(qhat_f.x[i]) - q_ref.eval(qhat_f.x[i]);
  const SampledFn f{f0.x, f0.u};

  AmbVerdict v;
  v.target = mu - f0.value;
  v.condition = inner_product(qhat_f, f) / inner_product(f, f);
  v.residual = std::abs(v.target - v.condition);
  v.satisfied = v.residual <= tolerance_scale(opts, mu, f0.value);
  if (v.satisfied) {
    v.scale_factor = v.target;
    v.reconstructed = q_ref.plus_constant(v.target);
    v.reconstruction_residual = max_deviation(q, *v.reconstructed);
  }
  return v;
}

AmbVerdict sl_check_extremal(const CoefficientFn& q, const CoefficientFn& q_ref,
                             double gamma, double delta, ExtremalSide side,
                             const CheckOptions& opts) {
  check_shared_interval(q, q_ref);

  const double mu = eigenvalue(SpectralProblem::sturm_liouville(q, gamma, delta), 0,
                               opts.eigen);
  const double mu_ref = eigenvalue(SpectralProblem::sturm_liouville(q_ref, gamma, delta),
                                   0, opts.eigen);
  const Extremum qhat = q.minus(q_ref).extremum();

  AmbVerdict v;
  v.target = mu - mu_ref;
  v.condition = side == ExtremalSide::Min ? qhat.min : qhat.max;
  v.residual = std::abs(v.target - v.condition);
  v.satisfied = v.residual <= tolerance_scale(opts, mu, mu_ref);
  if (v.satisfied) {
    v.scale_factor = v.target;
    v.reconstructed = q_ref.plus_constant(v.target);
    v.reconstruction_residual = max_deviation(q, *v.reconstructed);
  }
  return v;
}

}  // namespace sturm
