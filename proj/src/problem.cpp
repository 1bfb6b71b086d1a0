#include "sturm/problem.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace sturm {

namespace {

[[noreturn]] void bad_angle(const char* which, double value, const char* range) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s boundary angle %.17g outside %s", which, value, range);
  throw DomainError(buf);
}

}  // namespace

BoundaryAngles BoundaryAngles::checked(double left, double right) {
  constexpr double pi = std::numbers::pi;
  if (left > pi && left <= pi + 1e-12) left = pi;
  if (!(left > 0.0 && left <= pi)) bad_angle("left", left, "(0, pi]");
  if (!(right >= 0.0 && right < pi)) bad_angle("right", right, "[0, pi)");
  return BoundaryAngles{left, right};
}

SpectralProblem SpectralProblem::string(CoefficientFn density, double alpha, double beta,
                                        double positivity_floor) {
  density.require_positive(positivity_floor, "density");
  if (std::abs(density.domain_start()) > 1e-12)
    throw DomainError("string problems live on [0, L]; density interval must start at 0");
  CoefficientFn zero =
      CoefficientFn::constant(0.0, density.domain_start(), density.domain_end());
  return SpectralProblem{std::move(zero), std::move(density),
                         BoundaryAngles::checked(alpha, beta)};
}

SpectralProblem SpectralProblem::sturm_liouville(CoefficientFn q, double gamma,
                                                 double delta) {
  if (std::abs(q.domain_start()) > 1e-12)
    throw DomainError("Sturm-Liouville problems live on [0, L]; potential interval must start at 0");
  CoefficientFn one = CoefficientFn::constant(1.0, q.domain_start(), q.domain_end());
  return SpectralProblem{std::move(q), std::move(one), BoundaryAngles::checked(gamma, delta)};
}

}  // namespace sturm
