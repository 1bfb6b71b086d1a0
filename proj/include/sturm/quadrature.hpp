#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "sturm/errors.hpp"

namespace sturm {

/// Composite Simpson on a uniform grid with an odd number of points.
double simpson_uniform(std::span<const double> y, double h);

/// Adaptive Simpson with Richardson acceptance, recursing until
/// |S_fine - S_coarse|/15 meets the tolerance on each subinterval.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-12,
                          double abs_tol = 1e-15, int max_depth = 60) {
  struct Rec {
    F& f;
    double rel, abs;

    double run(double lo, double hi, double flo, double fmid, double fhi, double coarse,
               int depth) {
      const double mid = 0.5 * (lo + hi);
      const double fl = f(0.5 * (lo + mid));
      const double fr = f(0.5 * (mid + hi));
      const double h = hi - lo;
      const double left = h / 12.0 * (flo + 4.0 * fl + fmid);
      const double right = h / 12.0 * (fmid + 4.0 * fr + fhi);
      const double fine = left + right;
      const double err = (fine - coarse) / 15.0;
      if (depth <= 0 || std::abs(err) <= std::max(abs, rel * std::abs(fine)))
        return fine + err;
      return run(lo, mid, flo, fl, fmid, left, depth - 1) +
             run(mid, hi, fmid, fr, fhi, right, depth - 1);
    }
  };
  if (a == b) return 0.0;
  Rec rec{f, rel_tol, abs_tol};
  const double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
  const double coarse = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return rec.run(a, b, fa, fm, fb, coarse, max_depth);
}

struct GaussLegendre {
  std::vector<double> nodes;    // ascending, in (-1, 1)
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on (-1, 1), Newton iteration on P_n.
GaussLegendre gauss_legendre(int n);

}  // namespace sturm
