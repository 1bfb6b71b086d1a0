#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sturm/errors.hpp"

namespace sturm {

/// Default lower bound a density/weight must keep away from zero.
inline constexpr double kPositivityFloor = 1e-12;

struct Extremum {
  double min;
  double max;
};

/// Piecewise-polynomial real function on a closed interval.
///
/// Breakpoints x0 < x1 < ... < xm span the interval; each piece is a real
/// polynomial stored in ascending degree about a per-piece local origin
/// (interpolant-built pieces keep the segment start as origin for
/// conditioning; parsed pieces keep origin 0 so coefficients round-trip
/// losslessly). Evaluation is right-continuous at interior breakpoints.
class CoefficientFn {
public:
  struct Piece {
    double origin = 0.0;
    std::vector<double> coeffs;  // ascending degree, value = sum c_i (x - origin)^i

    double eval(double x) const;
    double eval_derivative(double x) const;
  };

  CoefficientFn() = default;

  static CoefficientFn constant(double value, double a, double b);
  /// Polynomial sum c_i x^i (global coordinates) over [a, b].
  static CoefficientFn polynomial(std::vector<double> coeffs, double a, double b);
  /// Piecewise polynomial; coeffs[i] are global-coordinate coefficients
  /// on [breakpoints[i], breakpoints[i+1]].
  static CoefficientFn piecewise(std::vector<double> breakpoints,
                                 std::vector<std::vector<double>> coeffs);
  /// Piecewise-cubic interpolant through (xs, ys); xs strictly increasing,
  /// at least 4 points. Each interval uses the Lagrange cubic through the
  /// four nearest samples, so smooth data is matched to O(h^4).
  static CoefficientFn from_samples_cubic(std::span<const double> xs,
                                          std::span<const double> ys);

  /// Parses the coefficient mini-grammar over the interval [a, b]:
  ///   const:<num>
  ///   poly:<c0>,<c1>,...
  ///   pw: [<a>,<b>] poly:<...> ; [<b>,<c>] poly:<...> ; ...
  /// Numbers are decimal literals with optional exponent; whitespace is
  /// insignificant outside numbers. Piecewise intervals must tile [a, b].
  static CoefficientFn parse(std::string_view text, double a, double b);

  /// Canonical grammar form; parse(format()) reproduces the structure.
  std::string format() const;

  double eval(double x) const;
  double eval_derivative(double x) const;

  CoefficientFn derivative() const;
  CoefficientFn scaled(double factor) const;
  CoefficientFn plus_constant(double shift) const;
  /// Piecewise-polynomial difference on the shared interval (breakpoints
  /// merged, bases shifted); exact up to rounding.
  CoefficientFn minus(const CoefficientFn& other) const;

  /// Exact global min/max over the closed interval, from per-piece
  /// polynomial critical points and endpoint values.
  Extremum extremum() const;

  /// Throws DomainError naming the offending piece unless eval >= floor
  /// everywhere.
  void require_positive(double floor = kPositivityFloor,
                        const char* role = "coefficient") const;

  /// Value and first two derivatives match at every interior breakpoint.
  bool is_twice_differentiable(double rel_tol = 1e-9) const;

  double domain_start() const { return breaks_.front(); }
  double domain_end() const { return breaks_.back(); }
  std::span<const double> breakpoints() const { return breaks_; }

  std::size_t piece_count() const { return pieces_.size(); }
  const Piece& piece(std::size_t i) const { return pieces_[i]; }
  /// Index of the piece whose half-open interval contains x
  /// (right-continuous; the last piece is closed). Throws outside the domain.
  std::size_t piece_index(double x) const;

private:
  std::vector<double> breaks_;
  std::vector<Piece> pieces_;

  void check_valid() const;
};

/// Pointwise ratio fa/fb sampled on a uniform grid, with grid min/max
/// refined by dyadic subdivision until two successive refinements agree to
/// rel_tol (the ratio of polynomials is generally not polynomial, so its
/// extrema are located numerically).
struct RatioScan {
  std::vector<double> x;
  std::vector<double> value;
  double min = 0.0;
  double max = 0.0;
  bool converged = false;
};

RatioScan ratio(const CoefficientFn& fa, const CoefficientFn& fb,
                int grid_points = 513, double rel_tol = 1e-10,
                int max_refinements = 13);

}  // namespace sturm
