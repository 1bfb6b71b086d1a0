#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sturm {

/// Invalid input values: angles outside their ranges, coefficient misuse,
/// evaluation outside the domain, bad grids.
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Text that does not conform to the coefficient grammar.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t offset, const std::string& msg)
      : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Numerical failure: step-size underflow, exhausted bracket expansion.
/// Carries the last abscissa reached before the failure.
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& msg, double last_x = 0.0)
      : std::runtime_error(msg), last_x_(last_x) {}

  double last_x() const noexcept { return last_x_; }

private:
  double last_x_;
};

/// Boundary pair on the zero curve cos(a)cos(b) - sin(a-b) = 0 inside
/// [pi/4, pi] x [0, 3pi/4]. There the first eigenvalue vanishes for every
/// admissible density, so first-eigenvalue uniqueness conditions degenerate
/// and the corresponding checks refuse to run.
class CurveExcludedError : public DomainError {
public:
  explicit CurveExcludedError(const std::string& msg) : DomainError(msg) {}
};

}  // namespace sturm
