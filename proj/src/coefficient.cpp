#include "sturm/coefficient.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace sturm {

namespace {

double horner(std::span<const double> c, double t) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
  return v;
}

std::vector<double> derive(std::span<const double> c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
  return d;
}

/// Coefficients of p(d + t) given those of p(t) (synthetic division).
std::vector<double> taylor_shift(std::vector<double> c, double d) {
  if (d == 0.0 || c.size() < 2) return c;
  const std::size_t n = c.size();
  for (std::size_t j = 0; j + 1 < n; ++j)
    for (std::size_t i = n - 1; i-- > j;) c[i] += d * c[i + 1];
  return c;
}

std::size_t effective_degree(std::span<const double> c) {
  std::size_t d = c.size();
  while (d > 1 && c[d - 1] == 0.0) --d;
  return d - 1;
}

double bisect_root(std::span<const double> c, double lo, double hi, double flo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = horner(c, mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// All real roots of the polynomial in [lo, hi], ascending. Monotone-bracket
/// bisection between critical points, with the critical points themselves
/// found recursively on the derivative.
void real_roots(std::span<const double> c, double lo, double hi,
                std::vector<double>& out) {
  const std::size_t deg = effective_degree(c);
  if (deg == 0) return;  // constant (the zero polynomial included)
  if (deg == 1) {
    const double r = -c[0] / c[1];
    if (r >= lo && r <= hi) out.push_back(r);
    return;
  }
  std::vector<double> crit;
  real_roots(derive(c), lo, hi, crit);
  std::vector<double> nodes;
  nodes.reserve(crit.size() + 2);
  nodes.push_back(lo);
  for (double t : crit)
    if (t > nodes.back()) nodes.push_back(t);
  if (hi > nodes.back()) nodes.push_back(hi);

  const double span = hi - lo;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double a = nodes[i], b = nodes[i + 1];
    const double fa = horner(c, a), fb = horner(c, b);
    double r = std::numeric_limits<double>::quiet_NaN();
    if (fa == 0.0)
      r = a;
    else if (fb == 0.0)
      r = (i + 2 == nodes.size()) ? b : std::numeric_limits<double>::quiet_NaN();
    else if ((fa < 0.0) != (fb < 0.0))
      r = bisect_root(c, a, b, fa);
    if (std::isnan(r)) continue;
    if (out.empty() || r - out.back() > 1e-13 * (1.0 + span)) out.push_back(r);
  }
}

}  // namespace

double CoefficientFn::Piece::eval(double x) const { return horner(coeffs, x - origin); }

double CoefficientFn::Piece::eval_derivative(double x) const {
  const double t = x - origin;
  double v = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 1;) v = v * t + coeffs[i] * static_cast<double>(i);
  return v;
}

void CoefficientFn::check_valid() const {
  if (breaks_.size() < 2 || pieces_.size() + 1 != breaks_.size())
    throw DomainError("coefficient needs at least one piece");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
    if (!(breaks_[i] < breaks_[i + 1]))
      throw DomainError("coefficient breakpoints must be strictly increasing");
  for (const Piece& p : pieces_)
    if (p.coeffs.empty()) throw DomainError("empty polynomial piece");
}

CoefficientFn CoefficientFn::constant(double value, double a, double b) {
  return polynomial({value}, a, b);
}

CoefficientFn CoefficientFn::polynomial(std::vector<double> coeffs, double a, double b) {
  CoefficientFn f;
  f.breaks_ = {a, b};
  f.pieces_.push_back(Piece{0.0, std::move(coeffs)});
  f.check_valid();
  return f;
}

CoefficientFn CoefficientFn::piecewise(std::vector<double> breakpoints,
                                       std::vector<std::vector<double>> coeffs) {
  CoefficientFn f;
  f.breaks_ = std::move(breakpoints);
  f.pieces_.reserve(coeffs.size());
  for (auto& c : coeffs) f.pieces_.push_back(Piece{0.0, std::move(c)});
  f.check_valid();
  return f;
}

CoefficientFn CoefficientFn::from_samples_cubic(std::span<const double> xs,
                                                std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n < 4 || ys.size() != n)
    throw DomainError("cubic interpolation needs at least 4 matching samples");
  CoefficientFn f;
  f.breaks_.assign(xs.begin(), xs.end());
  f.pieces_.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t j0 = std::min(std::max<std::size_t>(i, 1) - 1, n - 4);
    // Newton form through the four nearest samples.
    std::array<double, 4> t{}, dd{};
    for (int k = 0; k < 4; ++k) {
      t[k] = xs[j0 + k];
      dd[k] = ys[j0 + k];
    }
    for (int k = 1; k < 4; ++k)
      for (int m = 3; m >= k; --m) dd[m] = (dd[m] - dd[m - 1]) / (t[m] - t[m - k]);
    // Expand about the segment start; the node offsets are O(h) so the
    // monomial coefficients stay well conditioned.
    const double origin = xs[i];
    std::array<double, 4> out{dd[0], 0.0, 0.0, 0.0};
    std::array<double, 4> basis{1.0, 0.0, 0.0, 0.0};
    for (int k = 0; k < 3; ++k) {
      const double u = t[k] - origin;
      for (int m = k + 1; m >= 1; --m) basis[m] = basis[m - 1] - u * basis[m];
      basis[0] *= -u;
      for (int m = 0; m <= k + 1; ++m) out[m] += dd[k + 1] * basis[m];
    }
    f.pieces_[i] = Piece{origin, {out[0], out[1], out[2], out[3]}};
  }
  f.check_valid();
  return f;
}

std::size_t CoefficientFn::piece_index(double x) const {
  const double a = breaks_.front(), b = breaks_.back();
  const double slack = 1e-12 * (1.0 + std::abs(a) + std::abs(b));
  if (x < a - slack || x > b + slack) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "evaluation point %.17g outside interval [%.17g, %.17g]",
                  x, a, b);
    throw DomainError(buf);
  }
  if (x >= b) return pieces_.size() - 1;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  if (it == breaks_.begin()) return 0;
  return static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

double CoefficientFn::eval(double x) const { return pieces_[piece_index(x)].eval(x); }

double CoefficientFn::eval_derivative(double x) const {
  return pieces_[piece_index(x)].eval_derivative(x);
}

CoefficientFn CoefficientFn::derivative() const {
  CoefficientFn f;
  f.breaks_ = breaks_;
  f.pieces_.reserve(pieces_.size());
  for (const Piece& p : pieces_) f.pieces_.push_back(Piece{p.origin, derive(p.coeffs)});
  return f;
}

CoefficientFn CoefficientFn::scaled(double factor) const {
  CoefficientFn f = *this;
  for (Piece& p : f.pieces_)
    for (double& c : p.coeffs) c *= factor;
  return f;
}

CoefficientFn CoefficientFn::plus_constant(double shift) const {
  CoefficientFn f = *this;
  for (Piece& p : f.pieces_) p.coeffs[0] += shift;
  return f;
}

CoefficientFn CoefficientFn::minus(const CoefficientFn& other) const {
  const double tol =
      1e-12 * (1.0 + std::abs(domain_start()) + std::abs(domain_end()));
  if (std::abs(domain_start() - other.domain_start()) > tol ||
      std::abs(domain_end() - other.domain_end()) > tol)
    throw DomainError("coefficient difference requires a shared interval");

  std::vector<double> merged;
  merged.reserve(breaks_.size() + other.breaks_.size());
  std::merge(breaks_.begin(), breaks_.end(), other.breaks_.begin(), other.breaks_.end(),
             std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end(),
                           [tol](double u, double v) { return std::abs(u - v) <= tol; }),
               merged.end());
  merged.front() = domain_start();
  merged.back() = domain_end();

  CoefficientFn f;
  f.breaks_ = merged;
  f.pieces_.reserve(merged.size() - 1);
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    const double mid = 0.5 * (merged[i] + merged[i + 1]);
    const Piece& pa = pieces_[piece_index(mid)];
    const Piece& pb = other.pieces_[other.piece_index(mid)];
    const double origin = merged[i];
    std::vector<double> ca = taylor_shift(pa.coeffs, origin - pa.origin);
    std::vector<double> cb = taylor_shift(pb.coeffs, origin - pb.origin);
    if (cb.size() > ca.size()) ca.resize(cb.size(), 0.0);
    for (std::size_t k = 0; k < cb.size(); ++k) ca[k] -= cb[k];
    f.pieces_.push_back(Piece{origin, std::move(ca)});
  }
  f.check_valid();
  return f;
}

Extremum CoefficientFn::extremum() const {
  Extremum ext{std::numeric_limits<double>::infinity(),
               -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& p = pieces_[i];
    const double lo = breaks_[i] - p.origin, hi = breaks_[i + 1] - p.origin;
    std::vector<double> cand;
    real_roots(derive(p.coeffs), lo, hi, cand);
    cand.push_back(lo);
    cand.push_back(hi);
    for (double t : cand) {
      const double v = horner(p.coeffs, t);
      ext.min = std::min(ext.min, v);
      ext.max = std::max(ext.max, v);
    }
  }
  return ext;
}

void CoefficientFn::require_positive(double floor, const char* role) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& p = pieces_[i];
    const double lo = breaks_[i] - p.origin, hi = breaks_[i + 1] - p.origin;
    std::vector<double> cand;
    real_roots(derive(p.coeffs), lo, hi, cand);
    cand.push_back(lo);
    cand.push_back(hi);
    double vmin = std::numeric_limits<double>::infinity();
    for (double t : cand) vmin = std::min(vmin, horner(p.coeffs, t));
    if (!(vmin >= floor)) {
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "%s must stay above %.3g, but piece %zu on [%.17g, %.17g] reaches %.17g",
                    role, floor, i, breaks_[i], breaks_[i + 1], vmin);
      throw DomainError(buf);
    }
  }
}

bool CoefficientFn::is_twice_differentiable(double rel_tol) const {
  Extremum ext = extremum();
  const double scale = 1.0 + std::max(std::abs(ext.min), std::abs(ext.max));
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    const double x = breaks_[i];
    const Piece& l = pieces_[i - 1];
    const Piece& r = pieces_[i];
    const std::vector<double> dl = derive(l.coeffs), dr = derive(r.coeffs);
    const std::vector<double> ddl = derive(dl), ddr = derive(dr);
    const double tl = x - l.origin, tr = x - r.origin;
    if (std::abs(horner(l.coeffs, tl) - horner(r.coeffs, tr)) > rel_tol * scale) return false;
    if (std::abs(horner(dl, tl) - horner(dr, tr)) > rel_tol * scale * 10.0) return false;
    if (std::abs(horner(ddl, tl) - horner(ddr, tr)) > rel_tol * scale * 100.0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// grammar

namespace {

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' || s[pos] == '\r'))
      ++pos;
  }

  bool try_consume(char ch) {
    skip_ws();
    if (pos < s.size() && s[pos] == ch) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char ch, const char* what) {
    if (!try_consume(ch)) throw ParseError(pos, std::string("expected '") + ch + "' " + what);
  }

  bool try_keyword(std::string_view kw) {
    skip_ws();
    if (s.substr(pos, kw.size()) == kw) {
      pos += kw.size();
      return true;
    }
    return false;
  }

  double number() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && s[pos] == '+') ++start;  // from_chars rejects leading '+'
    double value = 0.0;
    auto [next, ec] = std::from_chars(s.data() + start, s.data() + s.size(), value);
    if (ec != std::errc{} || next == s.data() + start)
      throw ParseError(pos, "expected a number");
    pos = static_cast<std::size_t>(next - s.data());
    return value;
  }

  bool at_end() {
    skip_ws();
    return pos == s.size();
  }
};

std::vector<double> parse_poly_body(Cursor& cur) {
  std::vector<double> coeffs;
  coeffs.push_back(cur.number());
  while (cur.try_consume(',')) coeffs.push_back(cur.number());
  return coeffs;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

CoefficientFn CoefficientFn::parse(std::string_view text, double a, double b) {
  if (!(a < b)) throw DomainError("coefficient interval must satisfy a < b");
  Cursor cur{text};

  if (cur.try_keyword("const")) {
    cur.expect(':', "after 'const'");
    const double v = cur.number();
    if (!cur.at_end()) throw ParseError(cur.pos, "trailing characters after constant");
    return constant(v, a, b);
  }
  if (cur.try_keyword("poly")) {
    cur.expect(':', "after 'poly'");
    std::vector<double> coeffs = parse_poly_body(cur);
    if (!cur.at_end()) throw ParseError(cur.pos, "trailing characters after polynomial");
    return polynomial(std::move(coeffs), a, b);
  }
  if (cur.try_keyword("pw")) {
    cur.expect(':', "after 'pw'");
    const double tol = 1e-9 * (1.0 + std::abs(a) + std::abs(b));
    std::vector<double> breaks{a};
    std::vector<std::vector<double>> coeffs;
    for (;;) {
      cur.skip_ws();
      const std::size_t piece_at = cur.pos;
      cur.expect('[', "to open a piecewise interval");
      const double lo = cur.number();
      cur.expect(',', "between interval endpoints");
      const double hi = cur.number();
      cur.expect(']', "to close a piecewise interval");
      if (std::abs(lo - breaks.back()) > tol)
        throw ParseError(piece_at, "piecewise intervals must tile the problem interval");
      if (!(hi > breaks.back() + tol))
        throw ParseError(piece_at, "piecewise interval is empty or out of order");
      if (!cur.try_keyword("poly"))
        throw ParseError(cur.pos, "expected 'poly' inside a piecewise segment");
      cur.expect(':', "after 'poly'");
      coeffs.push_back(parse_poly_body(cur));
      breaks.push_back(hi);
      if (!cur.try_consume(';')) break;
    }
    if (!cur.at_end()) throw ParseError(cur.pos, "trailing characters after piecewise list");
    if (std::abs(breaks.back() - b) > tol)
      throw ParseError(cur.pos, "piecewise intervals must tile the problem interval");
    breaks.front() = a;
    breaks.back() = b;
    return piecewise(std::move(breaks), std::move(coeffs));
  }
  throw ParseError(cur.pos, "expected 'const:', 'poly:' or 'pw:'");
}

std::string CoefficientFn::format() const {
  auto piece_body = [](const Piece& p) {
    const std::vector<double> global =
        p.origin == 0.0 ? p.coeffs : taylor_shift(p.coeffs, -p.origin);
    std::string out;
    for (std::size_t i = 0; i < global.size(); ++i) {
      if (i) out += ',';
      out += format_number(global[i]);
    }
    return out;
  };
  if (pieces_.size() == 1) {
    const Piece& p = pieces_.front();
    if (p.coeffs.size() == 1 && p.origin == 0.0) return "const:" + format_number(p.coeffs[0]);
    return "poly:" + piece_body(p);
  }
  std::string out = "pw:";
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (i) out += " ;";
    out += " [" + format_number(breaks_[i]) + "," + format_number(breaks_[i + 1]) + "] poly:";
    out += piece_body(pieces_[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

RatioScan ratio(const CoefficientFn& fa, const CoefficientFn& fb, int grid_points,
                double rel_tol, int max_refinements) {
  const double tol =
      1e-12 * (1.0 + std::abs(fa.domain_start()) + std::abs(fa.domain_end()));
  if (std::abs(fa.domain_start() - fb.domain_start()) > tol ||
      std::abs(fa.domain_end() - fb.domain_end()) > tol)
    throw DomainError("ratio requires a shared interval");
  fb.require_positive(kPositivityFloor, "ratio denominator");
  if (grid_points < 3) throw DomainError("ratio grid needs at least 3 points");

  const double a = fa.domain_start(), b = fa.domain_end();
  auto value_at = [&](double x) { return fa.eval(x) / fb.eval(x); };

  RatioScan scan;
  scan.x.resize(static_cast<std::size_t>(grid_points));
  scan.value.resize(scan.x.size());
  double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
  for (int i = 0; i < grid_points; ++i) {
    const double x = a + (b - a) * static_cast<double>(i) / (grid_points - 1);
    const double v = value_at(x);
    scan.x[static_cast<std::size_t>(i)] = x;
    scan.value[static_cast<std::size_t>(i)] = v;
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }

  // Dyadic refinement: each level evaluates only the new midpoints.
  std::int64_t intervals = grid_points - 1;
  for (int level = 0; level < max_refinements; ++level) {
    intervals *= 2;
    double rmin = vmin, rmax = vmax;
    for (std::int64_t i = 1; i < intervals; i += 2) {
      const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(intervals);
      const double v = value_at(x);
      rmin = std::min(rmin, v);
      rmax = std::max(rmax, v);
    }
    const bool done =
        std::abs(rmin - vmin) <= rel_tol * std::max(1.0, std::abs(rmin)) &&
        std::abs(rmax - vmax) <= rel_tol * std::max(1.0, std::abs(rmax));
    vmin = rmin;
    vmax = rmax;
    if (done) {
      scan.converged = true;
      break;
    }
  }
  scan.min = vmin;
  scan.max = vmax;
  return scan;
}

}  // namespace sturm
