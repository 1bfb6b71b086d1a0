// stringspec: command-line front end for the string / Sturm-Liouville
// spectral toolkit. Subcommands cover spectra, the boundary-parameter sign
// map and zero curve, first-eigenvalue bounds, uniqueness-condition checks,
// the Liouville transformation and the ground-eigenvalue trace identity.
//
// Exit codes: 0 ok, 2 domain error, 3 well-formed but unsatisfied check,
// 4 solver failure, 5 I/O error, 6 boundary pair on the zero curve.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sturm/ambarzumyan.hpp"
#include "sturm/liouville.hpp"

namespace {

using nlohmann::json;
using namespace sturm;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitUnsatisfied = 3;
constexpr int kExitSolver = 4;
constexpr int kExitIo = 5;
constexpr int kExitCurve = 6;
constexpr double kPi = std::numbers::pi;

struct IoFailure {
  std::string message;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Angles accept plain radians or pi expressions: "pi", "pi/2", "3pi/4",
/// "0.25pi".
double parse_angle(const std::string& text) {
  const std::size_t at = text.find("pi");
  if (at == std::string::npos) {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw DomainError("bad angle literal: " + text);
    return v;
  }
  double factor = 1.0;
  if (at > 0) factor = std::stod(text.substr(0, at));
  double divisor = 1.0;
  const std::string rest = text.substr(at + 2);
  if (!rest.empty()) {
    if (rest[0] != '/') throw DomainError("bad angle literal: " + text);
    divisor = std::stod(rest.substr(1));
  }
  return factor * kPi / divisor;
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    if (!std::cout) throw IoFailure{"failed to write to stdout"};
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure{"cannot open output file: " + path};
  out << content;
  out.flush();
  if (!out) throw IoFailure{"failed while writing: " + path};
}

json verdict_to_json(const AmbVerdict& v) {
  json j{{"target", v.target},
         {"condition", v.condition},
         {"residual", v.residual},
         {"satisfied", v.satisfied},
         {"swapped", v.swapped},
         {"scale_factor", v.reconstructed ? json(v.scale_factor) : json()},
         {"reconstruction_residual",
          v.reconstructed ? json(v.reconstruction_residual) : json()}};
  if (v.reconstructed) j["reconstructed"] = v.reconstructed->format();
  if (v.condition_extremal) {
    j["condition_mean"] = v.condition;
    j["condition_extremal"] = *v.condition_extremal;
    j["residual_mean"] = *v.residual_mean;
    j["residual_extremal"] = *v.residual_extremal;
  }
  return j;
}

// ---------------------------------------------------------------------------

struct CommonFlags {
  std::string out = "-";
  std::string format = "csv";
  double tol = 1e-10;

  void attach(CLI::App* cmd) {
    cmd->add_option("--out", out, "Output path ('-' for stdout)")
        ->capture_default_str();
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--tol", tol, "Solver tolerance on eigenvalues")
        ->capture_default_str();
  }

  EigenOptions eigen() const {
    EigenOptions opts;
    opts.lambda_tol = tol;
    return opts;
  }
};

/// Problem definition flags; exactly one of --p (string density on [0,1])
/// and --q (Sturm-Liouville potential on [0,pi]) selects the family.
struct ProblemFlags {
  std::string p, q;
  std::string alpha = "pi", beta = "0";
  std::string gamma = "pi", delta = "0";

  void attach(CLI::App* cmd) {
    cmd->add_option("--p", p, "String density (coefficient grammar, on [0,1])");
    cmd->add_option("--q", q, "Sturm-Liouville potential (coefficient grammar, on [0,pi])");
    cmd->add_option("--alpha", alpha, "Left string angle in (0,pi]")->capture_default_str();
    cmd->add_option("--beta", beta, "Right string angle in [0,pi)")->capture_default_str();
    cmd->add_option("--gamma", gamma, "Left Sturm-Liouville angle in (0,pi]")
        ->capture_default_str();
    cmd->add_option("--delta", delta, "Right Sturm-Liouville angle in [0,pi)")
        ->capture_default_str();
  }

  bool is_sturm_liouville() const {
    if (!p.empty() && !q.empty())
      throw DomainError("give either --p (string) or --q (Sturm-Liouville), not both");
    return !q.empty();
  }

  SpectralProblem build() const {
    if (is_sturm_liouville()) {
      return SpectralProblem::sturm_liouville(CoefficientFn::parse(q, 0.0, kPi),
                                              parse_angle(gamma), parse_angle(delta));
    }
    const std::string density = p.empty() ? "const:1" : p;
    return SpectralProblem::string(CoefficientFn::parse(density, 0.0, 1.0),
                                   parse_angle(alpha), parse_angle(beta));
  }
};

// ---------------------------------------------------------------------------

int cmd_spectrum(const ProblemFlags& pf, const CommonFlags& cf, int count,
                 std::optional<int> efn_index, int grid) {
  const SpectralProblem prob = pf.build();
  if (efn_index) {
    const Eigenpair ep = eigenfunction(prob, *efn_index, grid, cf.eigen());
    if (cf.format == "json") {
      json j{{"n", ep.n}, {"lambda", ep.value}, {"normalization", ep.normalization}};
      json samples = json::array();
      for (std::size_t i = 0; i < ep.x.size(); ++i)
        samples.push_back({ep.x[i], ep.u[i], ep.du[i]});
      j["samples"] = std::move(samples);
      write_output(cf.out, j.dump(2) + "\n");
    } else {
      json header{{"n", ep.n}, {"lambda", ep.value}, {"normalization", ep.normalization}};
      std::string text = "# " + header.dump() + "\nx,u,du\n";
      for (std::size_t i = 0; i < ep.x.size(); ++i)
        text += fmt17(ep.x[i]) + "," + fmt17(ep.u[i]) + "," + fmt17(ep.du[i]) + "\n";
      write_output(cf.out, text);
    }
    return kExitOk;
  }

  if (count < 1) throw DomainError("spectrum needs --n >= 1");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) values.push_back(eigenvalue(prob, n, cf.eigen()));
  if (cf.format == "json") {
    json rows = json::array();
    for (int n = 0; n < count; ++n)
      rows.push_back({{"n", n}, {"lambda", values[static_cast<std::size_t>(n)]}});
    write_output(cf.out, rows.dump(2) + "\n");
  } else {
    std::string text = "n,lambda\n";
    for (int n = 0; n < count; ++n)
      text += std::to_string(n) + "," + fmt17(values[static_cast<std::size_t>(n)]) + "\n";
    write_output(cf.out, text);
  }
  return kExitOk;
}

int emit_curve(const CommonFlags& cf, int samples) {
  if (samples < 2) throw DomainError("curve sampling needs --samples >= 2");
  std::string csv = "alpha,beta\n";
  json rows = json::array();
  for (int i = 0; i < samples; ++i) {
    const double a = kPi / 4 + (kPi - kPi / 4) * static_cast<double>(i) / (samples - 1);
    const double b = curve_beta(a);
    csv += fmt17(a) + "," + fmt17(b) + "\n";
    rows.push_back({{"alpha", a}, {"beta", b}});
  }
  write_output(cf.out, cf.format == "json" ? rows.dump(2) + "\n" : csv);
  return kExitOk;
}

int cmd_signmap(const std::string& density, const CommonFlags& cf, int grid, int jobs,
                bool curve_only, int samples, std::vector<double> window) {
  if (curve_only) return emit_curve(cf, samples);
  if (grid < 2) throw DomainError("signmap needs --grid >= 2");
  Lattice lat{kPi / grid, kPi, grid, 0.0, kPi * (grid - 1) / grid, grid};
  if (!window.empty()) {
    if (window.size() != 4)
      throw DomainError("--window needs alpha_min alpha_max beta_min beta_max");
    lat = Lattice{window[0], window[1], grid, window[2], window[3], grid};
  }
  const CoefficientFn p = CoefficientFn::parse(density, 0.0, 1.0);
  const std::vector<SignMapNode> nodes = sign_map(lat, p, jobs, cf.eigen());

  if (cf.format == "json") {
    json rows = json::array();
    for (const SignMapNode& n : nodes)
      rows.push_back({{"alpha", n.alpha},
                      {"beta", n.beta},
                      {"class", to_string(n.cls)},
                      {"lambda0", n.ok ? json(n.lambda0) : json()}});
    write_output(cf.out, rows.dump(2) + "\n");
  } else {
    std::string text = "alpha,beta,class,lambda0\n";
    for (const SignMapNode& n : nodes)
      text += fmt17(n.alpha) + "," + fmt17(n.beta) + "," + to_string(n.cls) + "," +
              fmt17(n.lambda0) + "\n";
    write_output(cf.out, text);
  }
  return kExitOk;
}

int cmd_bounds(const ProblemFlags& pf, const CommonFlags& cf) {
  const bool sl = pf.is_sturm_liouville();
  Bounds bounds{};
  double value = 0.0;
  if (sl) {
    const CoefficientFn q = CoefficientFn::parse(pf.q, 0.0, kPi);
    const double g = parse_angle(pf.gamma), d = parse_angle(pf.delta);
    bounds = mu0_bounds(q, g, d, cf.eigen());
    value = eigenvalue(SpectralProblem::sturm_liouville(q, g, d), 0, cf.eigen());
  } else {
    const CoefficientFn p = CoefficientFn::parse(pf.p.empty() ? "const:1" : pf.p, 0.0, 1.0);
    const double a = parse_angle(pf.alpha), b = parse_angle(pf.beta);
    bounds = lambda0_bounds(p, a, b, cf.eigen());
    value = eigenvalue(SpectralProblem::string(p, a, b), 0, cf.eigen());
  }
  if (cf.format == "json") {
    json j{{"lower", bounds.lower}, {"value", value}, {"upper", bounds.upper}};
    write_output(cf.out, j.dump(2) + "\n");
  } else {
    write_output(cf.out, "lower,value,upper\n" + fmt17(bounds.lower) + "," + fmt17(value) +
                             "," + fmt17(bounds.upper) + "\n");
  }
  return kExitOk;
}

int cmd_check(const ProblemFlags& pf, const CommonFlags& cf, const std::string& theorem,
              const std::string& pref, const std::string& qref, const std::string& which,
              int n) {
  CheckOptions opts;
  opts.rel_tol = cf.tol == 1e-10 ? 1e-7 : cf.tol;  // --tol overrides the check tolerance

  AmbVerdict verdict;
  if (theorem == "2.1" || theorem == "2.2" || theorem == "2.3") {
    if (pf.p.empty() || pref.empty())
      throw DomainError("string theorems need --p and --pref");
    const CoefficientFn p = CoefficientFn::parse(pf.p, 0.0, 1.0);
    const CoefficientFn ref = CoefficientFn::parse(pref, 0.0, 1.0);
    p.require_positive(kPositivityFloor, "density");
    ref.require_positive(kPositivityFloor, "reference density");
    const double a = parse_angle(pf.alpha), b = parse_angle(pf.beta);
    const ExtremalSide side = which == "min" ? ExtremalSide::Min : ExtremalSide::Max;
    if (theorem == "2.1")
      verdict = check_extremal(p, ref, a, b, side, opts);
    else if (theorem == "2.2")
      verdict = check_weighted_mean(p, ref, a, b, opts);
    else
      verdict = check_nth(p, ref, a, b, n, side, opts);
  } else if (theorem == "1.2" || theorem == "1.3") {
    if (pf.q.empty() || qref.empty())
      throw DomainError("Sturm-Liouville theorems need --q and --qref");
    const CoefficientFn q = CoefficientFn::parse(pf.q, 0.0, kPi);
    const CoefficientFn ref = CoefficientFn::parse(qref, 0.0, kPi);
    const double g = parse_angle(pf.gamma), d = parse_angle(pf.delta);
    if (theorem == "1.2") {
      verdict = sl_check_yurko(q, ref, g, d, opts);
    } else {
      const ExtremalSide side = which == "inf" ? ExtremalSide::Min : ExtremalSide::Max;
      verdict = sl_check_extremal(q, ref, g, d, side, opts);
    }
  } else {
    throw DomainError("unknown --theorem (expected 2.1, 2.2, 2.3, 1.2 or 1.3)");
  }

  write_output(cf.out, verdict_to_json(verdict).dump(2) + "\n");
  return verdict.satisfied ? kExitOk : kExitUnsatisfied;
}

int cmd_liouville(const ProblemFlags& pf, const CommonFlags& cf, int samples,
                  std::optional<int> consistency_n) {
  const CoefficientFn p = CoefficientFn::parse(pf.p.empty() ? "const:1" : pf.p, 0.0, 1.0);
  const double a = parse_angle(pf.alpha), b = parse_angle(pf.beta);

  if (consistency_n) {
    const std::vector<ConsistencyRow> rows =
        consistency_check(p, a, b, *consistency_n, samples, cf.eigen());
    if (cf.format == "json") {
      json arr = json::array();
      for (const ConsistencyRow& r : rows)
        arr.push_back({{"n", r.n},
                       {"lambda_direct", r.lambda_direct},
                       {"lambda_transformed", r.lambda_transformed},
                       {"rel_gap", r.rel_gap}});
      write_output(cf.out, arr.dump(2) + "\n");
    } else {
      std::string text = "n,lambda_direct,lambda_transformed,rel_gap\n";
      for (const ConsistencyRow& r : rows)
        text += std::to_string(r.n) + "," + fmt17(r.lambda_direct) + "," +
                fmt17(r.lambda_transformed) + "," + fmt17(r.rel_gap) + "\n";
      write_output(cf.out, text);
    }
    return kExitOk;
  }

  const LiouvilleImage im = transform(p, a, b, samples);
  if (cf.format == "json") {
    json j{{"c", im.c}, {"gamma", im.gamma}, {"delta", im.delta}};
    json rows = json::array();
    for (std::size_t i = 0; i < im.x.size(); ++i)
      rows.push_back({im.x[i], im.s[i], im.q[i]});
    j["samples"] = std::move(rows);
    write_output(cf.out, j.dump(2) + "\n");
  } else {
    json header{{"c", im.c}, {"gamma", im.gamma}, {"delta", im.delta}};
    std::string text = "# " + header.dump() + "\nx,s,q\n";
    for (std::size_t i = 0; i < im.x.size(); ++i)
      text += fmt17(im.x[i]) + "," + fmt17(im.s[i]) + "," + fmt17(im.q[i]) + "\n";
    write_output(cf.out, text);
  }
  return kExitOk;
}

int cmd_trace(const ProblemFlags& pf, const CommonFlags& cf, int t_nodes, int grid) {
  if (pf.q.empty()) throw DomainError("trace needs --q");
  const CoefficientFn q = CoefficientFn::parse(pf.q, 0.0, kPi);
  const TraceCheck tc = trace_formula_check(q, parse_angle(pf.gamma),
                                            parse_angle(pf.delta), t_nodes, grid,
                                            cf.eigen());
  if (cf.format == "json") {
    json j{{"lhs", tc.lhs}, {"rhs", tc.rhs}, {"gap", tc.gap}};
    write_output(cf.out, j.dump(2) + "\n");
  } else {
    write_output(cf.out,
                 "lhs,rhs,gap\n" + fmt17(tc.lhs) + "," + fmt17(tc.rhs) + "," +
                     fmt17(tc.gap) + "\n");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stringspec: direct and inverse spectral computations for vibrating "
               "strings and Sturm-Liouville problems"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a config file (flags win)");

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "First N eigenvalues, or one eigenfunction");
  ProblemFlags spec_pf;
  CommonFlags spec_cf;
  int spec_count = 1, spec_grid = 4097;
  int spec_efn = -1;
  spec_pf.attach(spectrum);
  spec_cf.attach(spectrum);
  spectrum->add_option("--n", spec_count, "Number of eigenvalues (rows n = 0..N-1)")
      ->capture_default_str();
  spectrum->add_option("--eigenfunction", spec_efn,
                       "Export the eigenfunction of this index instead of the spectrum");
  spectrum->add_option("--grid", spec_grid, "Eigenfunction sample grid (odd)")
      ->capture_default_str();

  // signmap / curve
  auto* signmap = app.add_subcommand(
      "signmap", "Classification and numeric lambda_0 over a boundary-angle lattice");
  CommonFlags sm_cf;
  std::string sm_density = "const:1";
  int sm_grid = 21, sm_jobs = 1, sm_samples = 50;
  bool sm_curve_only = false;
  std::vector<double> sm_window;
  sm_cf.attach(signmap);
  signmap->add_option("--p", sm_density, "String density")->capture_default_str();
  signmap->add_option("--grid", sm_grid, "Lattice resolution per axis")->capture_default_str();
  signmap->add_option("--jobs", sm_jobs, "Worker threads")->capture_default_str();
  signmap->add_flag("--curve-only", sm_curve_only, "Emit zero-curve samples (alpha,beta)");
  signmap->add_option("--samples", sm_samples, "Curve sample count")->capture_default_str();
  signmap
      ->add_option("--window", sm_window,
                   "Lattice window: alpha_min alpha_max beta_min beta_max")
      ->expected(4);

  auto* curve = app.add_subcommand("curve", "Zero-curve samples (signmap --curve-only)");
  CommonFlags curve_cf;
  int curve_samples = 50;
  curve_cf.attach(curve);
  curve->add_option("--samples", curve_samples, "Sample count")->capture_default_str();

  // bounds
  auto* bounds = app.add_subcommand(
      "bounds", "First-eigenvalue bounds (string via density extrema, SL via potential)");
  ProblemFlags bounds_pf;
  CommonFlags bounds_cf;
  bounds_pf.attach(bounds);
  bounds_cf.attach(bounds);

  // check
  auto* check = app.add_subcommand("check", "Uniqueness-condition check (JSON verdict)");
  ProblemFlags check_pf;
  CommonFlags check_cf;
  std::string check_theorem, check_pref, check_qref, check_which = "max";
  int check_n = 1;
  check_pf.attach(check);
  check_cf.attach(check);
  check->add_option("--theorem", check_theorem, "2.1, 2.2, 2.3, 1.2 or 1.3")->required();
  check->add_option("--pref", check_pref, "Reference density");
  check->add_option("--qref", check_qref, "Reference potential");
  check->add_option("--which", check_which, "Extremum: max|min (2.1/2.3), sup|inf (1.3)")
      ->capture_default_str();
  check->add_option("--index", check_n, "Eigenvalue index for theorem 2.3")
      ->capture_default_str();

  // liouville
  auto* liouv = app.add_subcommand("liouville",
                                   "Liouville transformation of a smooth-density string");
  ProblemFlags liouv_pf;
  CommonFlags liouv_cf;
  int liouv_samples = 2049;
  int liouv_consistency = -1;
  liouv_pf.attach(liouv);
  liouv_cf.attach(liouv);
  liouv->add_option("--samples", liouv_samples, "Transform sample count")
      ->capture_default_str();
  liouv->add_option("--consistency", liouv_consistency,
                    "Emit the eigenvalue-relation table up to this index");

  // trace
  auto* trace = app.add_subcommand("trace", "Ground-eigenvalue integral identity check");
  ProblemFlags trace_pf;
  CommonFlags trace_cf;
  int trace_nodes = 32, trace_grid = 4097;
  trace_pf.attach(trace);
  trace_cf.attach(trace);
  trace->add_option("--tnodes", trace_nodes, "Gauss-Legendre nodes for the t integral")
      ->capture_default_str();
  trace->add_option("--grid", trace_grid, "Eigenfunction sample grid (odd)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (spectrum->parsed())
      return cmd_spectrum(spec_pf, spec_cf, spec_count,
                          spec_efn >= 0 ? std::optional<int>(spec_efn) : std::nullopt,
                          spec_grid);
    if (signmap->parsed())
      return cmd_signmap(sm_density, sm_cf, sm_grid, sm_jobs, sm_curve_only, sm_samples,
                         sm_window);
    if (curve->parsed()) return emit_curve(curve_cf, curve_samples);
    if (bounds->parsed()) return cmd_bounds(bounds_pf, bounds_cf);
    if (check->parsed())
      return cmd_check(check_pf, check_cf, check_theorem, check_pref, check_qref,
                       check_which, check_n);
    if (liouv->parsed())
      return cmd_liouville(liouv_pf, liouv_cf, liouv_samples,
                           liouv_consistency >= 0 ? std::optional<int>(liouv_consistency)
                                                  : std::nullopt);
    if (trace->parsed()) return cmd_trace(trace_pf, trace_cf, trace_nodes, trace_grid);
  } catch (const CurveExcludedError& e) {
    std::cerr << "error (zero curve): " << e.what() << "\n";
    return kExitCurve;
  } catch (const ParseError& e) {
    std::cerr << "error (coefficient grammar): " << e.what() << "\n";
    return kExitDomain;
  } catch (const DomainError& e) {
    std::cerr << "error (domain): " << e.what() << "\n";
    return kExitDomain;
  } catch (const SolverError& e) {
    std::cerr << "error (solver): " << e.what() << "\n";
    return kExitSolver;
  } catch (const IoFailure& e) {
    std::cerr << "error (io): " << e.message << "\n";
    return kExitIo;
  }
  return kExitOk;
}
