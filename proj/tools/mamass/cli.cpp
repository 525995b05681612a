#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mamass/bounds.hpp"
#include "mamass/energy.hpp"
#include "mamass/errors.hpp"
#include "mamass/frames.hpp"
#include "mamass/geometry.hpp"
#include "mamass/invariants.hpp"
#include "mamass/mass.hpp"
#include "mamass/regularize.hpp"
#include "plots.hpp"

namespace mamass::cli {

using json = nlohmann::ordered_json;

namespace {

// Errors in the user's request: bad flags, specs, dimensions or domains.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("cannot parse ") + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what);
  return out;
}

json verdict_json(const Verdict& v) {
  return json{{"name", v.name}, {"pass", v.pass}, {"residual", v.residual}, {"tolerance", v.tolerance},
              {"witness", v.witness}};
}

json report_json(const InequalityReport& r) {
  return json{{"name", r.name},       {"lhs", r.lhs},
              {"rhs", r.rhs},         {"slack", r.slack},
              {"uncertainty", r.uncertainty}, {"verdict", to_string(r.verdict)},
              {"asserted", r.asserted}, {"note", r.note}};
}

// Options shared by analyze and verify.
struct CommonConfig {
  std::string function;
  int n = 1;
  std::string scheme_kind;  // empty: recommended scheme for n
  long samples = 200000;
  std::uint64_t seed = 1;
  int chart_order = 8;
  int angular_nodes = 32;
  std::string json_path, csv_path, svg_path;

  void add_to(CLI::App* app, bool need_function) {
    auto* fo = app->add_option("--function", function, "function spec, e.g. \"radial(profile=log,c=1)\"");
    if (need_function) fo->required();
    app->add_option("--dim", n, "n: work on C^{n+1}")->check(CLI::Range(1, 8));
    app->add_option("--scheme", scheme_kind, "quadrature: mc, mcis or tensor (default: tensor for n=1, mcis otherwise)");
    app->add_option("--samples", samples, "Monte Carlo samples")->check(CLI::Range(16L, 100000000L));
    app->add_option("--seed", seed, "random seed");
    app->add_option("--chart-order", chart_order, "tensor rule: Gauss-Legendre nodes per panel")->check(CLI::Range(2, 64));
    app->add_option("--angular-nodes", angular_nodes, "tensor rule: angular nodes")->check(CLI::Range(4, 1024));
    app->add_option("--json", json_path, "write the JSON report here (default: stdout)");
    app->add_option("--csv", csv_path, "write the trace as CSV");
    app->add_option("--svg", svg_path, "write a line plot as SVG");
  }

  IntegrationScheme scheme() const {
    IntegrationScheme s = default_scheme(n, seed, samples);
    if (!scheme_kind.empty()) {
      try {
        s.kind = scheme_kind_from_string(scheme_kind);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    }
    s.chart_order = chart_order;
    s.angular_nodes = angular_nodes;
    try {
      validate_scheme(s, n);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    return s;
  }

  json echo() const {
    IntegrationScheme s = scheme();
    return json{{"function", function},       {"n", n},
                {"scheme", to_string(s.kind)}, {"samples", s.samples},
                {"seed", s.seed},             {"chart_order", s.chart_order},
                {"angular_nodes", s.angular_nodes}};
  }
};

FunctionSpec load_function(const CommonConfig& c) {
  FunctionSpec f = parse_spec(c.function);
  check_dimension(f, c.n);
  return f;
}

void emit_json(const json& doc, const std::string& path, std::ostream& out) {
  std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw UsageError("cannot write " + path);
  os << text;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw UsageError("cannot write " + path);
  return os;
}

bool all_pass(const json& checks) {
  for (const auto& c : checks)
    if (!c["pass"].get<bool>()) return false;
  return true;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeConfig {
  CommonConfig common;
  std::string t_grid = "-5,-10,-20,-40";
  std::string deep_grid = "-100,-1000,-10000,-100000";
  std::string A_grid = "100,1000,10000,100000";
  int grid_density = 4096;
  long positivity_samples = 10000;
  double positivity_tolerance = 1e-6;
};

int cmd_analyze(const AnalyzeConfig& cfg, std::ostream& out, std::ostream& err) {
  const CommonConfig& c = cfg.common;
  FunctionSpec f = load_function(c);
  if (!f.invariant()) throw NotInvariant("'" + f.text + "' is not S^1-invariant");
  int n = c.n;
  IntegrationScheme scheme = c.scheme();
  std::vector<double> t_grid = parse_list(cfg.t_grid, "t grid");
  std::vector<double> deep = parse_list(cfg.deep_grid, "deep t grid");
  std::vector<double> A_grid = parse_list(cfg.A_grid, "A grid");

  LelongEstimate nu = lelong_number(f, n, deep, scheme);
  bool use_I = nu.by_I_uncertainty <= nu.by_slope_uncertainty;
  double nu_val = use_I ? nu.by_I : nu.by_slope;
  double nu_unc = use_I ? nu.by_I_uncertainty : nu.by_slope_uncertainty;

  DirectionalProfile prof = directional_profile(f, n, A_grid, cfg.grid_density, c.seed);
  Limit lam = lambda_extrapolate(prof);

  std::vector<TransversalSweep> sweeps;
  for (double t : t_grid) {
    if (!(t <= -1.0)) throw UsageError("t grid values must be <= -1");
    sweeps.push_back(sweep_transversal(f, n, t, scheme));
  }
  ResidualMass tau = residual_mass_from(sweeps);

  EstimateInputs in;
  in.n = n;
  in.nu = nu_val;
  in.nu_unc = nu_unc;
  in.lambda = lam.value;
  in.lambda_unc = lam.uncertainty;
  in.tau = tau.tau;
  in.tau_unc = tau.uncertainty;

  json checks = json::array();
  std::vector<std::vector<double>> csv_rows;
  std::vector<double> I_over_pin;
  double pin = std::pow(kPi, n);
  double max_err = 0.0;
  for (std::size_t i = 0; i < sweeps.size(); ++i) {
    const TransversalSweep& sw = sweeps[i];
    Estimate I = sw.rule.integrate(sw.u_dot);
    MaxDirectional M = max_directional(f, n, -sw.t, cfg.grid_density, c.seed);
    std::vector<Estimate> th = theta_terms(sw);
    std::vector<Estimate> E = transversal_terms(sw);
    BoundaryMass bm = boundary_mass_from(sw);
    BoundaryMass alt = boundary_mass_alternating_from(sw);
    max_err = std::max(max_err, bm.total.std_error);

    EstimateAtT at;
    at.t = sw.t;
    at.A = -sw.t;
    at.mass = bm.total.value;
    at.mass_err = bm.total.std_error;
    at.I = I.value;
    at.I_err = I.std_error;
    at.M = M.value;
    at.M_gap = M.gap;
    for (const auto& e : th) {
      at.theta_terms.push_back(e.value);
      at.theta_terms_err.push_back(e.std_error);
    }
    in.at_t.push_back(at);

    Verdict v;
    v.name = "alternating_form [t=" + format_number(sw.t) + "]";
    v.residual = std::abs(bm.total.value - alt.total.value);
    v.tolerance = 3.0 * std::hypot(bm.total.std_error, alt.total.std_error) + 1e-9 * std::max(1.0, std::abs(bm.total.value));
    v.pass = v.residual <= v.tolerance;
    checks.push_back(verdict_json(v));

    I_over_pin.push_back(I.value / pin);
    std::vector<double> row{sw.t, bm.total.value, bm.total.std_error, I.value / pin};
    for (const auto& e : E) row.push_back(e.value);
    csv_rows.push_back(row);
  }

  PositivityOptions po;
  po.n = n;
  po.samples = cfg.positivity_samples;
  po.seed = c.seed;
  po.tolerance = cfg.positivity_tolerance;
  checks.push_back(verdict_json(positivity_check(f, po)));
  InfimumGapOptions io;
  io.n = n;
  io.seed = c.seed;
  checks.push_back(verdict_json(infimum_gap_check(f, io)));

  std::vector<InequalityReport> reports = check_estimate_suite(in);
  json ineq = json::array();
  bool ineq_ok = true;
  for (const auto& r : reports) {
    ineq.push_back(report_json(r));
    if (r.asserted && r.verdict == InequalityVerdict::fail) ineq_ok = false;
  }

  json doc;
  doc["schema"] = kSchema;
  doc["tool_version"] = kToolVersion;
  doc["command"] = "analyze";
  json conf = c.echo();
  conf["t_grid"] = t_grid;
  conf["deep_t_grid"] = deep;
  conf["A_grid"] = A_grid;
  conf["grid_density"] = cfg.grid_density;
  conf["positivity_samples"] = cfg.positivity_samples;
  conf["positivity_tolerance"] = cfg.positivity_tolerance;
  doc["config"] = conf;
  doc["nu"] = json{{"by_slope", nu.by_slope},
                   {"by_slope_uncertainty", nu.by_slope_uncertainty},
                   {"by_I", nu.by_I},
                   {"by_I_uncertainty", nu.by_I_uncertainty},
                   {"extrapolated", nu_val},
                   {"uncertainty", nu_unc},
                   {"t_grid", deep},
                   {"slope_trace", nu.slope_trace.values},
                   {"I_trace", nu.I_trace.values}};
  doc["lambda"] = json{{"A_grid", prof.A_grid},
                       {"M_A", prof.M_values},
                       {"gaps", prof.gaps},
                       {"extrapolated", lam.value},
                       {"uncertainty", lam.uncertainty}};
  doc["tau"] = json{{"t_grid", tau.trace.t_grid},
                    {"trace", tau.trace.mass},
                    {"std_error", tau.trace.std_error},
                    {"per_k", tau.trace.per_k},
                    {"I_over_pin", I_over_pin},
                    {"extrapolated", tau.tau},
                    {"uncertainty", tau.uncertainty}};
  doc["inequalities"] = ineq;
  doc["checks"] = checks;
  doc["quadrature"] = json{{"scheme", to_string(scheme.kind)},
                           {"samples", scheme.kind == SchemeKind::tensor ? static_cast<long>(sweeps.front().rule.size()) : scheme.samples},
                           {"seed", scheme.seed},
                           {"max_std_error", max_err}};
  bool ok = ineq_ok && all_pass(checks);
  doc["pass"] = ok;
  emit_json(doc, c.json_path, out);

  if (!c.csv_path.empty()) {
    std::vector<std::string> header{"t", "boundary_mass", "stderr", "I_over_pin"};
    for (int k = 0; k <= n; ++k) header.push_back("E_" + std::to_string(k));
    auto os = open_output(c.csv_path);
    write_csv(os, header, csv_rows);
  }
  if (!c.svg_path.empty()) {
    auto os = open_output(c.svg_path);
    write_svg(os, "boundary mass and I/pi^n for " + f.text, "t",
              {{"boundary mass", tau.trace.t_grid, tau.trace.mass}, {"I/pi^n", tau.trace.t_grid, I_over_pin}});
  }
  if (!c.json_path.empty()) {
    out << "nu = " << format_number(nu_val) << " +- " << format_number(nu_unc) << "\n"
        << "lambda = " << format_number(lam.value) << " +- " << format_number(lam.uncertainty) << "\n"
        << "tau = " << format_number(tau.tau) << " +- " << format_number(tau.uncertainty) << "\n"
        << (ok ? "all asserted checks pass" : "some asserted checks failed") << "\n";
  }
  if (!ok) err << "analyze: asserted check failed; see report\n";
  return ok ? kExitPass : kExitCheckFailed;
}

// -------------------------------------------------------------- constants

int cmd_constants(int max_n, bool as_json, std::ostream& out) {
  if (max_n < 1) throw UsageError("--max-n must be >= 1");
  auto B = bell_constants(max_n + 1);
  if (as_json) {
    json doc;
    doc["schema"] = kSchema;
    doc["tool_version"] = kToolVersion;
    doc["command"] = "constants";
    json b = json::array(), cn = json::array();
    for (const auto& v : B) b.push_back(v.str());
    for (int k = 1; k <= max_n; ++k) cn.push_back(dimensional_constant(k).str());
    doc["B"] = b;
    doc["C"] = cn;
    out << doc.dump(2) << "\n";
    return kExitPass;
  }
  out << "k  B_k\n";
  for (std::size_t k = 0; k < B.size(); ++k) out << k << "  " << B[k].str() << "\n";
  out << "\nn  C_n\n";
  for (int k = 1; k <= max_n; ++k) out << k << "  " << dimensional_constant(k).str() << "\n";
  return kExitPass;
}

// ------------------------------------------------------------- identities

int cmd_identities(int max_n, bool mutate, std::ostream& out, std::ostream& err) {
  if (max_n < 1) throw UsageError("--max-n must be >= 1");
  bool ok = true;
  auto run = [&](const std::string& name, const std::function<Verdict()>& fn) {
    try {
      Verdict v = fn();
      out << std::left << std::setw(32) << name << (v.pass ? "pass" : "FAIL") << "  " << v.witness << "\n";
      ok = ok && v.pass;
    } catch (const CounterexampleFound& e) {
      out << std::left << std::setw(32) << name << "FAIL  " << e.what() << "\n";
      ok = false;
    }
  };
  run("binomial weight n<=" + std::to_string(max_n), [&] { return verify_binomial_weight_identity(max_n, mutate); });
  for (int n = 1; n <= max_n; ++n) {
    run("telescoping n=" + std::to_string(n), [&] { return verify_telescoping_identity(n, mutate); });
    run("alternating expansion n=" + std::to_string(n), [&] { return verify_alternating_expansion_identity(n, mutate); });
  }
  if (!ok) err << "identities: counterexample found\n";
  return ok ? kExitPass : kExitCheckFailed;
}

// ----------------------------------------------------------------- verify

struct VerifyConfig {
  CommonConfig common;
  std::string suite;
  std::string t_grid = "-4,-8";
  double t1 = -8.0, t2 = -4.0;
  int points = 20;
  double fd_step = 1e-5;
  long positivity_samples = 10000;
  double positivity_tolerance = 1e-6;
};

std::vector<CVec> random_points(int n, int count, std::uint64_t seed, double rmin, double rmax) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> N;
  std::uniform_real_distribution<double> U(rmin, rmax);
  std::vector<CVec> pts;
  for (int i = 0; i < count; ++i) {
    CVec z(n + 1);
    for (int j = 0; j <= n; ++j) z(j) = cplx(N(gen), N(gen));
    z *= U(gen) / z.norm();
    pts.push_back(z);
  }
  return pts;
}

int cmd_verify(const VerifyConfig& cfg, std::ostream& out, std::ostream& err) {
  const CommonConfig& c = cfg.common;
  int n = c.n;
  json checks = json::array();
  json extra;
  const std::string& suite = cfg.suite;

  if (suite == "regularize" && n != 1)
    throw UnsupportedDimension("regularization is implemented for n = 1 only");
  if (suite == "contact") {
    ContactCheckOptions o;
    o.n = n;
    o.seed = c.seed;
    checks.push_back(verdict_json(contact_selfcheck(o)));
  } else {
    if (c.function.empty()) throw UsageError("--function is required for suite " + suite);
    FunctionSpec f = load_function(c);
    IntegrationScheme scheme = c.scheme();
    std::vector<double> t_grid = parse_list(cfg.t_grid, "t grid");
    auto need_invariant = [&] {
      if (!f.invariant()) throw NotInvariant("'" + f.text + "' is not S^1-invariant");
    };

    if (suite == "mass-oracles") {
      need_invariant();
      std::vector<Series> per_k(n + 1);
      for (int k = 0; k <= n; ++k) per_k[k].name = "k=" + std::to_string(k);
      for (double t : t_grid) {
        TransversalSweep sw = sweep_transversal(f, n, t, scheme);
        BoundaryMass bm = boundary_mass_from(sw), alt = boundary_mass_alternating_from(sw);
        Verdict v;
        v.name = "alternating_form [t=" + format_number(t) + "]";
        v.residual = std::abs(bm.total.value - alt.total.value);
        v.tolerance = 3.0 * std::hypot(bm.total.std_error, alt.total.std_error) + 1e-9 * std::max(1.0, std::abs(bm.total.value));
        v.pass = v.residual <= v.tolerance;
        checks.push_back(verdict_json(v));
        for (int k = 0; k <= n; ++k) {
          per_k[k].x.push_back(t);
          per_k[k].y.push_back(bm.per_k[k].value);
        }
      }
      BoundaryMass m1 = boundary_mass(f, n, cfg.t1, scheme), m2 = boundary_mass(f, n, cfg.t2, scheme);
      Estimate sh = shell_oracle(f, n, cfg.t1, cfg.t2, scheme);
      double diff = m2.total.value - m1.total.value;
      Verdict v;
      v.name = "shell_oracle [" + format_number(cfg.t1) + "," + format_number(cfg.t2) + "]";
      v.residual = std::abs(diff - sh.value);
      double sig = std::sqrt(m1.total.std_error * m1.total.std_error + m2.total.std_error * m2.total.std_error +
                             sh.std_error * sh.std_error);
      v.tolerance = 3.0 * sig + 1e-6 * std::max(1.0, std::abs(sh.value));
      v.pass = v.residual <= v.tolerance;
      v.witness = "mass difference " + format_number(diff) + ", shell " + format_number(sh.value);
      checks.push_back(verdict_json(v));
      if (!c.svg_path.empty()) {
        auto os = open_output(c.svg_path);
        write_svg(os, "per-k boundary mass summands for " + f.text, "t", per_k);
      }
    } else if (suite == "positivity") {
      PositivityOptions po;
      po.n = n;
      po.samples = cfg.positivity_samples;
      po.seed = c.seed;
      po.tolerance = cfg.positivity_tolerance;
      checks.push_back(verdict_json(positivity_check(f, po)));
    } else if (suite == "energy") {
      need_invariant();
      for (double t : t_grid) checks.push_back(verdict_json(energy_consistency_check(f, n, t, scheme)));
      checks.push_back(verdict_json(energy_derivative_check(f, n, t_grid.back(), scheme)));
      if (t_grid.size() >= 4) {
        ConcavityResult cr = concavity_check(f, n, t_grid, scheme);
        checks.push_back(verdict_json(cr.verdict));
        extra["concavity_shape"] = to_string(cr.shape);
      }
    } else if (suite == "frames") {
      auto pts = random_points(n, cfg.points, c.seed, 0.2, 0.8);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        Verdict v = hessian_decomposition_check(f, pts[i], cfg.fd_step);
        v.name += " [point " + std::to_string(i) + "]";
        checks.push_back(verdict_json(v));
        if (f.invariant()) {
          Verdict r = restriction_check(f, pts[i], cfg.fd_step);
          r.name += " [point " + std::to_string(i) + "]";
          checks.push_back(verdict_json(r));
        }
        Verdict a = antisymmetry_check(pts[i], cfg.fd_step);
        a.name += " [point " + std::to_string(i) + "]";
        checks.push_back(verdict_json(a));
      }
    } else if (suite == "regularize") {
      checks.push_back(verdict_json(mollifier_selfcheck()));
      auto pts = random_points(1, 8, c.seed, 0.1, 0.6);
      checks.push_back(verdict_json(friedrichs_check(f, pts, 0.02)));
      checks.push_back(verdict_json(mollified_slope_bound(f, 3.0, 6.0, {0.02, 0.01})));
      if (f.invariant()) {
        IntegrationScheme ms{SchemeKind::mcis, std::min(c.samples, 2000L), c.seed};
        MassConvergence mc = mass_convergence_check(f, -2.0, {0.02, 0.01, 0.005}, ms);
        checks.push_back(verdict_json(mc.verdict));
      }
    } else {
      throw UsageError("unknown suite '" + suite + "'");
    }
  }

  json doc;
  doc["schema"] = kSchema;
  doc["tool_version"] = kToolVersion;
  doc["command"] = "verify";
  json conf = c.echo();
  conf["suite"] = suite;
  doc["config"] = conf;
  doc["checks"] = checks;
  if (!extra.empty()) doc["details"] = extra;
  bool ok = all_pass(checks);
  doc["pass"] = ok;
  emit_json(doc, c.json_path, out);
  if (!c.json_path.empty()) {
    for (const auto& ch : checks)
      out << (ch["pass"].get<bool>() ? "pass  " : "FAIL  ") << ch["name"].get<std::string>() << "\n";
  }
  if (!ok) err << "verify: check failed\n";
  return ok ? kExitPass : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monge-Ampere mass, Lelong numbers and related checks for S^1-invariant psh functions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  AnalyzeConfig acfg;
  auto* analyze = app.add_subcommand("analyze", "nu, lambda, tau and the inequality suite for one function");
  acfg.common.add_to(analyze, true);
  analyze->add_option("--t-grid", acfg.t_grid, "t values for the residual mass (comma separated, decreasing)");
  analyze->add_option("--deep-grid", acfg.deep_grid, "t values for the Lelong number");
  analyze->add_option("--A-grid", acfg.A_grid, "A values for the maximal directional Lelong number");
  analyze->add_option("--grid-density", acfg.grid_density, "covering sample size for M_A")->check(CLI::Range(16, 1 << 20));
  analyze->add_option("--positivity-samples", acfg.positivity_samples)->check(CLI::Range(1L, 10000000L));
  analyze->add_option("--positivity-tolerance", acfg.positivity_tolerance);

  int max_n = 3;
  bool as_json = false;
  auto* constants = app.add_subcommand("constants", "print B_k and C_n exactly");
  constants->add_option("--max-n", max_n, "largest n")->required();
  constants->add_flag("--json", as_json, "JSON instead of a table");

  int id_max_n = 8;
  bool mutate = false;
  auto* identities = app.add_subcommand("identities", "exact combinatorial identity verification");
  identities->add_option("--max-n", id_max_n, "largest n")->required();
  identities->add_flag("--mutate", mutate, "inject a deliberate error (fault test)")->group("");

  VerifyConfig vcfg;
  auto* verify = app.add_subcommand("verify", "run a named check suite");
  vcfg.common.add_to(verify, false);
  verify->add_option("--suite", vcfg.suite, "mass-oracles, positivity, energy, frames, regularize or contact")
      ->required();
  verify->add_option("--t-grid", vcfg.t_grid, "t values used by the suite");
  verify->add_option("--t1", vcfg.t1, "inner shell boundary for the shell oracle");
  verify->add_option("--t2", vcfg.t2, "outer shell boundary for the shell oracle");
  verify->add_option("--points", vcfg.points, "random points for the frames suite")->check(CLI::Range(1, 100000));
  verify->add_option("--fd-step", vcfg.fd_step, "relative finite-difference step");
  verify->add_option("--positivity-samples", vcfg.positivity_samples)->check(CLI::Range(1L, 10000000L));
  verify->add_option("--positivity-tolerance", vcfg.positivity_tolerance);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(acfg, out, err);
    if (*constants) return cmd_constants(max_n, as_json, out);
    if (*identities) return cmd_identities(id_max_n, mutate, out, err);
    if (*verify) return cmd_verify(vcfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionMismatch& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const NotInvariant& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedDimension& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const InsufficientData& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const OutsideDomain& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const TooCloseToOrigin& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const BadRadii& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace mamass::cli
