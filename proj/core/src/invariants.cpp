#include "mamass/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mamass/errors.hpp"
#include "mamass/geometry.hpp"
#include "mamass/mass.hpp"
#include "mamass/parallel.hpp"
#include "mamass/rng.hpp"

namespace mamass {

namespace {

void require_invariant(const FunctionSpec& f) {
  if (!f.invariant()) throw NotInvariant("'" + f.text + "' is not S^1-invariant");
}

void require_t_grid(const std::vector<double>& ts) {
  if (ts.size() < 3) throw InsufficientData("grid needs at least 3 points");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] > -1.0) throw InvalidArgument("t grid must lie in t <= -1");
    if (i && !(ts[i] < ts[i - 1])) throw InvalidArgument("t grid must be strictly decreasing");
  }
}

double u_dot_at(const FunctionSpec& f, double t, const CVec& w) {
  ScaledJet J = eval_scaled(f, t, w);
  return 2.0 * (w.transpose() * J.g)(0).real();
}

double u_dot_chart(const FunctionSpec& f, double t, const CVec& zeta, int chart) {
  CVec W = chart_lift(zeta, chart);
  return u_dot_at(f, t, W / W.norm());
}

Estimate integrate_rule(const CpnRule& rule, const std::function<double(const CVec&)>& g) {
  std::vector<double> vals(rule.size());
  parallel_for(rule.size(), [&](std::size_t i) { vals[i] = g(rule.points[i]); });
  return rule.integrate(vals);
}

void finish(Trace& tr) {
  tr.limit = extrapolate_limit(tr.grid, tr.values);
  tr.limit.uncertainty = std::max(tr.limit.uncertainty, 3.0 * tr.std_error.back());
}

}  // namespace

Trace lelong_by_slope(const FunctionSpec& f, int n, const std::vector<double>& t_grid,
                      const IntegrationScheme& scheme, double delta) {
  check_dimension(f, n);
  require_invariant(f);
  require_t_grid(t_grid);
  if (!(delta > 0)) throw InvalidArgument("delta must be positive");
  Trace tr;
  tr.grid = t_grid;
  double norm = 1.0 / std::pow(kPi, n);
  for (double t : t_grid) {
    CpnRule rule = make_cpn_rule(n, scheme, default_depth(t - delta));
    Estimate e = integrate_rule(rule, [&](const CVec& w) {
      return norm * (eval_scaled(f, t, w).value - eval_scaled(f, t - delta, w).value) / delta;
    });
    tr.values.push_back(e.value);
    tr.std_error.push_back(e.std_error);
  }
  finish(tr);
  return tr;
}

Trace lelong_by_I(const FunctionSpec& f, int n, const std::vector<double>& t_grid,
                  const IntegrationScheme& scheme, int p) {
  check_dimension(f, n);
  require_invariant(f);
  require_t_grid(t_grid);
  if (p < 1 || p > n + 1) throw InvalidArgument("p must lie in 1..n+1");
  Trace tr;
  tr.grid = t_grid;
  double norm = 1.0 / std::pow(kPi, n);
  for (double t : t_grid) {
    CpnRule rule = make_cpn_rule(n, scheme, default_depth(t));
    Estimate e = integrate_rule(rule, [&](const CVec& w) { return norm * std::pow(u_dot_at(f, t, w), p); });
    tr.values.push_back(e.value);
    tr.std_error.push_back(e.std_error);
  }
  finish(tr);
  return tr;
}

LelongEstimate lelong_number(const FunctionSpec& f, int n, const std::vector<double>& t_grid,
                             const IntegrationScheme& scheme) {
  LelongEstimate le;
  le.slope_trace = lelong_by_slope(f, n, t_grid, scheme);
  le.I_trace = lelong_by_I(f, n, t_grid, scheme, 1);
  le.by_slope = le.slope_trace.limit.value;
  le.by_slope_uncertainty = le.slope_trace.limit.uncertainty;
  le.by_I = le.I_trace.limit.value;
  le.by_I_uncertainty = le.I_trace.limit.uncertainty;
  return le;
}

Trace directional_lelong(const FunctionSpec& f, const CVec& zeta, int chart,
                         const std::vector<double>& t_grid) {
  require_invariant(f);
  require_t_grid(t_grid);
  Trace tr;
  tr.grid = t_grid;
  for (double t : t_grid) {
    tr.values.push_back(u_dot_chart(f, t, zeta, chart));
    tr.std_error.push_back(0.0);
  }
  finish(tr);
  return tr;
}

Trace directional_lelong(const FunctionSpec& f, const CVec& zeta, int chart, double t_min) {
  if (!(t_min <= -8.0)) throw InvalidArgument("t_min must be <= -8");
  return directional_lelong(f, zeta, chart, {t_min / 8, t_min / 4, t_min / 2, t_min});
}

MaxDirectional max_directional(const FunctionSpec& f, int n, double A, int grid_density,
                               std::uint64_t seed) {
  check_dimension(f, n);
  require_invariant(f);
  if (!(A >= 1.0)) throw InvalidArgument("A must be >= 1");
  if (grid_density < 1) throw InvalidArgument("grid_density must be positive");
  double t = -A;
  int d = n + 1;
  std::vector<CVec> pts;
  for (int j = 0; j < d; ++j) pts.push_back(CVec::Unit(d, j));
  Stream rng(seed, 0x4d41);
  for (int i = 0; i < grid_density; ++i) {
    CVec z(d);
    for (int j = 0; j < d; ++j) z(j) = cplx(rng.normal(), rng.normal());
    pts.push_back(z / z.norm());
  }
  std::vector<double> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { vals[i] = u_dot_at(f, t, pts[i]); });
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::size_t K = std::min<std::size_t>(8, pts.size());
  std::partial_sort(order.begin(), order.begin() + K, order.end(),
                    [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });

  struct Cand {
    CVec zeta;
    int chart;
    double val;
    double before_last;
  };
  std::vector<Cand> cands(K);
  parallel_for(K, [&](std::size_t ci) {
    const CVec& z = pts[order[ci]];
    Cand c{CVec(), argmax_chart(z), vals[order[ci]], vals[order[ci]]};
    c.zeta = chart_coords(z, c.chart);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int round = 0; round < 3; ++round) {
      c.before_last = c.val;
      double h = 0.2 * std::pow(0.2, round);
      for (int coord = 0; coord < 2 * n; ++coord) {
        auto at = [&](double x) {
          CVec zz = c.zeta;
          cplx& e = zz(coord / 2);
          e = coord % 2 == 0 ? cplx(x, e.imag()) : cplx(e.real(), x);
          return std::make_pair(u_dot_chart(f, t, zz, c.chart), zz);
        };
        double x0 = coord % 2 == 0 ? c.zeta(coord / 2).real() : c.zeta(coord / 2).imag();
        double lo = x0 - h, hi = x0 + h;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = at(x1).first, f2 = at(x2).first;
        for (int it = 0; it < 30; ++it) {
          if (f1 > f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = at(x1).first;
          } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = at(x2).first;
          }
        }
        auto best = at(0.5 * (lo + hi));
        if (best.first > c.val) {
          c.val = best.first;
          c.zeta = best.second;
        }
      }
    }
    cands[ci] = c;
  });
  MaxDirectional out;
  out.value = -std::numeric_limits<double>::infinity();
  for (auto& c : cands)
    if (c.val > out.value) {
      out.value = c.val;
      out.gap = c.val - c.before_last;
      out.zeta = c.zeta;
      out.chart = c.chart;
    }
  return out;
}

DirectionalProfile directional_profile(const FunctionSpec& f, int n, const std::vector<double>& A_grid,
                                       int grid_density, std::uint64_t seed) {
  if (A_grid.size() < 3) throw InsufficientData("A grid needs at least 3 points");
  DirectionalProfile p;
  p.A_grid = A_grid;
  for (std::size_t i = 0; i < A_grid.size(); ++i) {
    if (i && !(A_grid[i] > A_grid[i - 1])) throw InvalidArgument("A grid must be increasing");
    MaxDirectional m = max_directional(f, n, A_grid[i], grid_density, seed);
    p.M_values.push_back(m.value);
    p.gaps.push_back(m.gap);
  }
  Limit L = lambda_extrapolate(p);
  p.lambda = L.value;
  p.uncertainty = L.uncertainty;
  return p;
}

Limit lambda_extrapolate(const DirectionalProfile& profile) {
  if (profile.A_grid.size() < 3) throw InsufficientData("lambda needs at least 3 A values");
  std::vector<double> ts;
  for (double A : profile.A_grid) ts.push_back(-A);
  Limit L = extrapolate_limit(ts, profile.M_values);
  double mmin = *std::min_element(profile.M_values.begin(), profile.M_values.end());
  L.value = std::clamp(L.value, 0.0, mmin);
  double g = profile.gaps.empty() ? 0.0 : *std::max_element(profile.gaps.begin(), profile.gaps.end());
  L.uncertainty = std::max(L.uncertainty, g);
  return L;
}

Functionals functionals_I(const FunctionSpec& f, int n, double t, const IntegrationScheme& scheme) {
  check_dimension(f, n);
  require_invariant(f);
  if (t > -1.0) throw InvalidArgument("t must be <= -1");
  CpnRule rule = make_cpn_rule(n, scheme, default_depth(t));
  Functionals out;
  out.I = integrate_rule(rule, [&](const CVec& w) { return u_dot_at(f, t, w); });
  out.calI = integrate_rule(rule, [&](const CVec& w) { return eval_scaled(f, t, w).value; });
  const double h = 1e-3;
  Estimate d = integrate_rule(rule, [&](const CVec& w) {
    return (eval_scaled(f, t + h, w).value - eval_scaled(f, t - h, w).value) / (2.0 * h);
  });
  out.dcalI_dt = d.value;
  return out;
}

Verdict infimum_gap_check(const FunctionSpec& f, const InfimumGapOptions& opt) {
  check_dimension(f, opt.n);
  require_invariant(f);
  if (!(1.0 < opt.A1 && opt.A1 < opt.A2)) throw InvalidArgument("need 1 < A1 < A2");
  int d = opt.n + 1;
  std::vector<CVec> pts;
  for (int j = 0; j < d; ++j) pts.push_back(CVec::Unit(d, j));
  Stream rng(opt.seed, 0x494e46);
  for (int i = 0; i < opt.sphere_samples; ++i) {
    CVec z(d);
    for (int j = 0; j < d; ++j) z(j) = cplx(rng.normal(), rng.normal());
    pts.push_back(z / z.norm());
  }
  auto inf_on = [&](double A) {
    double m = std::numeric_limits<double>::infinity();
    for (auto& w : pts) m = std::min(m, eval_scaled(f, -A, w).value);
    return m;
  };
  const int nodes = 8;
  double integral = 0.0, prev = 0.0;
  double h = (opt.A2 - opt.A1) / (nodes - 1);
  for (int i = 0; i < nodes; ++i) {
    MaxDirectional m = max_directional(f, opt.n, opt.A1 + i * h, opt.grid_density, opt.seed);
    double M = m.value + m.gap;
    if (i) integral += 0.5 * h * (prev + M);
    prev = M;
  }
  double lhs = -inf_on(opt.A2);
  double rhs = integral - inf_on(opt.A1);
  Verdict v;
  v.name = "infimum_gap";
  v.tolerance = opt.tolerance;
  v.residual = std::max(0.0, lhs - rhs);
  v.pass = rhs - lhs >= -opt.tolerance;
  std::ostringstream os;
  os << "lhs=" << lhs << " rhs=" << rhs;
  v.witness = os.str();
  return v;
}

std::vector<Verdict> monotonicity_suite(const FunctionSpec& f, int n, const IntegrationScheme& scheme,
                                        const MonotonicityOptions& opt) {
  check_dimension(f, n);
  require_invariant(f);
  require_t_grid(opt.t_grid);
  for (std::size_t i = 1; i < opt.A_grid.size(); ++i)
    if (!(opt.A_grid[i] > opt.A_grid[i - 1])) throw InvalidArgument("A grid must be strictly increasing");
  // Ascending t from here on.
  std::vector<double> ts(opt.t_grid.rbegin(), opt.t_grid.rend());
  const std::size_t m = ts.size();
  auto describe = [](const char* what, double t) {
    std::ostringstream os;
    os << what << " at t=" << t;
    return os.str();
  };
  std::vector<Verdict> out;

  {
    Verdict v{"boundary_mass_monotone", true, 0.0, 0.0, ""};
    std::vector<BoundaryMass> bm;
    for (double t : ts) bm.push_back(boundary_mass(f, n, t, scheme));
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const Estimate& a = bm[i].total;
      const Estimate& b = bm[i + 1].total;
      double floor = (scheme.kind == SchemeKind::tensor ? opt.tensor_floor : 1e-9) *
                     std::max({1.0, std::abs(a.value), std::abs(b.value)});
      double tol = 3.0 * std::hypot(a.std_error, b.std_error) + floor;
      double drop = a.value - b.value;
      if (drop - tol > v.residual - v.tolerance || v.witness.empty()) {
        v.residual = std::max(0.0, drop);
        v.tolerance = tol;
        v.witness = describe("largest decrease", ts[i + 1]);
      }
      if (drop > tol) v.pass = false;
    }
    out.push_back(v);
  }

  CpnRule rule = make_cpn_rule(n, scheme, default_depth(ts.front()));
  std::vector<double> I(m), calI(m), I_err(m);
  for (std::size_t j = 0; j < m; ++j) {
    Estimate e = integrate_rule(rule, [&](const CVec& w) { return u_dot_at(f, ts[j], w); });
    I[j] = e.value;
    I_err[j] = e.std_error;
    calI[j] = integrate_rule(rule, [&](const CVec& w) { return eval_scaled(f, ts[j], w).value; }).value;
  }
  {
    Verdict v{"I_nonnegative_nondecreasing", true, 0.0, 0.0, ""};
    double scale = 1e-9 * std::max(1.0, *std::max_element(I.begin(), I.end()));
    v.tolerance = scale;
    for (std::size_t j = 0; j < m; ++j) {
      double neg = -I[j];
      double drop = j + 1 < m ? I[j] - I[j + 1] : 0.0;
      double worst = std::max(neg, drop);
      if (worst > v.residual) {
        v.residual = worst;
        v.witness = describe(neg >= drop ? "negative I" : "decrease of I", ts[j]);
      }
    }
    v.pass = v.residual <= v.tolerance;
    out.push_back(v);
  }
  {
    Verdict v{"calI_convex", true, 0.0, 0.0, ""};
    double scale = 1.0;
    for (double x : calI) scale = std::max(scale, std::abs(x));
    v.tolerance = 1e-6 * scale;
    for (std::size_t j = 0; j + 2 < m; ++j) {
      double s1 = (calI[j + 1] - calI[j]) / (ts[j + 1] - ts[j]);
      double s2 = (calI[j + 2] - calI[j + 1]) / (ts[j + 2] - ts[j + 1]);
      if (s1 - s2 > v.residual) {
        v.residual = s1 - s2;
        v.witness = describe("concave kink", ts[j + 1]);
      }
    }
    v.pass = v.residual <= v.tolerance;
    out.push_back(v);
  }
  {
    Verdict v{"M_A_nonincreasing", true, 0.0, 0.0, ""};
    std::vector<MaxDirectional> M;
    for (double A : opt.A_grid) M.push_back(max_directional(f, n, A, opt.grid_density, scheme.seed));
    for (std::size_t i = 0; i + 1 < M.size(); ++i) {
      double tol = 1e-9 + M[i].gap + M[i + 1].gap;
      double rise = M[i + 1].value - M[i].value;
      if (rise - tol > v.residual - v.tolerance || v.witness.empty()) {
        v.residual = std::max(0.0, rise);
        v.tolerance = tol;
        std::ostringstream os;
        os << "largest increase at A=" << opt.A_grid[i + 1];
        v.witness = os.str();
      }
      if (rise > tol) v.pass = false;
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace mamass

