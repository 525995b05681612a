#include "mamass/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mamass/errors.hpp"
#include "mamass/geometry.hpp"
#include "mamass/mass.hpp"
#include "mamass/parallel.hpp"

namespace mamass {

namespace {

void require_t(double t) {
  if (!(t <= -1.0)) throw InvalidArgument("energy functionals need t <= -1");
}

double combined(double a, double b) { return std::sqrt(a * a + b * b); }

// Boundary mass with an error bar. Random rules report their standard error;
// the tensor rule is rerun at twice the panel order and the change is used.
BoundaryMass mass_with_error(const FunctionSpec& f, int n, double t, const IntegrationScheme& scheme) {
  if (scheme.kind != SchemeKind::tensor) return boundary_mass(f, n, t, scheme);
  IntegrationScheme fine = scheme;
  fine.chart_order *= 2;
  BoundaryMass coarse = boundary_mass(f, n, t, scheme);
  BoundaryMass bm = boundary_mass(f, n, t, fine);
  bm.total.std_error = std::abs(bm.total.value - coarse.total.value);
  for (std::size_t k = 0; k < bm.per_k.size(); ++k)
    bm.per_k[k].std_error = std::abs(bm.per_k[k].value - coarse.per_k[k].value);
  return bm;
}

}  // namespace

std::vector<Estimate> energy_terms(const FunctionSpec& f, int n, double t,
                                   const IntegrationScheme& scheme) {
  require_t(t);
  return transversal_terms(sweep_transversal(f, n, t, scheme));
}

Estimate pluricomplex_energy(const FunctionSpec& f, int n, double t, const IntegrationScheme& scheme) {
  require_t(t);
  TransversalSweep sw = sweep_transversal(f, n, t, scheme);
  std::vector<double> vals(sw.rule.size());
  for (std::size_t i = 0; i < vals.size(); ++i)
    vals[i] = -sw.u_t[i] * ratio_from_eigs(sw.eigs[i], n);
  return sw.rule.integrate(vals);
}

EnergyTrace energy_trace(const FunctionSpec& f, int n, const std::vector<double>& t_grid,
                         const IntegrationScheme& scheme) {
  EnergyTrace tr;
  tr.t_grid = t_grid;
  for (double t : t_grid) {
    require_t(t);
    TransversalSweep sw = sweep_transversal(f, n, t, scheme);
    tr.E.push_back(transversal_terms(sw));
    BoundaryMass bm = boundary_mass_from(sw);
    tr.M_prime.push_back({bm.total.value / kPi, bm.total.std_error / kPi, bm.total.samples_used});
    std::vector<double> vals(sw.rule.size());
    for (std::size_t i = 0; i < vals.size(); ++i)
      vals[i] = -sw.u_t[i] * ratio_from_eigs(sw.eigs[i], n);
    tr.calE.push_back(sw.rule.integrate(vals));
  }
  return tr;
}

Verdict energy_consistency_check(const FunctionSpec& f, int n, double t,
                                 const IntegrationScheme& scheme) {
  require_t(t);
  TransversalSweep sw = sweep_transversal(f, n, t, scheme);
  std::vector<Estimate> E = transversal_terms(sw);
  BoundaryMass bm = boundary_mass_from(sw);
  double norm = 1.0 / std::pow(kPi, n);
  double sum = 0.0, var = 0.0;
  for (int k = 0; k <= n; ++k) {
    double c = binom(n + 1, k) * norm;
    sum += c * E[k].value;
    var += c * c * E[k].std_error * E[k].std_error;
  }
  Verdict v;
  v.name = "energy_consistency";
  v.residual = std::abs(sum - bm.total.value);
  v.tolerance = 3.0 * combined(std::sqrt(var), bm.total.std_error) + 1e-8 * std::max(1.0, std::abs(sum));
  v.pass = v.residual <= v.tolerance;
  std::ostringstream os;
  os << "t=" << t << " energy sum=" << sum << " boundary mass=" << bm.total.value;
  v.witness = os.str();
  return v;
}

Verdict energy_derivative_check(const FunctionSpec& f, int n, double t,
                                const IntegrationScheme& scheme, double h) {
  require_t(t + h);
  check_dimension(f, n);
  if (!f.invariant()) throw NotInvariant("'" + f.text + "' is not S^1-invariant");
  if (!(h > 0.0)) throw InvalidArgument("step must be positive");
  CpnRule rule = make_cpn_rule(n, scheme, default_depth(t));
  std::size_t N = rule.size();
  std::vector<double> defect(N), scale(N);
  parallel_for(N, [&](std::size_t i) {
    const CVec& z = rule.points[i];
    int c = argmax_chart(z);
    CVec zeta = chart_coords(z, c);
    auto energy_density = [&](double s) {
      TransversalEval T = eval_transversal(f, s, zeta, c);
      return -T.u_t * mixed_wedge_ratio(T.G, T.H, n);
    };
    TransversalEval T = eval_transversal(f, t, zeta, c);
    double top = (n + 1) * T.u_dot * mixed_wedge_ratio(T.G, T.H, n);
    double deriv = (energy_density(t + h) - energy_density(t - h)) / (2.0 * h);
    defect[i] = top + deriv;
    scale[i] = std::abs(top);
  });
  Estimate d = rule.integrate(defect);
  Estimate s = rule.integrate(scale);
  Verdict v;
  v.name = "energy_derivative";
  v.residual = std::abs(d.value);
  v.tolerance = 1e-3 * s.value + 3.0 * d.std_error + 1e-12;
  v.pass = v.residual <= v.tolerance;
  std::ostringstream os;
  os << "t=" << t << " (n+1)E_nn + dE/dt=" << d.value << " +- " << d.std_error << " scale=" << s.value;
  v.witness = os.str();
  return v;
}

std::string to_string(ConcavityShape s) {
  switch (s) {
    case ConcavityShape::affine: return "affine";
    case ConcavityShape::concave: return "concave";
    case ConcavityShape::not_concave: return "not_concave";
  }
  return "unknown";
}

ConcavityResult concavity_check(const FunctionSpec& f, int n, const std::vector<double>& t_grid,
                                const IntegrationScheme& scheme) {
  if (t_grid.size() < 4) throw InsufficientData("concavity needs at least 4 t values");
  ConcavityResult r;
  r.t_sorted = t_grid;
  std::sort(r.t_sorted.begin(), r.t_sorted.end());
  if (std::adjacent_find(r.t_sorted.begin(), r.t_sorted.end()) != r.t_sorted.end())
    throw InvalidArgument("repeated t value");
  std::size_t m = r.t_sorted.size();
  std::vector<double> mass(m), err(m);
  for (std::size_t i = 0; i < m; ++i) {
    require_t(r.t_sorted[i]);
    BoundaryMass bm = mass_with_error(f, n, r.t_sorted[i], scheme);
    mass[i] = bm.total.value;
    err[i] = bm.total.std_error;
  }
  r.primitive.assign(m, 0.0);
  for (std::size_t i = m - 1; i-- > 0;)
    r.primitive[i] = r.primitive[i + 1] + 0.5 * (mass[i] + mass[i + 1]) * (r.t_sorted[i + 1] - r.t_sorted[i]);
  // Slope of the primitive on interval i is -(mass_i + mass_{i+1}) / 2.
  bool flat = true, concave = true;
  double worst = -INFINITY, worst_tol = 0.0;
  std::size_t worst_i = 0;
  for (std::size_t i = 0; i + 2 < m; ++i) {
    double step = -0.5 * (mass[i + 2] - mass[i]);
    double tol = 1.5 * combined(err[i], err[i + 2]) + 1e-9 * std::max(1.0, std::abs(mass[i]));
    r.slope_steps.push_back(step);
    r.step_tolerance.push_back(tol);
    if (std::abs(step) > tol) flat = false;
    if (step > tol) concave = false;
    if (step - tol > worst - worst_tol) {
      worst = step;
      worst_tol = tol;
      worst_i = i;
    }
  }
  r.shape = !concave ? ConcavityShape::not_concave
                     : (flat ? ConcavityShape::affine : ConcavityShape::concave);
  r.verdict.name = "concavity";
  r.verdict.pass = concave;
  r.verdict.residual = worst;
  r.verdict.tolerance = worst_tol;
  std::ostringstream os;
  os << to_string(r.shape) << "; largest slope step " << worst << " between t=" << r.t_sorted[worst_i]
     << " and t=" << r.t_sorted[worst_i + 2];
  r.verdict.witness = os.str();
  return r;
}

Verdict zero_mass_energy_check(const FunctionSpec& f, int n, const std::vector<double>& t_grid,
                               const IntegrationScheme& scheme) {
  if (t_grid.size() < 2) throw InsufficientData("zero-mass check needs at least 2 t values");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] < t_grid[i - 1])) throw InvalidArgument("t grid must be strictly decreasing");
  std::vector<double> mass, mass_err, upper, upper_err;
  for (double t : t_grid) {
    require_t(t);
    BoundaryMass bm = mass_with_error(f, n, t, scheme);
    double s = 0.0, var = 0.0;
    for (int k = 1; k <= n; ++k) {
      s += bm.per_k[k].value;
      var += bm.per_k[k].std_error * bm.per_k[k].std_error;
    }
    mass.push_back(bm.total.value);
    mass_err.push_back(bm.total.std_error);
    upper.push_back(std::abs(s));
    upper_err.push_back(std::sqrt(var));
  }
  Verdict v;
  v.name = "zero_mass_energy";
  v.tolerance = 1e-2;
  std::ostringstream os;
  for (std::size_t i = 1; i < mass.size(); ++i) {
    double tol_m = 3.0 * combined(mass_err[i], mass_err[i - 1]) + 1e-9;
    double tol_u = 3.0 * combined(upper_err[i], upper_err[i - 1]) + 1e-9;
    if (mass[i] > mass[i - 1] + tol_m) {
      v.pass = false;
      os << "boundary mass rises from " << mass[i - 1] << " to " << mass[i] << " at t=" << t_grid[i] << "; ";
    }
    if (upper[i] > upper[i - 1] + tol_u) {
      v.pass = false;
      os << "k>=1 energy part rises from " << upper[i - 1] << " to " << upper[i] << " at t=" << t_grid[i]
         << "; ";
    }
  }
  v.residual = std::max(mass.back(), upper.back());
  if (v.residual > v.tolerance) v.pass = false;
  os << "final t=" << t_grid.back() << " boundary mass=" << mass.back() << " +- " << mass_err.back()
     << " k>=1 part=" << upper.back();
  v.witness = os.str();
  return v;
}

}  // namespace mamass
