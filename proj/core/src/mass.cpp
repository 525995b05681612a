#include "mamass/mass.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mamass/errors.hpp"
#include "mamass/geometry.hpp"
#include "mamass/parallel.hpp"

namespace mamass {

namespace {

// Determinant of a Hermitian matrix whose entries may span hundreds of
// decades: factor out the diagonal so LU only sees an O(1) correlation matrix.
double hermitian_determinant(const CMat& H) {
  RVec d = H.diagonal().real();
  if ((d.array() > 0.0).all()) {
    RVec s = d.cwiseSqrt().cwiseInverse();
    CMat C = s.asDiagonal() * H * s.asDiagonal();
    return std::exp(d.array().log().sum()) * C.determinant().real();
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues().prod();
}

}  // namespace

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

RVec generalized_eigs(const CMat& G, const CMat& H) {
  Eigen::LLT<CMat> llt(G);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("G is not positive definite");
  CMat Linv = llt.matrixL().solve(CMat::Identity(G.rows(), G.cols()));
  CMat M = Linv * H * Linv.adjoint();
  M = 0.5 * (M + M.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMat> es(M, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double ratio_from_eigs(const RVec& lambda, int k) {
  int n = static_cast<int>(lambda.size());
  if (k < 0 || k > n) throw InvalidArgument("ratio index out of range");
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::min(i + 1, k); j >= 1; --j) e[j] += lambda(i) * e[j - 1];
  return e[k] / binom(n, k);
}

double mixed_wedge_ratio(const CMat& G, const CMat& H, int k) {
  if (k == 0) {
    generalized_eigs(G, H);  // still validates G
    return 1.0;
  }
  return ratio_from_eigs(generalized_eigs(G, H), k);
}

TransversalSweep sweep_transversal(const FunctionSpec& f, int n, double t,
                                   const IntegrationScheme& scheme, std::uint64_t stream) {
  check_dimension(f, n);
  if (!f.invariant()) throw NotInvariant("'" + f.text + "' is not S^1-invariant");
  if (!(t <= -1.0)) throw InvalidArgument("t must be <= -1");
  TransversalSweep sw;
  sw.n = n;
  sw.t = t;
  sw.rule = make_cpn_rule(n, scheme, default_depth(t), stream);
  std::size_t N = sw.rule.size();
  sw.u_t.assign(N, 0.0);
  sw.u_dot.assign(N, 0.0);
  sw.eigs.assign(N, RVec());
  parallel_for(N, [&](std::size_t i) {
    const CVec& z = sw.rule.points[i];
    int c = argmax_chart(z);
    try {
      TransversalEval T = eval_transversal(f, t, chart_coords(z, c), c);
      sw.u_t[i] = T.u_t;
      sw.u_dot[i] = T.u_dot;
      sw.eigs[i] = generalized_eigs(T.G, T.H);
      if (!std::isfinite(T.u_dot) || !sw.eigs[i].allFinite())
        throw EvalFailure("non-finite transversal data");
    } catch (const EvalFailure&) {
      throw;
    } catch (const std::exception& ex) {
      std::ostringstream os;
      os << ex.what() << " (t=" << t << ", node " << i << ")";
      throw EvalFailure(os.str());
    }
  });
  return sw;
}

namespace {

BoundaryMass assemble(const TransversalSweep& sw, bool alternating) {
  int n = sw.n;
  std::size_t N = sw.rule.size();
  double norm = 1.0 / std::pow(kPi, n);
  std::vector<std::vector<double>> terms(n + 1, std::vector<double>(N));
  std::vector<double> total(N);
  for (std::size_t i = 0; i < N; ++i) {
    double ud = sw.u_dot[i];
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
      double v;
      if (!alternating) {
        v = binom(n + 1, k) * std::pow(ud, n + 1 - k) * ratio_from_eigs(sw.eigs[i], k);
      } else {
        RVec theta = sw.eigs[i].array() + ud;
        v = binom(n + 1, k + 1) * ((k % 2) ? -1.0 : 1.0) * std::pow(ud, k + 1) *
            ratio_from_eigs(theta, n - k);
      }
      terms[k][i] = norm * v;
      acc += norm * v;
    }
    total[i] = acc;
  }
  BoundaryMass bm;
  bm.total = sw.rule.integrate(total);
  for (int k = 0; k <= n; ++k) bm.per_k.push_back(sw.rule.integrate(terms[k]));
  return bm;
}

}  // namespace

namespace {

std::vector<Estimate> power_terms(const TransversalSweep& sw, bool theta) {
  int n = sw.n;
  std::size_t N = sw.rule.size();
  std::vector<Estimate> out;
  std::vector<double> vals(N);
  for (int k = 0; k <= n; ++k) {
    for (std::size_t i = 0; i < N; ++i) {
      double ud = sw.u_dot[i];
      RVec lam = theta ? RVec(sw.eigs[i].array() + ud) : sw.eigs[i];
      vals[i] = std::pow(ud, n + 1 - k) * ratio_from_eigs(lam, k);
    }
    out.push_back(sw.rule.integrate(vals));
  }
  return out;
}

}  // namespace

std::vector<Estimate> theta_terms(const TransversalSweep& sw) { return power_terms(sw, true); }
std::vector<Estimate> transversal_terms(const TransversalSweep& sw) { return power_terms(sw, false); }

BoundaryMass boundary_mass_from(const TransversalSweep& sw) { return assemble(sw, false); }
BoundaryMass boundary_mass_alternating_from(const TransversalSweep& sw) { return assemble(sw, true); }

BoundaryMass boundary_mass(const FunctionSpec& f, int n, double t, const IntegrationScheme& scheme) {
  return boundary_mass_from(sweep_transversal(f, n, t, scheme));
}

BoundaryMass boundary_mass_alternating(const FunctionSpec& f, int n, double t,
                                       const IntegrationScheme& scheme) {
  return boundary_mass_alternating_from(sweep_transversal(f, n, t, scheme));
}

Estimate shell_oracle(const FunctionSpec& f, int n, double t1, double t2,
                      const IntegrationScheme& scheme) {
  check_dimension(f, n);
  if (!(t1 < t2)) throw BadRadii("shell needs t1 < t2");
  double fact = 1.0;
  for (int k = 2; k <= n + 1; ++k) fact *= k;
  double pref = fact * std::pow(2.0, n + 1) / std::pow(kPi, n + 1);
  Estimate e = integrate_shell_scaled(
      [&](double t, const CVec& xi) {
        ScaledJet J = eval_scaled(f, t, xi);
        return hermitian_determinant(J.h);
      },
      n, t1, t2, scheme);
  e.value *= pref;
  e.std_error *= pref;
  return e;
}

Verdict positivity_check(const FunctionSpec& f, const PositivityOptions& opt) {
  check_dimension(f, opt.n);
  if (!opt.force && !f.invariant()) throw NotInvariant("'" + f.text + "' is not S^1-invariant");
  if (opt.t_grid.empty()) throw InvalidArgument("empty t grid");
  Verdict v;
  v.name = "positivity";
  v.tolerance = opt.tolerance;
  int n = opt.n;
  long per_t = std::max<long>(1000, (opt.samples + opt.t_grid.size() - 1) / opt.t_grid.size());
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t ti = 0; ti < opt.t_grid.size(); ++ti) {
    double t = opt.t_grid[ti];
    IntegrationScheme s;
    s.kind = SchemeKind::mcis;
    s.samples = per_t;
    s.seed = opt.seed;
    CpnRule rule = make_cpn_rule(n, s, default_depth(t), ti);
    std::vector<double> mins(rule.size());
    parallel_for(rule.size(), [&](std::size_t i) {
      const CVec& z = rule.points[i];
      int c = argmax_chart(z);
      TransversalEval T = eval_transversal(f, t, chart_coords(z, c), c, !opt.force);
      mins[i] = generalized_eigs(T.G, T.Theta)(0);
    });
    for (std::size_t i = 0; i < mins.size(); ++i)
      if (mins[i] < worst) {
        worst = mins[i];
        std::ostringstream os;
        os << "t=" << t << " z=(";
        for (int j = 0; j <= n; ++j) os << (j ? "," : "") << rule.points[i](j);
        os << ") eig=" << mins[i];
        v.witness = os.str();
      }
  }
  v.residual = std::max(0.0, -worst);
  v.pass = worst >= -opt.tolerance;
  return v;
}

ResidualMass residual_mass_from(const std::vector<TransversalSweep>& sweeps) {
  if (sweeps.empty()) throw InsufficientData("no sweeps");
  ResidualMass r;
  for (const auto& sw : sweeps) {
    BoundaryMass bm = boundary_mass_from(sw);
    r.trace.t_grid.push_back(sw.t);
    r.trace.mass.push_back(bm.total.value);
    r.trace.std_error.push_back(bm.total.std_error);
    std::vector<double> pk;
    for (auto& e : bm.per_k) pk.push_back(e.value);
    r.trace.per_k.push_back(pk);
  }
  Limit L = extrapolate_limit(r.trace.t_grid, r.trace.mass);
  r.tau = L.value;
  r.uncertainty = std::max(L.uncertainty, 3.0 * r.trace.std_error.back());
  return r;
}

ResidualMass residual_mass(const FunctionSpec& f, int n, const std::vector<double>& t_grid,
                           const IntegrationScheme& scheme) {
  std::vector<TransversalSweep> sweeps;
  for (double t : t_grid) sweeps.push_back(sweep_transversal(f, n, t, scheme));
  return residual_mass_from(sweeps);
}

}  // namespace mamass
