#pragma once

#include <cstdint>
#include <vector>

#include "mamass/functions.hpp"
#include "mamass/quadrature.hpp"

namespace mamass {

// Generalized eigenvalues of H against G (ascending), via Cholesky congruence.
// Throws NotPositiveDefinite when G is not.
RVec generalized_eigs(const CMat& G, const CMat& H);

// [k!(n-k)!/n!] sigma_k(lambda).
double ratio_from_eigs(const RVec& lambda, int k);

// omega^{n-k} ^ Theta^k = ratio * omega^n for forms with coefficient
// matrices G (PD) and H: returns [k!(n-k)!/n!] sigma_k(eig(G^{-1} H)).
double mixed_wedge_ratio(const CMat& G, const CMat& H, int k);

// Transversal data on every node of a CP^n rule at fixed t.
struct TransversalSweep {
  int n = 0;
  double t = 0.0;
  CpnRule rule;
  std::vector<double> u_t;
  std::vector<double> u_dot;
  std::vector<RVec> eigs;  // generalized eigenvalues of H against G
};

// Throws InvalidArgument for t > -1 and NotInvariant for non-invariant specs.
TransversalSweep sweep_transversal(const FunctionSpec& f, int n, double t,
                                   const IntegrationScheme& scheme, std::uint64_t stream = 0);

struct BoundaryMass {
  Estimate total;
  std::vector<Estimate> per_k;  // normalized summands, k = 0..n
};

// pi^{-n} sum_k C(n+1,k) \int u_dot^{n+1-k} ratio_k(G, H) omega^n.
BoundaryMass boundary_mass(const FunctionSpec& f, int n, double t, const IntegrationScheme& scheme);
BoundaryMass boundary_mass_from(const TransversalSweep& sw);

// pi^{-n} sum_k C(n+1,k+1) (-1)^k \int u_dot^{k+1} ratio_{n-k}(G, u_dot G + H) omega^n.
BoundaryMass boundary_mass_alternating(const FunctionSpec& f, int n, double t,
                                       const IntegrationScheme& scheme);
BoundaryMass boundary_mass_alternating_from(const TransversalSweep& sw);

// \int u_dot^{n+1-k} ratio_k(G, u_dot G + H) omega^n for k = 0..n (not normalized).
std::vector<Estimate> theta_terms(const TransversalSweep& sw);

// \int u_dot^{n+1-k} ratio_k(G, H) omega^n for k = 0..n (not normalized).
std::vector<Estimate> transversal_terms(const TransversalSweep& sw);

// pi^{-(n+1)} \int_{t1 < log|z| < t2} (i ddbar u)^{n+1}, from the ambient
// Hessian determinant alone.
Estimate shell_oracle(const FunctionSpec& f, int n, double t1, double t2,
                      const IntegrationScheme& scheme);

struct PositivityOptions {
  int n = 1;
  std::vector<double> t_grid{-2.0, -5.0, -10.0, -20.0};
  long samples = 10000;
  std::uint64_t seed = 1;
  double tolerance = 1e-6;
  // Force the check on non-invariant specs (fault injection); their
  // transversal data are then computed as if the function were invariant.
  bool force = false;
};

// Smallest generalized eigenvalue of u_dot G + H against G over sampled
// (t, zeta), with half the chart points drawn near coordinate axes.
Verdict positivity_check(const FunctionSpec& f, const PositivityOptions& opt);

struct BoundaryMassTrace {
  std::vector<double> t_grid;
  std::vector<double> mass;
  std::vector<std::vector<double>> per_k;
  std::vector<double> std_error;
};

struct ResidualMass {
  double tau = 0.0;
  double uncertainty = 0.0;
  BoundaryMassTrace trace;
};

ResidualMass residual_mass(const FunctionSpec& f, int n, const std::vector<double>& t_grid,
                           const IntegrationScheme& scheme);
// Same from precomputed sweeps (ordered along the t grid).
ResidualMass residual_mass_from(const std::vector<TransversalSweep>& sweeps);

// Binomial coefficient as a double (exact for the small arguments used here).
double binom(int n, int k);

}  // namespace mamass
