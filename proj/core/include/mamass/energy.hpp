#pragma once

#include <vector>

#include "mamass/functions.hpp"
#include "mamass/quadrature.hpp"
#include "mamass/types.hpp"

namespace mamass {

// E_{n,k}(t) = \int u_dot^{n+1-k} omega^{n-k} ^ (i ddbar_zeta u_t)^k, k = 0..n.
std::vector<Estimate> energy_terms(const FunctionSpec& f, int n, double t,
                                   const IntegrationScheme& scheme);

// Pluricomplex energy \int (-u_t) (i ddbar_zeta u_t)^n.
Estimate pluricomplex_energy(const FunctionSpec& f, int n, double t, const IntegrationScheme& scheme);

struct EnergyTrace {
  std::vector<double> t_grid;
  std::vector<std::vector<Estimate>> E;  // per t, k = 0..n
  std::vector<Estimate> M_prime;         // boundary mass / pi
  std::vector<Estimate> calE;
};

EnergyTrace energy_trace(const FunctionSpec& f, int n, const std::vector<double>& t_grid,
                         const IntegrationScheme& scheme);

// sum_k C(n+1,k) E_{n,k} / pi^n against the boundary mass from the mass
// module, within combined 3 sigma plus a 1e-8 relative floor.
Verdict energy_consistency_check(const FunctionSpec& f, int n, double t,
                                 const IntegrationScheme& scheme);

// (n+1) E_{n,n}(t) + d calE/dt = 0, with the derivative from a central
// difference of step h on a fixed rule. Tolerance is 1e-3 relative to the
// integral of |(n+1) u_dot ratio_n| plus 3 sigma of the combined integrand.
Verdict energy_derivative_check(const FunctionSpec& f, int n, double t,
                                const IntegrationScheme& scheme, double h = 1e-3);

// Shape of the primitive of -(boundary mass) along t.
enum class ConcavityShape { affine, concave, not_concave };
std::string to_string(ConcavityShape s);

struct ConcavityResult {
  Verdict verdict;
  ConcavityShape shape = ConcavityShape::concave;
  std::vector<double> t_sorted;     // ascending
  std::vector<double> primitive;    // trapezoid antiderivative of -mass, 0 at the largest t
  std::vector<double> slope_steps;  // successive slope changes of the primitive
  std::vector<double> step_tolerance;
};

// Needs at least 4 t values. A step within its tolerance counts as flat;
// all flat gives the affine shape. For the tensor rule the error bar of each
// mass is its change under doubling the panel order.
ConcavityResult concavity_check(const FunctionSpec& f, int n, const std::vector<double>& t_grid,
                                const IntegrationScheme& scheme);

// Zero-mass behaviour along t_grid (ordered toward -infinity): the boundary
// mass and the k >= 1 part of the energy sum decrease (within 3 sigma) and
// end below 1e-2. Error bars as in concavity_check.
Verdict zero_mass_energy_check(const FunctionSpec& f, int n, const std::vector<double>& t_grid,
                               const IntegrationScheme& scheme);

}  // namespace mamass
