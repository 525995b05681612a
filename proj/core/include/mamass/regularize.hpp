#pragma once

#include <vector>

#include "mamass/functions.hpp"
#include "mamass/quadrature.hpp"
#include "mamass/types.hpp"

namespace mamass {

// Bump rho(w) = exp(-1/(1 - |w|^2)) / N on the unit ball of C^2 = R^4, and
// rho_eps(w) = eps^{-4} rho(w / eps).
struct Mollifier {
  double epsilon = 0.01;
  double normalization = 0.0;  // N = \int_{R^4} exp(-1/(1-|w|^2)) dV
};

Mollifier make_mollifier(double epsilon);

// N by tanh-sinh quadrature, cross-checked against adaptive Gauss-Kronrod,
// and \int rho = 1 through the product rule used for convolutions.
Verdict mollifier_selfcheck();

// Product rule on the unit ball of C^2: Gauss-Legendre in the radius and in
// s = sin^2 chi of the Hopf coordinates w = r (sqrt(1-s) e^{i a}, sqrt(s) e^{i b}),
// trapezoid in both angles. Weights are rescaled to sum to 1.
struct MollifyRule {
  int radial = 24;
  int polar = 8;
  int angular = 12;
};

// u_eps(z) with an error bar from the same rule at half order. Needs n = 1
// and |z| > 2 eps (TooCloseToOrigin).
Estimate mollify_at(const FunctionSpec& f, const CVec& z, double epsilon, const MollifyRule& rule = {});

// Convolution of the value, du/dz and d^2u/dz dzbar with rho_eps; these are
// the derivatives of u_eps. Needs |z| > eps only.
AmbientEval mollified_jet(const FunctionSpec& f, const CVec& z, double epsilon,
                          const MollifyRule& rule = {});

// |r d_r (u * rho_eps)(z) - r (d_r u * rho_eps)(z)|.
double friedrichs_defect(const FunctionSpec& f, const CVec& z, double epsilon,
                         const MollifyRule& rule = {});

struct FriedrichsOptions {
  double delta = 0.1;
  IntegrationScheme gradient_scheme{SchemeKind::mc, 200000, 1};
  MollifyRule rule{};
};

// friedrichs_defect <= 2 eps K at each point, with K an estimate of
// ||grad u||_{L^1(B_{1-delta})} by shell Monte Carlo. Points must satisfy
// 0 < |z| < 1 - 2 delta and eps < min(|z|, delta).
Verdict friedrichs_check(const FunctionSpec& f, const std::vector<CVec>& points, double epsilon,
                         const FriedrichsOptions& opt = {});

// M_B(u_eps) against 2 M_A(u) + C eps with C fitted over eps_list. The
// admissibility condition eps < (1/2) min(e^{-A} - e^{-B}, e^{-B}) is
// reported in the witness but not enforced.
Verdict mollified_slope_bound(const FunctionSpec& f, double A, double B,
                              const std::vector<double>& eps_list, const MollifyRule& rule = {16, 6, 8});

// Boundary mass of u_eps at t against that of u on the same nodes as eps
// decreases along eps_list: gaps must decrease and the last one must be
// within max(3 sigma, 1e-3) of the u_eps estimate (sigma vanishes for
// radial members). Needs n = 1, t <= -2 and e^t > 2 eps.
struct MassConvergence {
  Verdict verdict;
  Estimate mass;                 // boundary mass of u
  std::vector<Estimate> mollified;
  std::vector<double> gaps;
};

MassConvergence mass_convergence_check(const FunctionSpec& f, double t, const std::vector<double>& eps_list,
                                       const IntegrationScheme& scheme = {SchemeKind::mcis, 2000, 1},
                                       const MollifyRule& rule = {16, 6, 8});

}  // namespace mamass
