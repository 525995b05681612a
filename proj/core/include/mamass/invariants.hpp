#pragma once

#include <cstdint>
#include <vector>

#include "mamass/functions.hpp"
#include "mamass/quadrature.hpp"

namespace mamass {

// Values along a decreasing t grid (or increasing A grid) and their limit.
struct Trace {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> std_error;
  Limit limit;
};

// Slope of spherical means in t: [S(e^t) - S(e^{t-delta})] / delta, computed
// with common sample points so the quadrature noise largely cancels.
Trace lelong_by_slope(const FunctionSpec& f, int n, const std::vector<double>& t_grid,
                      const IntegrationScheme& scheme, double delta = 0.25);

// pi^{-n} \int u_dot^p omega^n per t; its limit is nu^p.
Trace lelong_by_I(const FunctionSpec& f, int n, const std::vector<double>& t_grid,
                  const IntegrationScheme& scheme, int p = 1);

struct LelongEstimate {
  double by_slope = 0.0;
  double by_slope_uncertainty = 0.0;
  double by_I = 0.0;
  double by_I_uncertainty = 0.0;
  Trace slope_trace;
  Trace I_trace;
};

LelongEstimate lelong_number(const FunctionSpec& f, int n, const std::vector<double>& t_grid,
                             const IntegrationScheme& scheme);

// lim u_dot_t(zeta) as t -> -infinity along t_grid.
Trace directional_lelong(const FunctionSpec& f, const CVec& zeta, int chart,
                         const std::vector<double>& t_grid);
// Convenience form: grid t_min * {1/8, 1/4, 1/2, 1}.
Trace directional_lelong(const FunctionSpec& f, const CVec& zeta, int chart, double t_min);

struct MaxDirectional {
  double value = 0.0;  // best u_dot found (lower bound of the supremum)
  double gap = 0.0;    // refinement gap: improvement gained in the last ascent round
  CVec zeta;
  int chart = 0;
};

// sup_zeta u_dot_{-A}(zeta): covering sample of CP^n plus chart centres,
// refined by coordinate-wise golden-section ascent (3 rounds).
MaxDirectional max_directional(const FunctionSpec& f, int n, double A, int grid_density = 4096,
                               std::uint64_t seed = 1);

struct DirectionalProfile {
  std::vector<double> A_grid;
  std::vector<double> M_values;
  std::vector<double> gaps;
  double lambda = 0.0;
  double uncertainty = 0.0;
};

DirectionalProfile directional_profile(const FunctionSpec& f, int n, const std::vector<double>& A_grid,
                                       int grid_density = 4096, std::uint64_t seed = 1);

// Extrapolated lambda, clamped to [0, min M_A].
Limit lambda_extrapolate(const DirectionalProfile& profile);

struct Functionals {
  Estimate I;     // \int u_dot omega^n
  Estimate calI;  // \int u_t omega^n
  double dcalI_dt = 0.0;  // central difference of calI (step 1e-3)
};

Functionals functionals_I(const FunctionSpec& f, int n, double t, const IntegrationScheme& scheme);

struct InfimumGapOptions {
  int n = 1;
  double A1 = 2.0;
  double A2 = 6.0;
  int sphere_samples = 4096;
  int grid_density = 2048;
  std::uint64_t seed = 1;
  double tolerance = 1e-3;
};

// -inf_{S_{R2}} u <= \int_{A1}^{A2} M_T dT - inf_{S_{R1}} u with R_i = e^{-A_i};
// residual is the violation (lhs - rhs) when positive.
Verdict infimum_gap_check(const FunctionSpec& f, const InfimumGapOptions& opt);

struct MonotonicityOptions {
  std::vector<double> t_grid{-2.0, -4.0, -8.0, -16.0};  // strictly decreasing, t <= -1
  std::vector<double> A_grid{2.0, 4.0, 8.0, 16.0};      // strictly increasing
  int grid_density = 1024;
  double tensor_floor = 1e-6;  // relative error floor for tensor masses
};

// Monotonicity and convexity along a ray: boundary mass non-decreasing in t
// (3 sigma), I(u_t) >= 0 and non-decreasing, calI(u_t) with second
// differences >= -1e-6 scale, and M_A non-increasing in A up to the
// refinement gaps. I and calI share one rule across t so that pointwise
// monotonicity and convexity survive the quadrature.
std::vector<Verdict> monotonicity_suite(const FunctionSpec& f, int n, const IntegrationScheme& scheme,
                                        const MonotonicityOptions& opt = {});

}  // namespace mamass
