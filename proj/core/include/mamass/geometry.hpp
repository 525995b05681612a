#pragma once

#include <cstdint>
#include <vector>

#include "mamass/types.hpp"

namespace mamass {

using AmbientPoint = CVec;

// Cone coordinates: z = e^{t + i theta} (W / |W|), where W carries 1 in slot
// `chart` and the entries of zeta in the remaining slots (ascending order).
struct HopfPoint {
  double t = 0.0;
  double theta = 0.0;
  CVec zeta;
  int chart = 0;
};

// The complex dimension n of a chart point / ambient point.
inline int dim_of(const HopfPoint& p) { return static_cast<int>(p.zeta.size()); }

AmbientPoint hopf_to_ambient(const HopfPoint& p);

// Inverse of hopf_to_ambient with chart = argmax |z^j| (lowest index on ties).
// Throws ZeroPoint when z = 0.
HopfPoint ambient_to_hopf(const AmbientPoint& z);

int argmax_chart(const AmbientPoint& z);

// W = (1 at `chart`, zeta elsewhere), the affine lift of a chart point.
CVec chart_lift(const CVec& zeta, int chart);

// Chart coordinates of the line through z in the given chart.
CVec chart_coords(const AmbientPoint& z, int chart);

// Slot of C^{n+1} carried by the alpha-th chart coordinate.
inline int chart_slot(int alpha, int chart) { return alpha < chart ? alpha : alpha + 1; }

// Fubini-Study coefficients G with omega_FS = i G_{ab} dzeta^a ^ dzetabar^b,
// the complex Hessian of (1/2) log(1 + |zeta|^2).
CMat fs_metric_at(const CVec& zeta);

// Volume density of omega_FS^n against Lebesgue measure on the chart:
// omega^n = n! (1 + |zeta|^2)^{-(n+1)} dV.
double fs_volume_density(const CVec& zeta);

// cos(kappa_a) = 1 - 2|zeta^a|^2 / (1 + |zeta|^2). Throws OnAxis when some
// zeta^a vanishes (the coefficient list belongs to the angular chart).
std::vector<double> contact_form_coeffs(const CVec& zeta);

// Angular chart on {z^0 != 0}: z = r e^{i theta/2} rho(zeta) (1, zeta) / |(1, zeta)|
// with rho = prod_a exp(-i phi_a / 2). phi_a = arg zeta^a is taken on the
// branch nearest `phi_ref` (entrywise), which fixes the square roots locally.
AmbientPoint angular_chart_to_ambient(double t, double theta, const CVec& zeta,
                                      const RVec& phi_ref);

struct ContactCheckOptions {
  int n = 1;
  int samples = 64;
  std::uint64_t seed = 1;
  double axis_exclusion = 1e-3;
  double coefficient_perturbation = 0.0;
  double tolerance = 1e-6;
};

// Finite-difference verification of the contact structure on S^{2n+1}:
// the coefficient formula matches the pulled-back form (1/2) Im(zbar dz),
// eta(xi) = 1 for the Reeb field xi = 2 i z, i_xi d eta = 0, and
// d eta = omega_FS on the chart.
Verdict contact_selfcheck(const ContactCheckOptions& opt);

}  // namespace mamass
