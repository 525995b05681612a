#pragma once

#include <functional>

#include "mamass/functions.hpp"
#include "mamass/types.hpp"

namespace mamass {

// Unitary frame at a point of C^{n+1} \ {0}. Row A of `a` holds the coframe
// coefficients: omega^A = a^A_B dz^B. The frame vectors are the columns of
// a^dagger; e_0 = z / |z|.
struct UnitaryFrame {
  CMat a;
  CVec base;
  int pivot = 0;  // coordinate dropped from the completion

  CMat vectors() const { return a.adjoint(); }
};

// Adapted frame: e_0 = z/|z|, then Gram-Schmidt on the standard basis with
// the pivot coordinate (largest |z^j|, or the one given) left out, each
// completion vector multiplied by the phase of z^pivot. The phase makes the
// frame equivariant under z -> e^{i theta} z. Throws ZeroPoint.
UnitaryFrame adapted_frame(const CVec& z);
UnitaryFrame adapted_frame(const CVec& z, int pivot);

// Coefficients of ddbar u in the coframe, C_{AB} with
// ddbar u = C_{AB} omega^A ^ conj(omega^B), plus the named parts under the
// normalization omega^0 = e^t (dt + omega^0_0), theta^a = e^{-t} omega^a.
struct FrameHessian {
  UnitaryFrame frame;
  double t = 0.0;
  CMat components;
  cplx u_0bar;        // (dbar u)(conj e_0)
  CVec u_abar;        // (dbar u)(conj e_a)
  cplx u_0_0bar;      // e^t C_{00} - u_0bar / 2
  CVec u_a_0bar;      // e^t C_{a0}
  CVec u_abar_0;      // e^t C_{0a}
  CVec u_0_abar;      // e^t C_{0a} - u_abar / 2
  CMat transversal;   // e^{2t} C_{ab} = e^t (u_0bar delta + u_{a bbar})
};

FrameHessian frame_hessian(const FunctionSpec& f, const CVec& z);

// Frame-derivative scalars from central differences of the fields
// w -> (dbar u)(conj e_A(w)) along the frame directions, with the pivot of
// the base point held fixed.
struct FrameDerivatives {
  double t = 0.0;
  cplx u_0bar;
  CVec u_abar;
  cplx u_0_0bar;     // e^t d_{e_0} u_0bar
  CVec u_a_0bar;     // e^t d_{e_a} u_0bar
  CVec u_abar_0;     // e^t dbar_{e_a} u_0
  CVec u_abar_0bar;  // e^t dbar_{e_a} u_0bar
  CVec u_0bar_abar;  // e^t dbar_{e_0} u_abar
  CMat u_a_bbar;     // covariant: e^t (d_{e_a} u_bbar - u_cbar conj(e_c^* dbar_{e_a} e_b))
};

FrameDerivatives frame_derivatives(const FunctionSpec& f, const CVec& z, double fd_step = 1e-5);

// Full decomposition of ddbar u from the frame derivatives against
// frame_hessian, and the (1,1) commutation
// u_{abar,0bar} = u_{0bar,abar} + u_abar / 2. Tolerance max(1e-5, 20 fd_step)
// relative to max(1, |C|).
Verdict hessian_decomposition_check(const FunctionSpec& f, const CVec& z, double fd_step = 1e-5);

// Restriction of i ddbar u to the sphere through z computed two ways
// (frame_hessian blocks and frame derivatives), and the bridge to the
// transversal data (u_dot, G, H) of the mass module at the matching Hopf
// point: u_dot = 2 e^t u_0bar, and pulled back to the chart by the section
// zeta -> e^t W / |W|, the block e^t (u_0bar delta + u_{a bbar}) of the theta
// coframe equals Theta = u_dot G + H.
// Needs an S^1-invariant f.
Verdict restriction_check(const FunctionSpec& f, const CVec& z, double fd_step = 1e-5);

// Frame vectors (columns) as a function of the point.
using FrameMap = std::function<CMat(const CVec& z)>;

// Connection matrices omega^A_B(v) = e_A^* D_v e_B along the 2n+2 real
// coordinate directions must be skew-Hermitian within 20 fd_step. The
// default frame map is the adapted frame with the base pivot held fixed.
Verdict antisymmetry_check(const CVec& z, double fd_step = 1e-5, const FrameMap& frame = {});

}  // namespace mamass
