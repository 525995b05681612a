#include "mamass/frames.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mamass/errors.hpp"
#include "mamass/geometry.hpp"

namespace mamass {

namespace {

CMat frame_vectors(const CVec& z, int pivot) {
  int m = static_cast<int>(z.size());
  double r = z.norm();
  CMat E = CMat::Zero(m, m);
  E.col(0) = z / r;
  cplx phase = z(pivot) / std::abs(z(pivot));
  int col = 1;
  for (int j = 0; j < m; ++j) {
    if (j == pivot) continue;
    CVec v = CVec::Zero(m);
    v(j) = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (int c = 0; c < col; ++c) v -= E.col(c).dot(v) * E.col(c);
    E.col(col) = v / v.norm();
    if (col > 0) E.col(col) *= phase;
    ++col;
  }
  return E;
}

void require_nonzero(const CVec& z) {
  if (z.size() < 2) throw DimensionMismatch("frames need at least two complex coordinates");
  if (!(z.norm() > 0.0)) throw ZeroPoint("frame at the origin");
}

// (1,0) and (0,1) derivatives of a field F along the complex vector v from
// real central differences: d_v F = (D_v - i D_{iv}) F / 2 and
// dbar_{vbar} F = (D_v + i D_{iv}) F / 2.
template <class Field>
auto holo_pair(const Field& F, const CVec& z, const CVec& v, double h) {
  using T = decltype(F(z));
  const cplx I(0.0, 1.0);
  T Dv = (F(z + h * v) - F(z - h * v)) / (2.0 * h);
  T Div = (F(z + (h * I) * v) - F(z - (h * I) * v)) / (2.0 * h);
  return std::make_pair(T(0.5 * (Dv - I * Div)), T(0.5 * (Dv + I * Div)));
}

double max_abs(const CMat& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

UnitaryFrame adapted_frame(const CVec& z) {
  require_nonzero(z);
  int p = 0;
  z.cwiseAbs().maxCoeff(&p);
  return adapted_frame(z, p);
}

UnitaryFrame adapted_frame(const CVec& z, int pivot) {
  require_nonzero(z);
  if (pivot < 0 || pivot >= z.size()) throw InvalidArgument("pivot out of range");
  if (z(pivot) == cplx(0.0)) throw InvalidArgument("pivot coordinate vanishes");
  UnitaryFrame F;
  F.base = z;
  F.pivot = pivot;
  F.a = frame_vectors(z, pivot).adjoint();
  return F;
}

FrameHessian frame_hessian(const FunctionSpec& f, const CVec& z) {
  check_dimension(f, static_cast<int>(z.size()) - 1);
  FrameHessian H;
  H.frame = adapted_frame(z);
  CMat E = H.frame.vectors();
  AmbientEval A = eval_ambient(f, z);
  int n = static_cast<int>(z.size()) - 1;
  double et = z.norm();
  H.t = std::log(et);
  H.components = E.transpose() * A.hess * E.conjugate();
  CVec u_A = E.transpose() * A.grad;  // u_A = (du)(e_A)
  H.u_0bar = std::conj(u_A(0));
  H.u_abar = u_A.tail(n).conjugate();
  const CMat& C = H.components;
  H.u_0_0bar = et * C(0, 0) - 0.5 * H.u_0bar;
  H.u_a_0bar = et * C.block(1, 0, n, 1);
  H.u_abar_0 = et * C.block(0, 1, 1, n).transpose();
  H.u_0_abar = H.u_abar_0 - 0.5 * H.u_abar;
  H.transversal = et * et * C.block(1, 1, n, n);
  return H;
}

FrameDerivatives frame_derivatives(const FunctionSpec& f, const CVec& z, double fd_step) {
  require_nonzero(z);
  int m = static_cast<int>(z.size());
  int n = m - 1;
  check_dimension(f, n);
  if (!(fd_step > 0.0)) throw InvalidArgument("fd_step must be positive");
  UnitaryFrame F0 = adapted_frame(z);
  int pivot = F0.pivot;
  CMat E = F0.vectors();
  double et = z.norm();
  double h = fd_step * et;

  // ubar(w)_B = (dbar u)(conj e_B(w)) = conj((du)(e_B(w))).
  auto ubar = [&](const CVec& w) -> CVec {
    CMat Ew = frame_vectors(w, pivot);
    return (Ew.transpose() * eval_ambient(f, w).grad).conjugate();
  };
  auto frame = [&](const CVec& w) -> CMat { return frame_vectors(w, pivot); };

  FrameDerivatives D;
  D.t = std::log(et);
  CVec u0 = ubar(z);
  D.u_0bar = u0(0);
  D.u_abar = u0.tail(n);
  D.u_a_0bar = CVec::Zero(n);
  D.u_abar_0 = CVec::Zero(n);
  D.u_abar_0bar = CVec::Zero(n);
  D.u_a_bbar = CMat::Zero(n, n);

  // d_{e_A} ubar and dbar_{e_A} ubar for every A; frame derivatives likewise.
  std::vector<CVec> d_ubar(m), db_ubar(m);
  std::vector<CMat> db_frame(m);
  for (int A = 0; A < m; ++A) {
    auto [d, db] = holo_pair(ubar, z, E.col(A), h);
    d_ubar[A] = d;
    db_ubar[A] = db;
    db_frame[A] = holo_pair(frame, z, E.col(A), h).second;
  }
  D.u_0_0bar = et * d_ubar[0](0);
  D.u_0bar_abar = et * db_ubar[0].tail(n);
  for (int a = 0; a < n; ++a) {
    D.u_a_0bar(a) = et * d_ubar[a + 1](0);
    // u_0 is the conjugate field of u_0bar, so dbar_{e_a} u_0 = conj(d_{e_a} u_0bar).
    D.u_abar_0(a) = std::conj(D.u_a_0bar(a));
    D.u_abar_0bar(a) = et * db_ubar[a + 1](0);
    for (int b = 0; b < n; ++b) {
      cplx conn = 0.0;
      for (int c = 0; c < n; ++c)
        conn += u0(c + 1) * std::conj(E.col(c + 1).dot(db_frame[a + 1].col(b + 1)));
      D.u_a_bbar(a, b) = et * (d_ubar[a + 1](b + 1) - conn);
    }
  }
  return D;
}

namespace {

struct Worst {
  double value = 0.0;
  std::string where;
  void take(double v, const std::string& w) {
    if (v > value || where.empty()) {
      value = v;
      where = w;
    }
  }
};

std::string index_name(const char* block, int a, int b) {
  std::ostringstream os;
  os << block << "(" << a << "," << b << ")";
  return os.str();
}

}  // namespace

Verdict hessian_decomposition_check(const FunctionSpec& f, const CVec& z, double fd_step) {
  FrameHessian FH = frame_hessian(f, z);
  FrameDerivatives D = frame_derivatives(f, z, fd_step);
  int n = static_cast<int>(z.size()) - 1;
  double et = z.norm();
  const CMat& C = FH.components;
  // ddbar u = e^{-t}(u_{0,0bar} + u_0bar/2) w0^w0bar + u_{abar,0} w0^thetabar_a
  //         + u_{a,0bar} theta_a^w0bar + e^t(u_0bar delta + u_{a bbar}) theta_a^thetabar_b,
  // rewritten in the omega coframe (theta = e^{-t} omega).
  CMat R = CMat::Zero(n + 1, n + 1);
  R(0, 0) = (D.u_0_0bar + 0.5 * D.u_0bar) / et;
  for (int a = 0; a < n; ++a) {
    R(0, a + 1) = D.u_abar_0(a) / et;
    R(a + 1, 0) = D.u_a_0bar(a) / et;
    for (int b = 0; b < n; ++b)
      R(a + 1, b + 1) = ((a == b ? D.u_0bar : cplx(0.0)) + D.u_a_bbar(a, b)) / et;
  }
  double scale = std::max(1.0, max_abs(C));
  Worst w;
  for (int A = 0; A <= n; ++A)
    for (int B = 0; B <= n; ++B) w.take(std::abs(R(A, B) - C(A, B)) / scale, index_name("C", A, B));
  // (1,1) commutation, compared on the scale of the e^t-weighted Hessian.
  double scale2 = std::max(1.0, et * max_abs(C));
  for (int a = 0; a < n; ++a) {
    cplx lhs = D.u_abar_0bar(a);
    cplx rhs = D.u_0bar_abar(a) + 0.5 * D.u_abar(a);
    w.take(std::abs(lhs - rhs) / scale2, index_name("commutation", a + 1, 0));
  }
  Verdict v;
  v.name = "hessian_decomposition";
  v.residual = w.value;
  v.tolerance = std::max(1e-5, 20.0 * fd_step);
  v.pass = v.residual <= v.tolerance;
  v.witness = "worst component " + w.where;
  return v;
}

Verdict restriction_check(const FunctionSpec& f, const CVec& z, double fd_step) {
  if (!f.invariant()) throw NotInvariant("'" + f.text + "' is not S^1-invariant");
  FrameHessian FH = frame_hessian(f, z);
  FrameDerivatives D = frame_derivatives(f, z, fd_step);
  int n = static_cast<int>(z.size()) - 1;
  double et = z.norm();
  const CMat& C = FH.components;
  double scale = std::max(1.0, et * et * max_abs(C));
  Worst w;
  // Restricted to the sphere: theta_a ^ thetabar_b block, and the couplings
  // theta_a ^ omega^0_0 and thetabar_b ^ omega^0_0 carried by d^T u_0bar.
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      cplx lhs = et * et * C(a + 1, b + 1);
      cplx rhs = et * ((a == b ? D.u_0bar : cplx(0.0)) + D.u_a_bbar(a, b));
      w.take(std::abs(lhs - rhs) / scale, index_name("transversal", a + 1, b + 1));
    }
    w.take(std::abs(et * et * C(a + 1, 0) - et * D.u_a_0bar(a)) / scale, index_name("coupling", a + 1, 0));
    w.take(std::abs(et * et * C(0, a + 1) - et * D.u_abar_0bar(a)) / scale, index_name("coupling", 0, a + 1));
  }
  // Bridge to the mass-module data at the Hopf point of z.
  int chart = argmax_chart(z);
  CVec zeta = chart_coords(z, chart);
  TransversalEval T = eval_transversal(f, std::log(et), zeta, chart);
  w.take(std::abs(T.u_dot - 2.0 * et * D.u_0bar) / std::max(1.0, std::abs(T.u_dot)), "u_dot");
  // theta^a = P^a_g dzeta^g on the section zeta -> e^t W / |W|.
  CVec W = chart_lift(zeta, chart);
  CMat Es = adapted_frame(et * W / W.norm()).vectors();
  CMat P(n, n);
  for (int a = 0; a < n; ++a)
    for (int g = 0; g < n; ++g) P(a, g) = std::conj(Es(chart_slot(g, chart), a + 1)) / W.norm();
  CMat Ms = et * et * (Es.transpose() * eval_ambient(f, et * W / W.norm()).hess * Es.conjugate()).block(1, 1, n, n);
  CMat pulled = P.transpose() * Ms * P.conjugate();
  const CMat& expected = T.Theta;
  double bscale = std::max(1.0, max_abs(expected));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      w.take(std::abs(pulled(a, b) - expected(a, b)) / bscale, index_name("bridge", a + 1, b + 1));
  Verdict v;
  v.name = "restriction";
  v.residual = w.value;
  v.tolerance = 1e-5;
  v.pass = v.residual <= v.tolerance;
  v.witness = "worst component " + w.where;
  return v;
}

Verdict antisymmetry_check(const CVec& z, double fd_step, const FrameMap& frame) {
  require_nonzero(z);
  if (!(fd_step > 0.0)) throw InvalidArgument("fd_step must be positive");
  int m = static_cast<int>(z.size());
  int pivot = adapted_frame(z).pivot;
  FrameMap map = frame ? frame : FrameMap([pivot](const CVec& w) { return frame_vectors(w, pivot); });
  CMat E = map(z);
  double h = fd_step * z.norm();
  Worst w;
  for (int d = 0; d < 2 * m; ++d) {
    CVec v = CVec::Zero(m);
    v(d / 2) = (d % 2 == 0) ? cplx(1.0) : cplx(0.0, 1.0);
    CMat dE = (map(z + h * v) - map(z - h * v)) / (2.0 * h);
    CMat omega = E.adjoint() * dE;  // omega^A_B(v) = e_A^* D_v e_B
    CMat defect = omega + omega.adjoint();
    std::ostringstream os;
    os << "direction " << d;
    w.take(max_abs(defect), os.str());
  }
  Verdict v;
  v.name = "antisymmetry";
  v.residual = w.value;
  v.tolerance = 20.0 * fd_step;
  v.pass = v.residual <= v.tolerance;
  v.witness = "worst " + w.where;
  return v;
}

}  // namespace mamass
