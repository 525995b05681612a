#include "mamass/functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mamass/errors.hpp"
#include "mamass/geometry.hpp"
#include "mamass/rng.hpp"
#include "fd.hpp"

namespace mamass {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// u = kappa log sum_i exp(base_i + sum_k p_ik log|w^k|).
struct LogSum {
  double kappa = 0.5;
  std::vector<double> logc;               // log c_i
  std::vector<std::vector<double>> p;     // exponents p_ik
};

// p * log|w| with 0 * log 0 = 0; +inf signals a pole.
double logpow(double p, double lw) {
  if (p == 0.0) return 0.0;
  if (lw == kNegInf) return p > 0 ? kNegInf : std::numeric_limits<double>::infinity();
  return p * lw;
}

ScaledJet eval_logsum(const LogSum& ls, double s, const CVec& w) {
  int d = static_cast<int>(w.size());
  int terms = static_cast<int>(ls.p.size());
  std::vector<double> lw(d);
  CVec ph(d);
  for (int k = 0; k < d; ++k) {
    double r = std::abs(w(k));
    lw[k] = r > 0 ? std::log(r) : kNegInf;
    ph(k) = r > 0 ? w(k) / r : cplx(1.0, 0.0);
  }
  std::vector<double> lt(terms);
  double lmax = kNegInf;
  for (int i = 0; i < terms; ++i) {
    double v = ls.logc[i];
    for (int k = 0; k < d; ++k) v += ls.p[i][k] * s + logpow(ls.p[i][k], lw[k]);
    lt[i] = v;
    lmax = std::max(lmax, v);
  }
  if (lmax == kNegInf) throw OutsideDomain("every generator vanishes at this point");
  double sum = 0.0;
  for (int i = 0; i < terms; ++i) sum += std::exp(lt[i] - lmax);
  double logS = lmax + std::log(sum);

  // log of T_i / (|w^j| S)
  auto reduced = [&](int i, int j) {
    double v = ls.logc[i];
    for (int l = 0; l < d; ++l)
      v += ls.p[i][l] * s + logpow(ls.p[i][l] - (l == j ? 1.0 : 0.0), lw[l]);
    if (v == std::numeric_limits<double>::infinity())
      throw OutsideDomain("generator exponent below 1 on a vanishing coordinate");
    return v - logS;
  };

  ScaledJet J;
  J.value = ls.kappa * logS;
  CVec G = CVec::Zero(d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < terms; ++i) {
      double p = ls.p[i][j];
      if (p == 0.0) continue;
      G(j) += 0.5 * p * std::exp(reduced(i, j)) * std::conj(ph(j));
    }
  // Pairwise form: ddbar log S = 1/2 sum_{i,l} pi_i pi_l (a_i - a_l)(a_i - a_l)^*
  // with pi_i = T_i / S and a_ij = p_ij / (2 w^j); a sum of PSD rank-one terms,
  // so no cancellation between the two halves of the usual formula.
  CMat Hm = CMat::Zero(d, d);
  for (int i = 0; i < terms; ++i)
    for (int l = i + 1; l < terms; ++l) {
      for (int j = 0; j < d; ++j) {
        double dj = ls.p[i][j] - ls.p[l][j];
        if (dj == 0.0) continue;
        for (int k = 0; k < d; ++k) {
          double dk = ls.p[i][k] - ls.p[l][k];
          if (dk == 0.0) continue;
          double v = ls.logc[i] + ls.logc[l] - 2.0 * logS;  // pi_i pi_l / (|w^j||w^k|)
          for (int m = 0; m < d; ++m) {
            double e = (m == j ? 1.0 : 0.0) + (m == k ? 1.0 : 0.0);
            v += (ls.p[i][m] + ls.p[l][m]) * s + logpow(ls.p[i][m] + ls.p[l][m] - e, lw[m]);
          }
          if (v == std::numeric_limits<double>::infinity())
            throw OutsideDomain("generator exponent below 2 on a vanishing coordinate");
          Hm(j, k) += 0.25 * dj * dk * std::exp(v) * std::conj(ph(j)) * ph(k);
        }
      }
    }
  J.g = ls.kappa * G;
  J.h = ls.kappa * Hm;
  return J;
}

LogSum monomial_logsum(const FunctionSpec& f) {
  LogSum ls;
  ls.kappa = 0.5;
  for (std::size_t i = 0; i < f.m.size(); ++i) {
    ls.logc.push_back(std::log(f.w[i]));
    std::vector<double> row;
    for (int e : f.m[i]) row.push_back(2.0 * e);
    ls.p.push_back(row);
  }
  return ls;
}

LogSum lse_logsum(const FunctionSpec& f) {
  LogSum ls;
  ls.kappa = 1.0 / (2.0 * f.beta);
  int d = static_cast<int>(f.a.size());
  for (int j = 0; j < d; ++j) {
    ls.logc.push_back(0.0);
    std::vector<double> row(d, 0.0);
    row[j] = 2.0 * f.beta * f.a[j];
    ls.p.push_back(row);
  }
  return ls;
}

// Radial profile phi(log|z|).
ScaledJet eval_radial(double phi, double dphi, double ddphi, const CVec& w) {
  int d = static_cast<int>(w.size());
  ScaledJet J;
  J.value = phi;
  J.g = 0.5 * dphi * w.conjugate();
  CMat outer = w.conjugate() * w.transpose();  // (j,k) -> conj(w_j) w_k
  J.h = 0.5 * dphi * (CMat::Identity(d, d) - outer) + 0.25 * ddphi * outer;
  return J;
}

ScaledJet eval_loglinear(const CMat& A, double s, const CVec& w) {
  CVec v = A * w;
  double n2 = v.squaredNorm();
  if (!(n2 > 0)) throw OutsideDomain("A z vanishes");
  CVec b = A.transpose() * v.conjugate();  // b_j = sum_i conj(v_i) A_ij
  ScaledJet J;
  J.value = 0.5 * std::log(n2) + s;
  J.g = 0.5 * b / n2;
  CMat AtA = A.transpose() * A.conjugate();  // (j,k) -> sum_i A_ij conj(A_ik)
  J.h = 0.5 * (AtA / n2 - b * b.adjoint() / (n2 * n2));
  return J;
}

cplx cpow_int(cplx z, int e) {
  cplx r = 1.0;
  for (int i = 0; i < e; ++i) r *= z;
  return r;
}

// P = c z^alpha zbar^beta and its first/mixed derivatives, accumulated into
// (value, dP/dz^j, d^2P/dz^j dzbar^k).
void add_poly_monomial(cplx c, const std::vector<int>& al, const std::vector<int>& be, const CVec& z,
                       cplx& val, CVec& grad, CMat& hess) {
  int d = static_cast<int>(z.size());
  auto eval = [&](int dj, int dk) {
    cplx r = c;
    for (int l = 0; l < d; ++l) {
      int ea = al[l] - (l == dj ? 1 : 0);
      int eb = be[l] - (l == dk ? 1 : 0);
      if (ea < 0 || eb < 0) return cplx(0.0);
      r *= cpow_int(z(l), ea) * cpow_int(std::conj(z(l)), eb);
    }
    if (dj >= 0) r *= static_cast<double>(al[dj]);
    if (dk >= 0) r *= static_cast<double>(be[dk]);
    return r;
  };
  val += eval(-1, -1);
  for (int j = 0; j < d; ++j) {
    grad(j) += eval(j, -1);
    for (int k = 0; k < d; ++k) hess(j, k) += eval(j, k);
  }
}

AmbientEval eval_poly(const FunctionSpec& f, const CVec& z) {
  int d = static_cast<int>(z.size());
  cplx val = 0.0;
  CVec grad = CVec::Zero(d);
  CMat hess = CMat::Zero(d, d);
  // Re(P) = (P + conj P)/2 with conj P = conj(c) z^beta zbar^alpha.
  for (const auto& t : f.terms) {
    add_poly_monomial(0.5 * t.coeff, t.zexp, t.zbarexp, z, val, grad, hess);
    add_poly_monomial(0.5 * std::conj(t.coeff), t.zbarexp, t.zexp, z, val, grad, hess);
  }
  return {val.real(), grad, hess};
}

}  // namespace

int FunctionSpec::ambient_dim() const {
  switch (kind) {
    case FunctionKind::radial: return -1;
    case FunctionKind::loglinear: return static_cast<int>(A.rows());
    case FunctionKind::monomial_ideal: return m.empty() ? -1 : static_cast<int>(m[0].size());
    case FunctionKind::lse_toric: return static_cast<int>(a.size());
    case FunctionKind::sqrt_compose:
    case FunctionKind::scale: return inner->ambient_dim();
    case FunctionKind::smooth_poly: return terms.empty() ? -1 : static_cast<int>(terms[0].zexp.size());
  }
  return -1;
}

bool FunctionSpec::invariant() const {
  if (kind == FunctionKind::smooth_poly) {
    // Invariant under z -> e^{i theta} z iff every term has equal z and zbar degree.
    for (const auto& term : terms) {
      int dz = 0, dzb = 0;
      for (int e : term.zexp) dz += e;
      for (int e : term.zbarexp) dzb += e;
      if (dz != dzb) return false;
    }
    return true;
  }
  if (inner) return inner->invariant();
  return true;
}

void check_dimension(const FunctionSpec& f, int n) {
  if (n < 1) throw DimensionMismatch("n must be >= 1");
  int d = f.ambient_dim();
  if (d != -1 && d != n + 1)
    throw DimensionMismatch("'" + f.text + "' lives on C^" + std::to_string(d) + ", requested n=" +
                            std::to_string(n));
}

ScaledJet eval_scaled(const FunctionSpec& f, double s, const CVec& w) {
  int d = static_cast<int>(w.size());
  int need = f.ambient_dim();
  if (need != -1 && need != d)
    throw DimensionMismatch("point has " + std::to_string(d) + " coordinates, function needs " +
                            std::to_string(need));
  switch (f.kind) {
    case FunctionKind::radial:
      if (f.profile == RadialProfile::log) return eval_radial(f.c * s, f.c, 0.0, w);
      if (!(s < 0.0)) throw OutsideDomain("sqrtlog profile needs |z| < 1");
      return eval_radial(-f.c * std::sqrt(-s), 0.5 * f.c / std::sqrt(-s),
                         0.25 * f.c / std::pow(-s, 1.5), w);
    case FunctionKind::loglinear: return eval_loglinear(f.A, s, w);
    case FunctionKind::monomial_ideal: return eval_logsum(monomial_logsum(f), s, w);
    case FunctionKind::lse_toric: return eval_logsum(lse_logsum(f), s, w);
    case FunctionKind::sqrt_compose: {
      ScaledJet F = eval_scaled(*f.inner, s, w);
      if (F.value > -1.0)
        throw OutsideDomain("sqrt_compose needs inner value <= -1, got " + std::to_string(F.value));
      double mF = -F.value;
      double d1 = 0.5 / std::sqrt(mF), d2 = 0.25 / (mF * std::sqrt(mF));
      ScaledJet J;
      J.value = -std::sqrt(mF);
      J.g = d1 * F.g;
      J.h = d1 * F.h + d2 * F.g * F.g.adjoint();
      return J;
    }
    case FunctionKind::scale: {
      ScaledJet J = eval_scaled(*f.inner, s, w);
      J.value *= f.c;
      J.g *= f.c;
      J.h *= f.c;
      return J;
    }
    case FunctionKind::smooth_poly: {
      double r = std::exp(s);
      AmbientEval A = eval_poly(f, r * w);
      return {A.value, r * A.grad, r * r * A.hess};
    }
  }
  throw EvalFailure("unknown function kind");
}

AmbientEval eval_ambient(const FunctionSpec& f, const CVec& z) {
  if (f.kind == FunctionKind::smooth_poly) {
    int need = f.ambient_dim();
    if (need != -1 && need != z.size()) throw DimensionMismatch("point dimension mismatch");
    return eval_poly(f, z);
  }
  double r = z.norm();
  if (!(r > 0)) throw ZeroPoint("evaluation at the origin");
  double s = std::log(r);
  ScaledJet J = eval_scaled(f, s, z / r);
  return {J.value, J.g / r, J.h / (r * r)};
}

double eval_value(const FunctionSpec& f, const CVec& z) {
  if (f.kind == FunctionKind::smooth_poly) return eval_poly(f, z).value;
  double r = z.norm();
  if (!(r > 0)) throw ZeroPoint("evaluation at the origin");
  return eval_scaled(f, std::log(r), z / r).value;
}

TransversalEval transversal_from_jet(const JetFunction& jet, double t, const CVec& zeta, int chart) {
  int n = static_cast<int>(zeta.size());
  CVec W = chart_lift(zeta, chart);
  double s2 = 1.0 + zeta.squaredNorm();
  double rho = 1.0 / std::sqrt(s2);
  CVec w = rho * W;
  ScaledJet J = jet(t, w);
  TransversalEval T;
  T.u_t = J.value;
  T.u_dot = 2.0 * (w.transpose() * J.g)(0).real();
  // Theta = B^T h conj(B): B holds the chart derivative of the point together
  // with the radial shift forced by S^1-invariance (d sigma / d zeta^alpha with
  // sigma = log rho).
  CMat B = CMat::Zero(n + 1, n);
  for (int al = 0; al < n; ++al) {
    cplx a = -0.5 * std::conj(zeta(al)) / s2;
    B.col(al) = 2.0 * a * w;
    B(chart_slot(al, chart), al) += rho;
  }
  T.Theta = B.transpose() * J.h * B.conjugate();
  T.Theta = 0.5 * (T.Theta + T.Theta.adjoint()).eval();
  T.G = fs_metric_at(zeta);
  T.H = T.Theta - T.u_dot * T.G;
  return T;
}

TransversalEval eval_transversal(const FunctionSpec& f, double t, const CVec& zeta, int chart,
                                 bool require_invariant) {
  if (require_invariant && !f.invariant()) throw NotInvariant("'" + f.text + "' is not S^1-invariant");
  return transversal_from_jet([&](double s, const CVec& w) { return eval_scaled(f, s, w); }, t, zeta,
                              chart);
}

TransversalEval eval_transversal_fd(const FunctionSpec& f, double t, const CVec& zeta, int chart,
                                    double h) {
  if (!f.invariant()) throw NotInvariant("'" + f.text + "' is not S^1-invariant");
  int n = static_cast<int>(zeta.size());
  auto ut = [&](double tt, const CVec& zz) {
    CVec W = chart_lift(zz, chart);
    return eval_scaled(f, tt, W / W.norm()).value;
  };
  TransversalEval T;
  T.u_t = ut(t, zeta);
  T.u_dot = fd::richardson([&](double e) { return ut(t + e, zeta); }, h);
  // Real coordinates x_0, y_0, x_1, y_1, ...
  auto shift = [&](int a, double e) {
    CVec z = zeta;
    z(a / 2) += (a % 2 == 0) ? cplx(e, 0.0) : cplx(0.0, e);
    return z;
  };
  double step = h * (1.0 + zeta.norm());
  Eigen::MatrixXd R(2 * n, 2 * n);
  for (int a = 0; a < 2 * n; ++a)
    for (int b = a; b < 2 * n; ++b) {
      auto second = [&](double e) {
        if (a == b) {
          CVec zp = shift(a, e), zm = shift(a, -e);
          return (ut(t, zp) - 2.0 * T.u_t + ut(t, zm)) / (e * e);
        }
        auto at = [&](double ea, double eb) {
          CVec z = shift(a, ea);
          z(b / 2) += (b % 2 == 0) ? cplx(eb, 0.0) : cplx(0.0, eb);
          return ut(t, z);
        };
        return (at(e, e) - at(e, -e) - at(-e, e) + at(-e, -e)) / (4.0 * e * e);
      };
      double d1 = second(step), d2 = second(0.5 * step);
      R(a, b) = R(b, a) = (4.0 * d2 - d1) / 3.0;
    }
  T.H = CMat(n, n);
  for (int al = 0; al < n; ++al)
    for (int be = 0; be < n; ++be) {
      double xx = R(2 * al, 2 * be), yy = R(2 * al + 1, 2 * be + 1);
      double xy = R(2 * al, 2 * be + 1), yx = R(2 * al + 1, 2 * be);
      T.H(al, be) = 0.25 * cplx(xx + yy, xy - yx);
    }
  T.G = fs_metric_at(zeta);
  T.Theta = T.H + T.u_dot * T.G;
  return T;
}

Verdict psh_check(const FunctionSpec& f, const PshCheckOptions& opt) {
  check_dimension(f, opt.n);
  Verdict v;
  v.name = "psh_check";
  v.tolerance = opt.eig_tolerance;
  Stream rng(opt.seed, 0x505348);
  int d = opt.n + 1;
  double worst = 0.0, worst_inv = 0.0;
  for (int i = 0; i < opt.samples; ++i) {
    CVec w(d);
    for (int j = 0; j < d; ++j) w(j) = cplx(rng.normal(), rng.normal());
    w /= w.norm();
    double s = opt.t_min + (opt.t_max - opt.t_min) * rng.uniform();
    ScaledJet J = eval_scaled(f, s, w);
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (J.h + J.h.adjoint()), Eigen::EigenvaluesOnly);
    double scale = std::max(1.0, J.h.norm());
    double lam = es.eigenvalues()(0) / scale;
    if (lam < worst) {
      worst = lam;
      std::ostringstream os;
      os << "t=" << s << " eig=" << es.eigenvalues()(0);
      v.witness = os.str();
    }
    double rot = eval_scaled(f, s, std::polar(1.0, opt.theta) * w).value;
    double dev = std::abs(rot - J.value);
    if (dev > worst_inv) {
      worst_inv = dev;
      if (dev > opt.invariance_tolerance) {
        std::ostringstream os;
        os << "t=" << s << " invariance defect " << dev;
        v.witness = os.str();
      }
    }
  }
  v.residual = std::max(-worst, worst_inv);
  v.pass = -worst <= opt.eig_tolerance && worst_inv <= opt.invariance_tolerance;
  return v;
}

std::vector<CatalogEntry> psh_catalog(int n) {
  int d = n + 1;
  auto matrix = [](const std::vector<std::vector<int>>& rows) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < rows[i].size(); ++j) os << (j ? "," : "") << rows[i][j];
      os << "]";
    }
    os << "]";
    return os.str();
  };
  std::vector<std::vector<int>> A(d, std::vector<int>(d, 0)), m(d, std::vector<int>(d, 0));
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) A[i][j] = 1;
    m[i][i] = i == 0 ? 1 : 2;
  }
  std::string ones = "[", avec = "[";
  for (int i = 0; i < d; ++i) {
    ones += (i ? ",1" : "1");
    avec += (i ? "," : "") + std::to_string(i + 1);
  }
  ones += "]";
  avec += "]";
  std::string mono = "monomial_ideal(m=" + matrix(m) + ",w=" + ones + ")";
  std::vector<std::pair<std::string, std::string>> src = {
      {"radial_log", "radial(profile=log,c=1.5)"},
      {"radial_sqrtlog", "radial(profile=sqrtlog,c=1)"},
      {"loglinear", "loglinear(A=" + matrix(A) + ")"},
      {"monomial", mono},
      {"lse_toric", "lse_toric(a=" + avec + ",beta=2)"},
      {"sqrt_radial", "sqrt_compose(radial(profile=log,c=1))"},
      {"sqrt_monomial", "sqrt_compose(" + mono + ")"},
      {"scaled_monomial", "scale(0.5," + mono + ")"},
  };
  std::vector<CatalogEntry> out;
  for (auto& [name, text] : src) out.push_back({name, parse_spec(text)});
  return out;
}

}  // namespace mamass
