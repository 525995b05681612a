#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mamass/types.hpp"

namespace mamass {

enum class FunctionKind { radial, loglinear, monomial_ideal, lse_toric, sqrt_compose, scale, smooth_poly };
enum class RadialProfile { log, sqrtlog };

struct PolyTerm {
  cplx coeff;
  std::vector<int> zexp;
  std::vector<int> zbarexp;
};

// Parsed catalog function. Immutable once built; `inner` is shared.
struct FunctionSpec {
  FunctionKind kind = FunctionKind::radial;
  std::string text;

  RadialProfile profile = RadialProfile::log;  // radial
  double c = 1.0;                              // radial, scale
  CMat A;                                      // loglinear
  std::vector<std::vector<int>> m;             // monomial_ideal exponents
  std::vector<double> w;                       // monomial_ideal weights
  std::vector<double> a;                       // lse_toric exponents
  double beta = 1.0;                           // lse_toric
  std::shared_ptr<const FunctionSpec> inner;   // sqrt_compose, scale
  std::vector<PolyTerm> terms;                 // smooth_poly

  // Required ambient dimension n+1, or -1 when any dimension works.
  int ambient_dim() const;
  // False only for smooth_poly (anywhere in the tree).
  bool invariant() const;
};

// Grammar:
//   radial(profile=log|sqrtlog, c=REAL)
//   loglinear(A=[[NUM,...],...])              u = log|Az|
//   monomial_ideal(m=[[INT,...],...], w=[REAL,...])
//                                            u = 1/2 log sum w_i |z^{m_i}|^2
//   lse_toric(a=[REAL,...], beta=REAL)       u = 1/(2 beta) log sum |z^j|^{2 beta a_j}
//   sqrt_compose(F)                          u = -(-F)^{1/2}
//   scale(REAL, F)                           u = c F
//   smooth_poly(terms=[(NUM,[INT,...],[INT,...]),...])
//                                            u = sum Re(coeff z^alpha zbar^beta)
// NUM is a real or complex literal such as 2, -1.5, 3i, 1-2i.
FunctionSpec parse_spec(const std::string& text);

// Throws DimensionMismatch unless the spec is usable on C^{n+1}.
void check_dimension(const FunctionSpec& f, int n);

// Scale-free jet at z = e^s w, |w| = 1: value u(z), g = e^s du/dz^j and
// h_{jk} = e^{2s} d^2u/dz^j dzbar^k. Bounded as s -> -infinity for the
// log-homogeneous constructors.
struct ScaledJet {
  double value = 0.0;
  CVec g;
  CMat h;
};

ScaledJet eval_scaled(const FunctionSpec& f, double s, const CVec& w);

struct AmbientEval {
  double value = 0.0;
  CVec grad;  // du/dz^j
  CMat hess;  // d^2u/dz^j dzbar^k
};

AmbientEval eval_ambient(const FunctionSpec& f, const CVec& z);
double eval_value(const FunctionSpec& f, const CVec& z);

struct TransversalEval {
  double u_t = 0.0;
  double u_dot = 0.0;  // d/dt of u_t
  CMat H;              // complex Hessian of u_t in the chart
  CMat Theta;          // u_dot G + H
  CMat G;              // Fubini-Study coefficients at zeta
};

// Analytic transversal data at (t, zeta) in the given chart (theta = 0).
// Throws NotInvariant for non-invariant specs unless require_invariant is
// false (fault-injection paths only).
TransversalEval eval_transversal(const FunctionSpec& f, double t, const CVec& zeta, int chart,
                                 bool require_invariant = true);

// Transversal data from any S^1-invariant scale-free jet (used for
// mollified functions).
using JetFunction = std::function<ScaledJet(double s, const CVec& w)>;
TransversalEval transversal_from_jet(const JetFunction& jet, double t, const CVec& zeta, int chart);

// Same data from central differences of u_t with one Richardson halving.
TransversalEval eval_transversal_fd(const FunctionSpec& f, double t, const CVec& zeta, int chart,
                                    double h = 1e-4);

struct PshCheckOptions {
  int n = 1;
  int samples = 1000;
  std::uint64_t seed = 1;
  double t_min = -12.0;
  double t_max = -1.0;
  double eig_tolerance = 1e-9;
  double invariance_tolerance = 1e-10;
  double theta = 1.3;
};

// Smallest eigenvalue of the scale-free Hessian and S^1-invariance at random
// points of the punctured ball.
Verdict psh_check(const FunctionSpec& f, const PshCheckOptions& opt);

struct CatalogEntry {
  std::string name;
  FunctionSpec spec;
};

// Fixed psh test members usable on C^{n+1}.
std::vector<CatalogEntry> psh_catalog(int n);

}  // namespace mamass
