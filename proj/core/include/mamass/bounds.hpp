#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mamass/types.hpp"

namespace mamass {

using BigInt = boost::multiprecision::cpp_int;

// Commutative polynomial in the symbols M, a, b, c with exact integer
// coefficients. Zero coefficients are never stored.
class IntPolynomial {
 public:
  using Exponents = std::array<int, 4>;  // powers of M, a, b, c

  IntPolynomial() = default;
  explicit IntPolynomial(const BigInt& constant);

  static IntPolynomial M() { return var(0); }
  static IntPolynomial a() { return var(1); }
  static IntPolynomial b() { return var(2); }
  static IntPolynomial c() { return var(3); }

  IntPolynomial& operator+=(const IntPolynomial& o);
  IntPolynomial& operator-=(const IntPolynomial& o);
  friend IntPolynomial operator+(IntPolynomial x, const IntPolynomial& y) { return x += y; }
  friend IntPolynomial operator-(IntPolynomial x, const IntPolynomial& y) { return x -= y; }
  friend IntPolynomial operator*(const IntPolynomial& x, const IntPolynomial& y);
  friend IntPolynomial operator*(const BigInt& k, const IntPolynomial& x);
  friend bool operator==(const IntPolynomial& x, const IntPolynomial& y) { return x.terms_ == y.terms_; }

  IntPolynomial pow(int e) const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Exponents, BigInt>& terms() const { return terms_; }
  std::string to_string() const;

 private:
  static IntPolynomial var(int i);
  void add_term(const Exponents& e, const BigInt& k);
  std::map<Exponents, BigInt> terms_;
};

BigInt binomial(int n, int k);

// B_0..B_{k_max}: B_0 = 1, B_{k+1} = sum_j C(k,j) B_j.
std::vector<BigInt> bell_constants(int k_max);

// C_n = sum_k C(n+1, 2k+1) B_{n-2k}, giving C_1..C_4 = 2, 7, 24, 96.
BigInt dimensional_constant(int n);

// Exact identity verifiers. Each returns a passing verdict or throws
// CounterexampleFound naming the first failing case. `mutate` injects a
// deliberate error (fault tests only).
Verdict verify_binomial_weight_identity(int n_max, bool mutate = false);
Verdict verify_telescoping_identity(int n, bool mutate = false);
Verdict verify_alternating_expansion_identity(int n, bool mutate = false);

enum class InequalityVerdict { pass, fail, inconclusive };
std::string to_string(InequalityVerdict v);

struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;        // rhs - lhs
  double uncertainty = 0.0;
  InequalityVerdict verdict = InequalityVerdict::pass;
  bool asserted = true;      // false for reports that are informative only
  std::string note;
};

// fail if slack < -uncertainty; inconclusive if |slack| <= uncertainty;
// pass otherwise.
InequalityReport make_report(std::string name, double lhs, double rhs, double uncertainty,
                             bool asserted = true, std::string note = {});

// Per-t inputs for the finite-t bounds.
struct EstimateAtT {
  double t = 0.0;
  double A = 0.0;           // A with t < -A
  double mass = 0.0;        // normalized boundary mass
  double mass_err = 0.0;    // one standard error
  double I = 0.0;           // \int u_dot omega^n
  double I_err = 0.0;
  double M = 0.0;           // M_A
  double M_gap = 0.0;       // refinement gap of M_A
  std::vector<double> theta_terms;      // \int u_dot^{n+1-k} ratio_k(G, Theta) omega^n, k = 0..n
  std::vector<double> theta_terms_err;
};

struct EstimateInputs {
  int n = 1;
  double nu = 0.0, nu_unc = 0.0;
  double lambda = 0.0, lambda_unc = 0.0;
  double tau = 0.0, tau_unc = 0.0;
  std::vector<EstimateAtT> at_t;
};

// Inequality suite:
//   (a) nu^{n+1} <= tau                     (b) tau <= 2 C_n lambda^n nu
//   (c) tau <= (n+1) lambda^{n+1}           (d) mass(t) <= C_n M_A^n I / pi^n
//   (e) per-k Theta integrals <= B_k M_A^n I
//   (f) n = 1: tau <= 2 lambda nu + nu^2    (g) tau <= C_n lambda^n nu (not asserted)
std::vector<InequalityReport> check_estimate_suite(const EstimateInputs& in);

}  // namespace mamass
