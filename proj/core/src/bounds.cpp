#include "mamass/bounds.hpp"

#include <cmath>
#include <sstream>

#include <boost/rational.hpp>

#include "mamass/errors.hpp"

namespace mamass {

IntPolynomial::IntPolynomial(const BigInt& constant) { add_term({0, 0, 0, 0}, constant); }

IntPolynomial IntPolynomial::var(int i) {
  IntPolynomial p;
  Exponents e{0, 0, 0, 0};
  e[i] = 1;
  p.add_term(e, 1);
  return p;
}

void IntPolynomial::add_term(const Exponents& e, const BigInt& k) {
  if (k == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, k);
    return;
  }
  it->second += k;
  if (it->second == 0) terms_.erase(it);
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
  for (auto& [e, k] : o.terms_) add_term(e, k);
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
  for (auto& [e, k] : o.terms_) add_term(e, -k);
  return *this;
}

IntPolynomial operator*(const IntPolynomial& x, const IntPolynomial& y) {
  IntPolynomial r;
  for (auto& [ex, kx] : x.terms_)
    for (auto& [ey, ky] : y.terms_) {
      IntPolynomial::Exponents e;
      for (int i = 0; i < 4; ++i) e[i] = ex[i] + ey[i];
      r.add_term(e, kx * ky);
    }
  return r;
}

IntPolynomial operator*(const BigInt& k, const IntPolynomial& x) {
  IntPolynomial r;
  for (auto& [e, v] : x.terms_) r.add_term(e, k * v);
  return r;
}

IntPolynomial IntPolynomial::pow(int e) const {
  IntPolynomial r(1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::string IntPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  static const char* names[4] = {"M", "a", "b", "c"};
  std::ostringstream os;
  bool first = true;
  for (auto& [e, k] : terms_) {
    os << (first ? "" : " + ") << k;
    for (int i = 0; i < 4; ++i)
      if (e[i]) os << "*" << names[i] << (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
    first = false;
  }
  return os.str();
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<BigInt> bell_constants(int k_max) {
  if (k_max < 0) throw InvalidArgument("k_max must be >= 0");
  std::vector<BigInt> B{1};
  for (int k = 0; k < k_max; ++k) {
    BigInt s = 0;
    for (int j = 0; j <= k; ++j) s += binomial(k, j) * B[j];
    B.push_back(s);
  }
  return B;
}

BigInt dimensional_constant(int n) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  auto B = bell_constants(n);
  BigInt C = 0;
  for (int k = 0; 2 * k + 1 <= n + 1; ++k) C += binomial(n + 1, 2 * k + 1) * B[n - 2 * k];
  if (C < n + 1) throw CounterexampleFound("C_" + std::to_string(n) + " below n+1");
  return C;
}

Verdict verify_binomial_weight_identity(int n_max, bool mutate) {
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
  using Q = boost::rational<BigInt>;
  for (int n = 1; n <= n_max; ++n)
    for (int k = 1; k <= n; ++k) {
      Q coef(BigInt(n), BigInt(n - k + (mutate ? 2 : 1)));
      Q lhs = Q(binomial(n, k)) + coef * Q(binomial(n - 1, k - 1));
      if (lhs != Q(binomial(n + 1, k))) {
        std::ostringstream os;
        os << "binomial weight identity fails at n=" << n << ", k=" << k << ": " << lhs << " != " << binomial(n + 1, k);
        throw CounterexampleFound(os.str());
      }
    }
  return {"binomial_weight_identity", true, 0.0, 0.0, "n <= " + std::to_string(n_max)};
}

Verdict verify_telescoping_identity(int n, bool mutate) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  using P = IntPolynomial;
  P M = P::M(), a = P::a(), b = P::b(), c = P::c();
  P lhs;
  for (int k = 0; k <= n; ++k) {
    BigInt C = binomial(n + 1, k) + (mutate && k == 1 ? 1 : 0);
    P ab = a.pow(n - k) * b.pow(k);
    lhs += C * (M.pow(n + 1 - k) * ab);
    lhs -= binomial(n + 1, k) * (c.pow(n + 1 - k) * ab);
  }
  P sum;
  for (int k = 0; k <= n; ++k) sum += (M * a + b).pow(n - k) * (c * a + b).pow(k);
  P rhs = (M - c) * sum;
  if (!(lhs == rhs))
    throw CounterexampleFound("telescoping identity fails at n=" + std::to_string(n) + ": difference " +
                              (lhs - rhs).to_string());
  return {"telescoping_identity", true, 0.0, 0.0, "n = " + std::to_string(n)};
}

Verdict verify_alternating_expansion_identity(int n, bool mutate) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  using P = IntPolynomial;
  P a = P::a(), b = P::b(), c = P::c();
  P lhs, rhs;
  for (int k = 0; k <= n; ++k) lhs += binomial(n + 1, k) * (c.pow(n + 1 - k) * a.pow(n - k) * b.pow(k));
  for (int j = 0; j <= n; ++j) {
    BigInt sign = ((j % 2) == (mutate ? 0 : 1)) ? -1 : 1;
    rhs += (sign * binomial(n + 1, j + 1)) * ((c * a + b).pow(n - j) * c.pow(j + 1) * a.pow(j));
  }
  if (!(lhs == rhs))
    throw CounterexampleFound("alternating expansion identity fails at n=" + std::to_string(n) + ": difference " +
                              (lhs - rhs).to_string());
  return {"alternating_expansion_identity", true, 0.0, 0.0, "n = " + std::to_string(n)};
}

std::string to_string(InequalityVerdict v) {
  switch (v) {
    case InequalityVerdict::pass: return "pass";
    case InequalityVerdict::fail: return "fail";
    case InequalityVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

InequalityReport make_report(std::string name, double lhs, double rhs, double uncertainty,
                             bool asserted, std::string note) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.uncertainty = uncertainty;
  r.asserted = asserted;
  r.note = std::move(note);
  if (r.slack < -uncertainty) r.verdict = InequalityVerdict::fail;
  else if (std::abs(r.slack) <= uncertainty) r.verdict = InequalityVerdict::inconclusive;
  else r.verdict = InequalityVerdict::pass;
  return r;
}

std::vector<InequalityReport> check_estimate_suite(const EstimateInputs& in) {
  int n = in.n;
  if (n < 1) throw InvalidArgument("n must be >= 1");
  double C = dimensional_constant(n).convert_to<double>();
  auto B = bell_constants(n);
  double nu = std::max(0.0, in.nu), lam = std::max(0.0, in.lambda), tau = in.tau;
  double su = in.nu_unc, sl = in.lambda_unc, st = in.tau_unc;
  std::vector<InequalityReport> out;

  out.push_back(make_report("(a) nu^(n+1) <= tau", std::pow(nu, n + 1), tau,
                            (n + 1) * std::pow(nu, n) * su + st));
  double rb = 2.0 * C * std::pow(lam, n) * nu;
  double ub = 2.0 * C * (n * std::pow(lam, n - 1) * nu * sl + std::pow(lam, n) * su);
  out.push_back(make_report("(b) tau <= 2 C_n lambda^n nu", tau, rb, st + ub));
  out.push_back(make_report("(c) tau <= (n+1) lambda^(n+1)", tau, (n + 1) * std::pow(lam, n + 1),
                            st + (n + 1) * (n + 1) * std::pow(lam, n) * sl));
  double pin = std::pow(kPi, n);
  for (const auto& e : in.at_t) {
    double M = e.M + e.M_gap;
    std::ostringstream tag;
    tag << " [t=" << e.t << ", A=" << e.A << "]";
    double rhs = C * std::pow(M, n) * e.I / pin;
    double urhs = C * std::pow(M, n) * 3.0 * e.I_err / pin;
    out.push_back(make_report("(d) mass(t) <= C_n M_A^n I / pi^n" + tag.str(), e.mass, rhs,
                              3.0 * e.mass_err + urhs));
    for (std::size_t k = 0; k < e.theta_terms.size(); ++k) {
      double Bk = B[k].convert_to<double>();
      double err = k < e.theta_terms_err.size() ? e.theta_terms_err[k] : 0.0;
      out.push_back(make_report("(e) k=" + std::to_string(k) + " Theta term <= B_k M_A^n I" + tag.str(),
                                e.theta_terms[k], Bk * std::pow(M, n) * e.I,
                                3.0 * err + Bk * std::pow(M, n) * 3.0 * e.I_err));
    }
  }
  if (n == 1)
    out.push_back(make_report("(f) tau <= 2 lambda nu + nu^2", tau, 2.0 * lam * nu + nu * nu,
                              st + 2.0 * (nu * sl + lam * su) + 2.0 * nu * su));
  out.push_back(make_report("(g) tau <= C_n lambda^n nu", tau, C * std::pow(lam, n) * nu, st + 0.5 * ub,
                            false, "improved constant, unproven here"));
  return out;
}

}  // namespace mamass
