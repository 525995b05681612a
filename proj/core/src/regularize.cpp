#include "mamass/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "mamass/errors.hpp"
#include "mamass/geometry.hpp"
#include "mamass/invariants.hpp"
#include "mamass/mass.hpp"
#include "mamass/parallel.hpp"

namespace mamass {

namespace {

double bump(double r) {
  if (r >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - r * r));
}

// 2 pi^2 r^3 bump(r): the radial density of the bump in R^4.
double radial_density(double r) { return 2.0 * kPi * kPi * r * r * r * bump(r); }

double normalization_tanh_sinh() {
  boost::math::quadrature::tanh_sinh<double> q;
  return q.integrate(radial_density, 0.0, 1.0);
}

double normalization_kronrod() {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(radial_density, 0.0, 1.0, 15, 1e-14);
}

const double& normalization() {
  static const double N = normalization_tanh_sinh();
  return N;
}

struct BallNode {
  CVec w;
  double weight;  // includes rho, so the weights sum to about 1
};

// Weights are rescaled to sum to exactly 1; `raw_mass` receives the sum
// before rescaling.
std::vector<BallNode> ball_rule(const MollifyRule& rule, double* raw_mass = nullptr) {
  if (rule.radial < 1 || rule.polar < 1 || rule.angular < 1) throw InvalidArgument("mollify rule orders must be positive");
  std::vector<double> rx, rw, sx, sw;
  gauss_legendre(rule.radial, 0.0, 1.0, rx, rw);
  gauss_legendre(rule.polar, 0.0, 1.0, sx, sw);
  double N = normalization();
  int M = rule.angular;
  double dang = 2.0 * kPi / M;
  std::vector<BallNode> nodes;
  nodes.reserve(static_cast<std::size_t>(rule.radial) * rule.polar * M * M);
  for (int i = 0; i < rule.radial; ++i) {
    double r = rx[i];
    double wr = rw[i] * r * r * r * bump(r) / N;
    for (int j = 0; j < rule.polar; ++j) {
      double s = sx[j];
      // dsigma on S^3 = (1/2) ds da db.
      double ws = wr * 0.5 * sw[j] * dang * dang;
      double c0 = r * std::sqrt(1.0 - s), c1 = r * std::sqrt(s);
      for (int a = 0; a < M; ++a)
        for (int b = 0; b < M; ++b) {
          // Half-step offset in b keeps nodes off the real axes.
          double pa = dang * a, pb = dang * (b + 0.5);
          CVec w(2);
          w << std::polar(c0, pa), std::polar(c1, pb);
          nodes.push_back({w, ws});
        }
    }
  }
  double total = 0.0;
  for (const auto& nd : nodes) total += nd.weight;
  for (auto& nd : nodes) nd.weight /= total;
  if (raw_mass) *raw_mass = total;
  return nodes;
}

MollifyRule half_rule(const MollifyRule& r) {
  return {std::max(1, r.radial / 2), std::max(1, r.polar / 2), std::max(1, r.angular / 2)};
}

void require_c2(const FunctionSpec& f, const CVec& z) {
  if (z.size() != 2) throw UnsupportedDimension("regularization is implemented for n = 1 (C^2) only");
  check_dimension(f, 1);
}

void require_eps(double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("epsilon must be positive");
}

double convolve_value(const FunctionSpec& f, const CVec& z, double eps, const std::vector<BallNode>& nodes) {
  double acc = 0.0;
  for (const auto& nd : nodes) acc += nd.weight * eval_value(f, z - eps * nd.w);
  return acc;
}

AmbientEval convolve_jet(const FunctionSpec& f, const CVec& z, double eps, const std::vector<BallNode>& nodes) {
  AmbientEval out;
  out.grad = CVec::Zero(2);
  out.hess = CMat::Zero(2, 2);
  for (const auto& nd : nodes) {
    AmbientEval a = eval_ambient(f, z - eps * nd.w);
    out.value += nd.weight * a.value;
    out.grad += nd.weight * a.grad;
    out.hess += nd.weight * a.hess;
  }
  return out;
}

double radial_derivative(const CVec& x, const CVec& grad) {
  return 2.0 * (x.transpose() * grad)(0).real() / x.norm();
}

}  // namespace

Mollifier make_mollifier(double epsilon) {
  require_eps(epsilon);
  return {epsilon, normalization()};
}

Verdict mollifier_selfcheck() {
  double a = normalization_tanh_sinh();
  double b = normalization_kronrod();
  double mass = 0.0;
  ball_rule({}, &mass);
  Verdict v;
  v.name = "mollifier";
  v.residual = std::max(std::abs(a - b) / a, std::abs(mass - 1.0));
  v.tolerance = 1e-6;
  v.pass = v.residual <= v.tolerance;
  std::ostringstream os;
  os.precision(15);
  os << "N(tanh-sinh)=" << a << " N(Gauss-Kronrod)=" << b << " product-rule mass=" << mass;
  v.witness = os.str();
  return v;
}

Estimate mollify_at(const FunctionSpec& f, const CVec& z, double epsilon, const MollifyRule& rule) {
  require_c2(f, z);
  require_eps(epsilon);
  if (!(z.norm() > 2.0 * epsilon)) throw TooCloseToOrigin("mollify_at needs |z| > 2 eps");
  auto full = ball_rule(rule);
  double v = convolve_value(f, z, epsilon, full);
  double vh = convolve_value(f, z, epsilon, ball_rule(half_rule(rule)));
  return {v, std::abs(v - vh), static_cast<long>(full.size())};
}

AmbientEval mollified_jet(const FunctionSpec& f, const CVec& z, double epsilon, const MollifyRule& rule) {
  require_c2(f, z);
  require_eps(epsilon);
  if (!(z.norm() > epsilon)) throw TooCloseToOrigin("mollified_jet needs |z| > eps");
  return convolve_jet(f, z, epsilon, ball_rule(rule));
}

double friedrichs_defect(const FunctionSpec& f, const CVec& z, double epsilon, const MollifyRule& rule) {
  require_c2(f, z);
  require_eps(epsilon);
  if (!(z.norm() > epsilon)) throw TooCloseToOrigin("Friedrichs defect needs |z| > eps");
  auto nodes = ball_rule(rule);
  CVec grad = CVec::Zero(2);
  double radial = 0.0;
  for (const auto& nd : nodes) {
    CVec x = z - epsilon * nd.w;
    CVec g = eval_ambient(f, x).grad;
    grad += nd.weight * g;
    radial += nd.weight * radial_derivative(x, g);
  }
  double lhs = 2.0 * (z.transpose() * grad)(0).real();
  return std::abs(lhs - z.norm() * radial);
}

Verdict friedrichs_check(const FunctionSpec& f, const std::vector<CVec>& points, double epsilon,
                         const FriedrichsOptions& opt) {
  check_dimension(f, 1);
  require_eps(epsilon);
  if (points.empty()) throw InsufficientData("no points");
  double delta = opt.delta;
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidArgument("delta must lie in (0, 1/2)");
  for (const auto& z : points) {
    if (z.size() != 2) throw UnsupportedDimension("regularization is implemented for n = 1 (C^2) only");
    double r = z.norm();
    if (!(r > 0.0 && r < 1.0 - 2.0 * delta)) throw InvalidArgument("point outside B*_{1-2 delta}");
    if (!(epsilon < std::min(r, delta))) throw InvalidArgument("epsilon must be below min(|z|, delta)");
  }
  Estimate K = integrate_shell(
      [&](const CVec& x) { return 2.0 * eval_ambient(f, x).grad.norm(); }, 1, 0.0, 1.0 - delta,
      opt.gradient_scheme, RadiusSampling::power);
  double bound = 2.0 * epsilon * K.value;
  std::vector<double> lhs(points.size());
  parallel_for(points.size(), [&](std::size_t i) { lhs[i] = friedrichs_defect(f, points[i], epsilon, opt.rule); });
  std::size_t worst = static_cast<std::size_t>(std::max_element(lhs.begin(), lhs.end()) - lhs.begin());
  Verdict v;
  v.name = "friedrichs";
  v.residual = lhs[worst];
  v.tolerance = bound;
  v.pass = v.residual <= v.tolerance;
  std::ostringstream os;
  os << "K=" << K.value << " +- " << K.std_error << "; worst defect at point " << worst;
  v.witness = os.str();
  return v;
}

Verdict mollified_slope_bound(const FunctionSpec& f, double A, double B, const std::vector<double>& eps_list,
                              const MollifyRule& rule) {
  check_dimension(f, 1);
  if (!(1.0 < A && A < B)) throw InvalidArgument("need 1 < A < B");
  if (eps_list.size() < 2) throw InsufficientData("slope bound needs at least two epsilons");
  for (double e : eps_list) require_eps(e);
  double MA = max_directional(f, 1, A).value;
  double r = std::exp(-B);
  double admissible = 0.5 * std::min(std::exp(-A) - std::exp(-B), std::exp(-B));
  auto nodes = ball_rule(rule);

  // u_dot of u_eps at the point of [z] parametrized by s = |z^1|^2 / |z|^2 and the phase of z^1.
  auto slope_at = [&](double eps, double s, double phi) {
    CVec z(2);
    z << r * std::sqrt(1.0 - s), std::polar(r * std::sqrt(s), phi);
    AmbientEval J = convolve_jet(f, z, eps, nodes);
    return 2.0 * (z.transpose() * J.grad)(0).real();
  };

  std::vector<double> MB;
  for (double eps : eps_list) {
    const int S = 17, P = 16;
    std::vector<double> vals(S * P);
    parallel_for(vals.size(), [&](std::size_t k) {
      double s = static_cast<double>(k / P) / (S - 1);
      double phi = 2.0 * kPi * static_cast<double>(k % P) / P;
      vals[k] = slope_at(eps, s, phi);
    });
    std::size_t k = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    double s = static_cast<double>(k / P) / (S - 1), phi = 2.0 * kPi * static_cast<double>(k % P) / P;
    double best = vals[k];
    // Coordinate-wise golden-section ascent around the best grid point.
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int round = 0; round < 2; ++round) {
      for (int coord = 0; coord < 2; ++coord) {
        double width = coord == 0 ? 1.0 / (S - 1) : 2.0 * kPi / P;
        double lo = (coord == 0 ? s : phi) - width, hi = (coord == 0 ? s : phi) + width;
        if (coord == 0) lo = std::max(lo, 0.0), hi = std::min(hi, 1.0);
        auto eval = [&](double x) { return coord == 0 ? slope_at(eps, x, phi) : slope_at(eps, s, x); };
        double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        double f1 = eval(x1), f2 = eval(x2);
        for (int it = 0; it < 20; ++it) {
          if (f1 < f2) {
            lo = x1, x1 = x2, f1 = f2, x2 = lo + g * (hi - lo), f2 = eval(x2);
          } else {
            hi = x2, x2 = x1, f2 = f1, x1 = hi - g * (hi - lo), f1 = eval(x1);
          }
        }
        double x = f1 > f2 ? x1 : x2, fx = std::max(f1, f2);
        if (fx > best) {
          best = fx;
          (coord == 0 ? s : phi) = x;
        }
      }
    }
    MB.push_back(best);
  }

  // Least-squares line M_B(u_eps) = m0 + C eps.
  double n = static_cast<double>(eps_list.size());
  double se = 0, sm = 0, see = 0, sem = 0;
  for (std::size_t i = 0; i < MB.size(); ++i) {
    se += eps_list[i];
    sm += MB[i];
    see += eps_list[i] * eps_list[i];
    sem += eps_list[i] * MB[i];
  }
  double denom = n * see - se * se;
  if (!(std::abs(denom) > 0.0)) throw InvalidArgument("epsilons must be distinct");
  double C = (n * sem - se * sm) / denom;
  double m0 = (sm - C * se) / n;
  double tol = 1e-3 * std::max(1.0, 2.0 * MA);
  double worst = m0 - 2.0 * MA;
  for (std::size_t i = 0; i < MB.size(); ++i)
    worst = std::max(worst, MB[i] - (2.0 * MA + std::max(C, 0.0) * eps_list[i]));
  Verdict v;
  v.name = "mollified_slope_bound";
  v.residual = worst;
  v.tolerance = tol;
  v.pass = worst <= tol;
  std::ostringstream os;
  os << "M_A(u)=" << MA << " C_fit=" << C << " intercept=" << m0 << " M_B(u_eps)=[";
  for (std::size_t i = 0; i < MB.size(); ++i) os << (i ? ", " : "") << MB[i];
  os << "]";
  bool admissible_all = std::all_of(eps_list.begin(), eps_list.end(), [&](double e) { return e < admissible; });
  if (!admissible_all) os << "; epsilon above the admissible bound " << admissible;
  v.witness = os.str();
  return v;
}

MassConvergence mass_convergence_check(const FunctionSpec& f, double t, const std::vector<double>& eps_list,
                                       const IntegrationScheme& scheme, const MollifyRule& rule) {
  check_dimension(f, 1);
  if (!f.invariant()) throw NotInvariant("'" + f.text + "' is not S^1-invariant");
  if (!(t <= -2.0)) throw InvalidArgument("mass convergence needs t <= -2");
  if (eps_list.empty()) throw InsufficientData("no epsilons");
  for (double e : eps_list) {
    require_eps(e);
    if (!(std::exp(t) > 2.0 * e)) throw TooCloseToOrigin("mass convergence needs e^t > 2 eps");
  }
  const int n = 1;
  CpnRule cpn = make_cpn_rule(n, scheme, default_depth(t));
  auto nodes = ball_rule(rule);
  auto density = [&](const TransversalEval& T) {
    RVec lam = generalized_eigs(T.G, T.H);
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) acc += binom(n + 1, k) * std::pow(T.u_dot, n + 1 - k) * ratio_from_eigs(lam, k);
    return acc / std::pow(kPi, n);
  };
  std::size_t N = cpn.size();
  std::vector<double> base(N);
  parallel_for(N, [&](std::size_t i) {
    int c = argmax_chart(cpn.points[i]);
    base[i] = density(eval_transversal(f, t, chart_coords(cpn.points[i], c), c));
  });
  MassConvergence out;
  out.mass = cpn.integrate(base);
  for (double eps : eps_list) {
    JetFunction jet = [&](double s, const CVec& w) {
      double es = std::exp(s);
      AmbientEval a = convolve_jet(f, es * w, eps, nodes);
      return ScaledJet{a.value, es * a.grad, es * es * a.hess};
    };
    std::vector<double> vals(N), diff(N);
    parallel_for(N, [&](std::size_t i) {
      int c = argmax_chart(cpn.points[i]);
      vals[i] = density(transversal_from_jet(jet, t, chart_coords(cpn.points[i], c), c));
      diff[i] = vals[i] - base[i];
    });
    out.mollified.push_back(cpn.integrate(vals));
    out.gaps.push_back(std::abs(cpn.integrate(diff).value));
  }
  Verdict& v = out.verdict;
  v.name = "mass_convergence";
  std::ostringstream os;
  for (std::size_t i = 1; i < out.gaps.size(); ++i)
    if (out.gaps[i] > out.gaps[i - 1] + 1e-12) {
      v.pass = false;
      os << "gap grows at eps=" << eps_list[i] << "; ";
    }
  v.residual = out.gaps.back();
  v.tolerance = std::max(3.0 * out.mollified.back().std_error, 1e-3);
  if (v.residual > v.tolerance) v.pass = false;
  os << "mass(u)=" << out.mass.value << " gaps=[";
  for (std::size_t i = 0; i < out.gaps.size(); ++i) os << (i ? ", " : "") << out.gaps[i];
  os << "]";
  v.witness = os.str();
  return out;
}

}  // namespace mamass
