#include "mamass/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "mamass/errors.hpp"
#include "mamass/geometry.hpp"
#include "mamass/parallel.hpp"
#include "mamass/rng.hpp"

namespace mamass {

namespace {

constexpr std::size_t kBlock = 1024;
constexpr double kMaxDepth = 200.0;
constexpr int kFiberNodes = 8;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

CVec gaussian_unit(Stream& rng, int dim) {
  CVec z(dim);
  for (int j = 0; j < dim; ++j) z(j) = cplx(rng.normal(), rng.normal());
  return z / z.norm();
}

// Density of the chart component against omega^n. In the argmax chart each
// coordinate is drawn from an even mixture of log-uniform |zeta|^2 on
// [e^{-L}, 1] and the uniform unit disc, so layers around points, lines and
// higher coordinate subspaces are all resolved.
double log_component_density(const CVec& z, int n, double L) {
  int c = argmax_chart(z);
  CVec zeta = chart_coords(z, c);
  double q = 1.0;
  for (int a = 0; a < n; ++a) {
    double r2 = std::norm(zeta(a));
    double qa = 0.5 / kPi;
    if (r2 >= std::exp(-L)) qa += 0.5 / (L * kPi * r2);
    q *= qa;
  }
  double s = 1.0 + zeta.squaredNorm();
  return q * std::pow(s, n + 1) / factorial(n) / (n + 1);
}

void build_tensor(CpnRule& rule, const IntegrationScheme& scheme, double depth) {
  std::vector<double> xs, xw;
  int panels = std::max(1, static_cast<int>(std::ceil(depth)));
  std::vector<double> px, pw;
  for (int p = 0; p < panels; ++p) {
    double a = -depth + depth * p / panels, b = -depth + depth * (p + 1) / panels;
    gauss_legendre(scheme.chart_order, a, b, px, pw);
    xs.insert(xs.end(), px.begin(), px.end());
    xw.insert(xw.end(), pw.begin(), pw.end());
  }
  int M = scheme.angular_nodes;
  for (int c = 0; c < 2; ++c) {
    // Polar core |zeta| < e^{-depth} collapsed onto its centre.
    double e2 = std::exp(-2.0 * depth);
    CVec zeta0 = CVec::Zero(1);
    CVec w0 = chart_lift(zeta0, c);
    rule.points.push_back(w0 / w0.norm());
    rule.weights.push_back(kPi * e2 / (1.0 + e2));
    for (std::size_t k = 0; k < xs.size(); ++k) {
      double rho = std::exp(xs[k]);
      double rho2 = rho * rho;
      double wr = xw[k] * rho2 / ((1.0 + rho2) * (1.0 + rho2)) * (2.0 * kPi / M);
      for (int m = 0; m < M; ++m) {
        double phi = 2.0 * kPi * (m + 0.5 * c) / M;
        CVec zeta(1);
        zeta(0) = std::polar(rho, phi);
        CVec w = chart_lift(zeta, c);
        rule.points.push_back(w / w.norm());
        rule.weights.push_back(wr);
      }
    }
  }
  rule.phases.assign(rule.points.size(), 0.0);
}

void build_random(CpnRule& rule, int n, const IntegrationScheme& scheme, double depth,
                  std::uint64_t stream) {
  std::size_t N = static_cast<std::size_t>(scheme.samples);
  rule.points.assign(N, CVec());
  rule.weights.assign(N, 1.0);
  rule.phases.assign(N, 0.0);
  rule.aux.assign(N, 0.0);
  bool is = scheme.kind == SchemeKind::mcis && n >= 1;
  double alpha = is ? scheme.uniform_fraction : 1.0;
  double L = 2.0 * depth;
  double q_uniform = 1.0 / std::pow(kPi, n);
  std::size_t blocks = (N + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t b) {
    Stream rng(scheme.seed, (stream << 32) + b);
    std::size_t lo = b * kBlock, hi = std::min(N, lo + kBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      CVec z;
      if (!is || rng.uniform() < alpha) {
        z = gaussian_unit(rng, n + 1);
      } else {
        int c = std::min(n, static_cast<int>(rng.uniform() * (n + 1)));
        CVec zeta(n);
        for (int a = 0; a < n; ++a) {
          double r = rng.uniform() < 0.5 ? std::exp(-0.5 * L * rng.uniform())
                                         : std::sqrt(rng.uniform());
          zeta(a) = std::polar(r, 2.0 * kPi * rng.uniform());
        }
        CVec w = chart_lift(zeta, c);
        z = w / w.norm();
      }
      rule.phases[i] = 2.0 * kPi * rng.uniform();
      rule.aux[i] = rng.uniform();
      if (is) {
        double q = alpha * q_uniform + (1.0 - alpha) * log_component_density(z, n, L);
        rule.weights[i] = 1.0 / q;
      }
      rule.points[i] = std::move(z);
    }
  });
}

}  // namespace

std::string to_string(SchemeKind k) {
  switch (k) {
    case SchemeKind::mc: return "mc";
    case SchemeKind::mcis: return "mcis";
    case SchemeKind::tensor: return "tensor";
  }
  return "?";
}

SchemeKind scheme_kind_from_string(const std::string& s) {
  if (s == "mc") return SchemeKind::mc;
  if (s == "mcis") return SchemeKind::mcis;
  if (s == "tensor") return SchemeKind::tensor;
  throw InvalidArgument("unknown scheme kind '" + s + "'");
}

void validate_scheme(const IntegrationScheme& s, int n) {
  if (n < 0) throw InvalidArgument("dimension must be >= 0");
  if (s.kind == SchemeKind::tensor) {
    if (n != 1) throw InvalidArgument("tensor rules exist only for n = 1");
    if (s.chart_order < 1 || s.angular_nodes < 1)
      throw InvalidArgument("tensor rule needs positive orders");
  } else if (s.samples < 1000) {
    throw InvalidArgument("Monte Carlo needs at least 1000 samples");
  }
  if (s.depth < 0) throw InvalidArgument("depth must be >= 0");
  if (!(s.uniform_fraction > 0.0 && s.uniform_fraction <= 1.0))
    throw InvalidArgument("uniform_fraction must lie in (0, 1]");
}

IntegrationScheme default_scheme(int n, std::uint64_t seed, long samples) {
  IntegrationScheme s;
  s.kind = n == 1 ? SchemeKind::tensor : SchemeKind::mcis;
  s.seed = seed;
  s.samples = samples;
  return s;
}

double default_depth(double t) { return std::min(kMaxDepth, 3.0 * std::abs(t) + 10.0); }

void gauss_legendre(int order, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  x.assign(order, 0.0);
  w.assign(order, 0.0);
  for (int i = 0; i < order; ++i) {
    double r = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = r;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2.0 * k - 1.0) * r * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (r * p1 - p0) / (r * r - 1.0);
      double dr = p1 / dp;
      r -= dr;
      if (std::abs(dr) < 1e-16) break;
    }
    double p0 = 1.0, p1 = r;
    for (int k = 2; k <= order; ++k) {
      double p2 = ((2.0 * k - 1.0) * r * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (r * p1 - p0) / (r * r - 1.0);
    x[i] = 0.5 * (a + b) - 0.5 * (b - a) * r;
    w[i] = (b - a) / ((1.0 - r * r) * dp * dp);
  }
}

Estimate CpnRule::integrate(std::span<const double> f) const {
  std::size_t N = points.size();
  if (f.size() != N) throw InvalidArgument("integrand size does not match the rule");
  Estimate e;
  e.samples_used = static_cast<long>(N);
  std::vector<double> wf(N);
  for (std::size_t i = 0; i < N; ++i) wf[i] = weights[i] * f[i];
  if (!random) {
    e.value = pairwise_sum(wf);
    return e;
  }
  double sw = pairwise_sum(weights);
  double mu = pairwise_sum(wf) / sw;
  std::vector<double> dev(N);
  for (std::size_t i = 0; i < N; ++i) {
    double d = weights[i] * (f[i] - mu);
    dev[i] = d * d;
  }
  double scale = std::pow(kPi, n);
  double corr = N > 1 ? static_cast<double>(N) / static_cast<double>(N - 1) : 1.0;
  e.value = scale * mu;
  e.std_error = scale * std::sqrt(corr * pairwise_sum(dev)) / sw;
  return e;
}

CpnRule make_cpn_rule(int n, const IntegrationScheme& scheme, double depth, std::uint64_t stream) {
  validate_scheme(scheme, n);
  CpnRule rule;
  rule.n = n;
  double d = scheme.depth > 0 ? scheme.depth : depth;
  if (scheme.kind == SchemeKind::tensor) {
    rule.random = false;
    build_tensor(rule, scheme, d);
  } else {
    rule.random = true;
    build_random(rule, n, scheme, d, stream);
  }
  return rule;
}

namespace {

std::vector<double> evaluate(const CpnRule& rule, const std::function<double(std::size_t)>& f) {
  std::vector<double> vals(rule.size());
  parallel_for(rule.size(), [&](std::size_t i) {
    try {
      vals[i] = f(i);
    } catch (const EvalFailure&) {
      throw;
    } catch (const std::exception& ex) {
      throw EvalFailure(std::string(ex.what()) + " (sample " + std::to_string(i) + ")");
    }
  });
  return vals;
}

}  // namespace

Estimate integrate_cpn(const CpnField& f, int n, const IntegrationScheme& scheme) {
  CpnRule rule = make_cpn_rule(n, scheme, default_depth(0.0));
  auto vals = evaluate(rule, [&](std::size_t i) { return f(rule.points[i]); });
  return rule.integrate(vals);
}

Estimate integrate_shell(const AmbientField& g, int n, double r1, double r2,
                         const IntegrationScheme& scheme, RadiusSampling mode) {
  if (!(r1 >= 0.0 && r1 < r2 && r2 <= 1.0))
    throw BadRadii("need 0 <= r1 < r2 <= 1, got r1=" + std::to_string(r1) +
                   " r2=" + std::to_string(r2));
  if (mode == RadiusSampling::log_uniform) {
    if (r1 <= 0.0) throw BadRadii("log-uniform radius sampling needs r1 > 0");
    int m = 2 * n + 2;
    return integrate_shell_scaled(
        [&](double t, const CVec& xi) { return std::exp(m * t) * g(std::exp(t) * xi); }, n,
        std::log(r1), std::log(r2), scheme);
  }
  validate_scheme(scheme, n);
  int m = 2 * n + 2;
  double sphere = 2.0 * kPi / factorial(n);  // |S^{2n+1}| / pi^n
  double depth = scheme.depth > 0 ? scheme.depth : default_depth(std::log(std::max(r1, r2 * 1e-3)));
  CpnRule rule = make_cpn_rule(n, scheme, depth);
  double radial = (std::pow(r2, m) - std::pow(r1, m)) / m;
  if (rule.random) {
    auto vals = evaluate(rule, [&](std::size_t i) {
      double rho = std::pow(std::pow(r1, m) + rule.aux[i] * (std::pow(r2, m) - std::pow(r1, m)),
                            1.0 / m);
      return sphere * radial * g(rho * std::polar(1.0, rule.phases[i]) * rule.points[i]);
    });
    return rule.integrate(vals);
  }
  std::vector<double> rx, rw;
  gauss_legendre(16, r1, r2, rx, rw);
  auto vals = evaluate(rule, [&](std::size_t i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < rx.size(); ++k)
      for (int f = 0; f < kFiberNodes; ++f)
        acc += rw[k] * std::pow(rx[k], m - 1) *
               g(rx[k] * std::polar(1.0, 2.0 * kPi * f / kFiberNodes) * rule.points[i]);
    return sphere * acc / kFiberNodes;
  });
  return rule.integrate(vals);
}

Estimate integrate_shell_scaled(const ScaledShellField& gs, int n, double t1, double t2,
                                const IntegrationScheme& scheme) {
  if (!(t1 < t2) || !std::isfinite(t1) || !(t2 <= 0.0))
    throw BadRadii("need -inf < t1 < t2 <= 0");
  validate_scheme(scheme, n);
  double sphere = 2.0 * kPi / factorial(n);
  CpnRule rule = make_cpn_rule(n, scheme, default_depth(t1));
  if (rule.random) {
    auto vals = evaluate(rule, [&](std::size_t i) {
      double t = t1 + rule.aux[i] * (t2 - t1);
      return sphere * (t2 - t1) * gs(t, std::polar(1.0, rule.phases[i]) * rule.points[i]);
    });
    return rule.integrate(vals);
  }
  std::vector<double> tx, tw, px, pw;
  int panels = std::max(1, static_cast<int>(std::ceil(t2 - t1)));
  for (int p = 0; p < panels; ++p) {
    gauss_legendre(8, t1 + (t2 - t1) * p / panels, t1 + (t2 - t1) * (p + 1) / panels, px, pw);
    tx.insert(tx.end(), px.begin(), px.end());
    tw.insert(tw.end(), pw.begin(), pw.end());
  }
  auto vals = evaluate(rule, [&](std::size_t i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < tx.size(); ++k) acc += tw[k] * gs(tx[k], rule.points[i]);
    return sphere * acc;
  });
  return rule.integrate(vals);
}

Estimate sphere_mean(const AmbientField& u, int n, double r, const IntegrationScheme& scheme) {
  if (!(r > 0.0)) throw BadRadii("sphere radius must be positive");
  validate_scheme(scheme, n);
  CpnRule rule = make_cpn_rule(n, scheme, default_depth(std::log(r)));
  double norm = 1.0 / std::pow(kPi, n);
  std::vector<double> vals;
  if (rule.random) {
    vals = evaluate(rule, [&](std::size_t i) {
      return norm * u(r * std::polar(1.0, rule.phases[i]) * rule.points[i]);
    });
  } else {
    vals = evaluate(rule, [&](std::size_t i) {
      double acc = 0.0;
      for (int f = 0; f < kFiberNodes; ++f)
        acc += u(r * std::polar(1.0, 2.0 * kPi * f / kFiberNodes) * rule.points[i]);
      return norm * acc / kFiberNodes;
    });
  }
  return rule.integrate(vals);
}

Limit extrapolate_limit(std::span<const double> ts, std::span<const double> values) {
  if (ts.size() != values.size()) throw InvalidArgument("ts and values differ in length");
  if (ts.size() < 3) throw InsufficientData("extrapolation needs at least 3 samples");
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (!(ts[i] < ts[i - 1])) throw InvalidArgument("ts must be strictly decreasing");
  std::size_t N = ts.size();
  double t1 = ts[N - 3], t2 = ts[N - 2], t3 = ts[N - 1];
  double v1 = values[N - 3], v2 = values[N - 2], v3 = values[N - 1];
  double d1 = v2 - v1, d2 = v3 - v2;
  if (d1 == 0.0 && d2 == 0.0) return {v3, 0.0, true};
  Limit fallback{v3, std::abs(v3 - v2), false};
  if (!(d1 * d2 > 0.0) || !(std::abs(d2) < std::abs(d1))) return fallback;
  double rho = d2 / d1;
  double h1 = t2 - t1, h2 = t3 - t2;  // both negative
  auto ratio = [&](double k) { return std::exp(k * h1) * std::expm1(k * h2) / std::expm1(k * h1); };
  double kmax_ratio = h2 / h1;  // limit as kappa -> 0
  if (!(rho < kmax_ratio)) return fallback;
  double lo = 1e-10 / std::abs(h1), hi = 700.0 / std::abs(h1);
  if (ratio(hi) > rho) return {v3, 0.0, true};
  for (int it = 0; it < 200; ++it) {
    double mid = std::sqrt(lo * hi);
    if (ratio(mid) > rho) lo = mid;
    else hi = mid;
  }
  double k = std::sqrt(lo * hi);
  double c = d1 / (std::exp(k * t1) * std::expm1(k * h1));
  double L = v3 - c * std::exp(k * t3);
  double unc = std::abs(L - v3);
  // A fourth point, when present, tests the model: a miss means the approach
  // is not exponential and the correction cannot be trusted.
  if (N >= 4) {
    double t0 = ts[N - 4], v0 = values[N - 4];
    double pred = L + c * std::exp(k * t0);
    if (std::abs(pred - v0) > 0.1 * std::abs(d1) + 1e-12 * std::abs(v0))
      unc = std::max(unc, std::abs(d2));
  }
  return {L, unc, true};
}

}  // namespace mamass
