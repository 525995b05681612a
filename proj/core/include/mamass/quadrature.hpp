#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mamass/types.hpp"

namespace mamass {

// mc: uniform sphere sampling. mcis: defensive mixture importance sampling
// (uniform sphere + chart-wise log-uniform moduli), resolving layers that
// shrink toward coordinate subspaces. tensor: deterministic product rule on
// CP^1 (n = 1 only).
enum class SchemeKind { mc, mcis, tensor };

std::string to_string(SchemeKind k);
SchemeKind scheme_kind_from_string(const std::string& s);

struct IntegrationScheme {
  SchemeKind kind = SchemeKind::mcis;
  long samples = 200000;
  std::uint64_t seed = 1;
  int chart_order = 8;     // Gauss-Legendre nodes per unit log-radial panel
  int angular_nodes = 32;  // periodic trapezoid nodes in the chart angle
  double depth = 0.0;      // log|zeta| range resolved near axes; 0 = automatic
  double uniform_fraction = 0.5;
};

// Recommended scheme: tensor for n = 1, mcis otherwise.
IntegrationScheme default_scheme(int n, std::uint64_t seed = 1, long samples = 200000);

// Throws InvalidArgument for tensor with n != 1 or fewer than 1000 samples.
void validate_scheme(const IntegrationScheme& s, int n);

// Recommended depth for integrands at log radius t.
double default_depth(double t);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  long samples_used = 0;
};

// Nodes on S^{2n+1} representing points of CP^n, with weights. For random
// rules the weights are importance ratios and the estimate is
// self-normalized against the exact total volume pi^n; for the tensor rule
// they are absolute quadrature weights.
struct CpnRule {
  int n = 0;
  bool random = false;
  std::vector<CVec> points;
  std::vector<double> weights;
  std::vector<double> phases;  // fiber angle per node (0 for tensor)
  std::vector<double> aux;     // extra uniform variate per node (random rules)

  std::size_t size() const { return points.size(); }
  Estimate integrate(std::span<const double> f) const;
};

CpnRule make_cpn_rule(int n, const IntegrationScheme& scheme, double depth,
                      std::uint64_t stream = 0);

using CpnField = std::function<double(const CVec& unit_point)>;

// Integral of f against omega_FS^n (f evaluated on unit representatives).
Estimate integrate_cpn(const CpnField& f, int n, const IntegrationScheme& scheme);

enum class RadiusSampling { log_uniform, power };

// Integral of g over {r1 < |z| < r2} in C^{n+1} against Lebesgue measure.
// The tensor path integrates the fiber with a single node and therefore
// expects an S^1-invariant integrand.
using AmbientField = std::function<double(const CVec& z)>;
Estimate integrate_shell(const AmbientField& g, int n, double r1, double r2,
                         const IntegrationScheme& scheme,
                         RadiusSampling mode = RadiusSampling::power);

// Same integral with a scale-free integrand: gs(t, xi) = e^{(2n+2)t} g(e^t xi)
// for |xi| = 1. Requires 0 < r1 < r2.
using ScaledShellField = std::function<double(double t, const CVec& xi)>;
Estimate integrate_shell_scaled(const ScaledShellField& gs, int n, double t1, double t2,
                                const IntegrationScheme& scheme);

// Spherical mean (1/|S^{2n+1}|) \int u(r xi) dsigma(xi).
Estimate sphere_mean(const AmbientField& u, int n, double r, const IntegrationScheme& scheme);

struct Limit {
  double value = 0.0;
  double uncertainty = 0.0;
  bool model_fit = false;  // true when the exponential model was used
};

// Limit of values(t) as t -> -infinity along a strictly decreasing grid.
// Fits L + c e^{kappa t} through the last three points when their successive
// differences shrink monotonically at a rate an exponential can match;
// otherwise returns the last value with uncertainty |last - previous|. With
// four or more points the fitted model must also reproduce the fourth-last
// value, else the uncertainty is widened to the last difference.
Limit extrapolate_limit(std::span<const double> ts, std::span<const double> values);

// Gauss-Legendre nodes/weights on [a, b].
void gauss_legendre(int order, double a, double b, std::vector<double>& x, std::vector<double>& w);

}  // namespace mamass
