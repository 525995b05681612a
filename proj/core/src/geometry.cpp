#include "mamass/geometry.hpp"

#include <cmath>
#include <sstream>

#include "fd.hpp"
#include "mamass/errors.hpp"
#include "mamass/rng.hpp"

namespace mamass {

CVec chart_lift(const CVec& zeta, int chart) {
  const int n = static_cast<int>(zeta.size());
  if (chart < 0 || chart > n) throw InvalidArgument("chart index out of range");
  CVec w(n + 1);
  w(chart) = 1.0;
  for (int a = 0; a < n; ++a) w(chart_slot(a, chart)) = zeta(a);
  return w;
}

CVec chart_coords(const AmbientPoint& z, int chart) {
  const int n = static_cast<int>(z.size()) - 1;
  if (z(chart) == cplx(0.0)) throw OnAxis("chart coordinate vanishes");
  CVec zeta(n);
  for (int a = 0; a < n; ++a) zeta(a) = z(chart_slot(a, chart)) / z(chart);
  return zeta;
}

AmbientPoint hopf_to_ambient(const HopfPoint& p) {
  CVec w = chart_lift(p.zeta, p.chart);
  const double scale = std::exp(p.t) / std::sqrt(1.0 + p.zeta.squaredNorm());
  return w * (std::polar(1.0, p.theta) * scale);
}

int argmax_chart(const AmbientPoint& z) {
  int best = 0;
  for (int j = 1; j < z.size(); ++j)
    if (std::abs(z(j)) > std::abs(z(best))) best = j;
  return best;
}

HopfPoint ambient_to_hopf(const AmbientPoint& z) {
  const double r = z.norm();
  if (!(r > 0.0)) throw ZeroPoint("ambient point has zero norm");
  HopfPoint p;
  p.chart = argmax_chart(z);
  p.t = std::log(r);
  p.theta = std::arg(z(p.chart));
  p.zeta = chart_coords(z, p.chart);
  return p;
}

CMat fs_metric_at(const CVec& zeta) {
  const int n = static_cast<int>(zeta.size());
  const double s = 1.0 + zeta.squaredNorm();
  CMat g(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      g(a, b) = 0.5 * ((a == b ? s : 0.0) - std::conj(zeta(a)) * zeta(b)) / (s * s);
  return g;
}

double fs_volume_density(const CVec& zeta) {
  const int n = static_cast<int>(zeta.size());
  return std::tgamma(n + 1.0) * std::pow(1.0 + zeta.squaredNorm(), -(n + 1.0));
}

std::vector<double> contact_form_coeffs(const CVec& zeta) {
  const double s = 1.0 + zeta.squaredNorm();
  std::vector<double> out(zeta.size());
  for (int a = 0; a < zeta.size(); ++a) {
    if (zeta(a) == cplx(0.0)) throw OnAxis("zeta component " + std::to_string(a) + " vanishes");
    out[a] = 1.0 - 2.0 * std::norm(zeta(a)) / s;
  }
  return out;
}

AmbientPoint angular_chart_to_ambient(double t, double theta, const CVec& zeta,
                                      const RVec& phi_ref) {
  double phase = 0.5 * theta;
  for (int a = 0; a < zeta.size(); ++a) {
    double phi = phi_ref(a) + std::arg(zeta(a) * std::polar(1.0, -phi_ref(a)));
    phase -= 0.5 * phi;
  }
  CVec w = chart_lift(zeta, 0);
  return w * (std::polar(1.0, phase) * std::exp(t) / std::sqrt(1.0 + zeta.squaredNorm()));
}

namespace {

// Coordinates q = (theta, x_1, y_1, ..., x_n, y_n) on the angular chart at r = 1.
CVec zeta_of(const RVec& q) {
  const int n = static_cast<int>((q.size() - 1) / 2);
  CVec z(n);
  for (int a = 0; a < n; ++a) z(a) = cplx(q(1 + 2 * a), q(2 + 2 * a));
  return z;
}

// Coefficients of eta in the q-coordinates, from the closed form.
RVec eta_coeffs(const RVec& q, double perturb) {
  CVec zeta = zeta_of(q);
  auto ck = contact_form_coeffs(zeta);
  RVec c(q.size());
  c(0) = 0.25;
  for (int a = 0; a < zeta.size(); ++a) {
    const double x = zeta(a).real(), y = zeta(a).imag(), m = std::norm(zeta(a));
    const double cos_k = ck[a] + perturb;
    // dphi = (x dy - y dx) / |zeta|^2
    c(1 + 2 * a) = 0.25 * cos_k * y / m;
    c(2 + 2 * a) = -0.25 * cos_k * x / m;
  }
  return c;
}

// (1/2) Im(zbar . v) / |z|^2, the ambient contact form on the unit sphere.
double eta_ambient(const CVec& z, const CVec& v) {
  return 0.5 * (z.adjoint() * v)(0).imag() / z.squaredNorm();
}

std::string describe(const CVec& zeta) {
  std::ostringstream os;
  os << "zeta=(";
  for (int a = 0; a < zeta.size(); ++a) os << (a ? "," : "") << zeta(a);
  os << ")";
  return os.str();
}

}  // namespace

Verdict contact_selfcheck(const ContactCheckOptions& opt) {
  const int n = opt.n;
  const int dim = 2 * n + 1;
  Verdict v{"contact_selfcheck", true, 0.0, opt.tolerance, ""};
  Stream rng(opt.seed, 0xC0417AC7ull);
  int accepted = 0;
  while (accepted < opt.samples) {
    CVec z(n + 1);
    for (int j = 0; j <= n; ++j) z(j) = cplx(rng.normal(), rng.normal());
    z /= z.norm();
    CVec zeta = chart_coords(z, 0);
    bool ok = true;
    for (int a = 0; a < n; ++a) {
      const double m = std::abs(zeta(a));
      if (m < opt.axis_exclusion || m > 1.0 / opt.axis_exclusion) ok = false;
    }
    if (!ok) continue;
    ++accepted;

    RVec phi_ref(n);
    for (int a = 0; a < n; ++a) phi_ref(a) = std::arg(zeta(a));
    RVec q(dim);
    q(0) = 0.0;
    for (int a = 0; a < n; ++a) {
      q(1 + 2 * a) = zeta(a).real();
      q(2 + 2 * a) = zeta(a).imag();
    }
    auto steps = RVec(dim);
    steps(0) = 1e-3;
    for (int a = 0; a < n; ++a) steps(1 + 2 * a) = steps(2 + 2 * a) = 1e-3 * std::abs(zeta(a));

    auto map = [&](const RVec& qq) {
      return angular_chart_to_ambient(0.0, qq(0), zeta_of(qq), phi_ref);
    };
    const CVec z0 = map(q);
    // Jacobian of the chart map, column a = d z / d q_a.
    CMat jac(n + 1, dim);
    for (int a = 0; a < dim; ++a) {
      jac.col(a) = fd::richardson(
          [&](double h) {
            RVec qq = q;
            qq(a) += h;
            return CVec(map(qq));
          },
          steps(a));
    }
    const RVec c = eta_coeffs(q, opt.coefficient_perturbation);
    double worst = 0.0;
    std::string what;
    auto record = [&](double r, const char* tag) {
      if (r > worst) {
        worst = r;
        what = tag;
      }
    };
    for (int a = 0; a < dim; ++a) record(std::abs(eta_ambient(z0, jac.col(a)) - c(a)), "pullback");

    // Reeb field: preimage of 2 i z under the chart Jacobian.
    Eigen::MatrixXd jr(2 * (n + 1), dim);
    Eigen::VectorXd target(2 * (n + 1));
    const CVec xi = cplx(0.0, 2.0) * z0;
    for (int j = 0; j <= n; ++j) {
      jr.row(2 * j) = jac.row(j).real();
      jr.row(2 * j + 1) = jac.row(j).imag();
      target(2 * j) = xi(j).real();
      target(2 * j + 1) = xi(j).imag();
    }
    const RVec xi_q = jr.colPivHouseholderQr().solve(target);
    record((jr * xi_q - target).norm(), "reeb-tangency");
    record(std::abs(c.dot(xi_q) - 1.0), "eta(xi)");

    // d eta by differentiating the coefficient formula.
    Eigen::MatrixXd dc(dim, dim);  // dc(a, b) = d c_b / d q_a
    for (int a = 0; a < dim; ++a) {
      dc.row(a) = fd::richardson(
                      [&](double h) {
                        RVec qq = q;
                        qq(a) += h;
                        return RVec(eta_coeffs(qq, opt.coefficient_perturbation));
                      },
                      steps(a))
                      .transpose();
    }
    const Eigen::MatrixXd deta = dc - dc.transpose();
    record((xi_q.transpose() * deta).cwiseAbs().maxCoeff(), "i_xi d eta");

    // omega_FS(X, Y) = -2 Im sum G X conj(Y) on coordinate vectors.
    const CMat g = fs_metric_at(zeta);
    auto basis = [&](int a) {
      CVec e = CVec::Zero(n);
      if (a == 0) return e;
      const int alpha = (a - 1) / 2;
      e(alpha) = ((a - 1) % 2 == 0) ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
      return e;
    };
    for (int a = 1; a < dim; ++a)
      for (int b = 1; b < dim; ++b) {
        const double omega = -2.0 * (basis(a).transpose() * g * basis(b).conjugate())(0).imag();
        record(std::abs(deta(a, b) - omega), "d eta = omega_FS");
      }
    if (worst > v.residual) {
      v.residual = worst;
      v.witness = describe(zeta) + " [" + what + "]";
    }
  }
  v.pass = v.residual <= v.tolerance;
  return v;
}

}  // namespace mamass
