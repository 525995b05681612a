#include <doctest.h>

#include <cmath>
#include <random>

#include "mamass/errors.hpp"
#include "mamass/geometry.hpp"

using namespace mamass;

namespace {

CVec random_point(std::mt19937_64& gen, int d) {
  std::normal_distribution<double> N;
  CVec z(d);
  for (int j = 0; j < d; ++j) z(j) = cplx(N(gen), N(gen));
  return z;
}

}  // namespace

TEST_CASE("hopf_to_ambient at the chart centre and the symmetric point") {
  HopfPoint p{0.0, 0.0, CVec::Zero(1), 0};
  CVec z = hopf_to_ambient(p);
  CHECK(std::abs(z(0) - cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(z(1)) < 1e-15);

  p.zeta = CVec::Constant(1, cplx(1.0, 0.0));
  z = hopf_to_ambient(p);
  CHECK(std::abs(z(0) - cplx(M_SQRT1_2, 0.0)) < 1e-15);
  CHECK(std::abs(z(1) - cplx(M_SQRT1_2, 0.0)) < 1e-15);
}

TEST_CASE("ambient_to_hopf on axis and diagonal points") {
  CVec z(2);
  z << 0.0, std::exp(-2.0);
  HopfPoint p = ambient_to_hopf(z);
  CHECK(p.chart == 1);
  CHECK(p.t == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(std::abs(p.zeta(0)) < 1e-15);

  z << cplx(M_SQRT1_2, 0.0), cplx(0.0, M_SQRT1_2);
  p = ambient_to_hopf(z);
  CHECK(p.chart == 0);
  CHECK(std::abs(p.t) < 1e-14);
  CHECK(std::abs(p.zeta(0) - cplx(0.0, 1.0)) < 1e-14);

  CHECK_THROWS_AS(ambient_to_hopf(CVec::Zero(3)), ZeroPoint);
}

TEST_CASE("round trip and radius for random points") {
  std::mt19937_64 gen(11);
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < 1000; ++i) {
      CVec z = random_point(gen, n + 1) * std::exp(-5.0 * (i % 7));
      HopfPoint p = ambient_to_hopf(z);
      CVec back = hopf_to_ambient(p);
      REQUIRE((back - z).norm() <= 1e-12 * z.norm());
      CHECK(std::abs(hopf_to_ambient(p).norm() - std::exp(p.t)) <= 1e-14 * std::exp(p.t));
      CHECK(std::abs(p.zeta.cwiseAbs().maxCoeff()) <= 1.0 + 1e-15);
    }
  }
}

TEST_CASE("Fubini-Study metric values, hermiticity and positivity") {
  CMat G = fs_metric_at(CVec::Zero(2));
  CHECK((G - 0.5 * CMat::Identity(2, 2)).norm() < 1e-15);

  G = fs_metric_at(CVec::Constant(1, cplx(1.0, 0.0)));
  CHECK(std::abs(G(0, 0) - 0.125) < 1e-15);

  std::mt19937_64 gen(3);
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i < 200; ++i) {
      CVec zeta = random_point(gen, n) * 3.0;
      CMat g = fs_metric_at(zeta);
      CHECK((g - g.adjoint()).norm() < 1e-15);
      Eigen::SelfAdjointEigenSolver<CMat> es(g);
      CHECK(es.eigenvalues().minCoeff() > 0.0);
      // i dzeta ^ dzetabar = 2 dx ^ dy, so the density of omega^n is n! 2^n det G.
      double fact = std::tgamma(n + 1.0) * std::pow(2.0, n);
      CHECK(fs_volume_density(zeta) == doctest::Approx(fact * g.determinant().real()).epsilon(1e-12));
    }
}

TEST_CASE("contact form coefficients") {
  CVec zeta(1);
  zeta << cplx(0.6, 0.8);
  CHECK(std::abs(contact_form_coeffs(zeta)[0]) < 1e-15);

  CVec z2(2);
  z2 << 1.0, 1.0;
  auto c = contact_form_coeffs(z2);
  CHECK(c[0] == doctest::Approx(1.0 / 3.0));
  CHECK(c[1] == doctest::Approx(1.0 / 3.0));

  zeta << 1e-8;
  CHECK(contact_form_coeffs(zeta)[0] == doctest::Approx(1.0));
  zeta << 0.0;
  CHECK_THROWS_AS(contact_form_coeffs(zeta), OnAxis);

  std::mt19937_64 gen(5);
  for (int i = 0; i < 100; ++i) {
    CVec w = random_point(gen, 3) * 4.0;
    for (double v : contact_form_coeffs(w)) CHECK(std::abs(v) <= 1.0);
  }
}

TEST_CASE("contact structure self-check") {
  for (int n = 1; n <= 3; ++n) {
    ContactCheckOptions opt;
    opt.n = n;
    Verdict v = contact_selfcheck(opt);
    CHECK_MESSAGE(v.pass, v.witness);
    CHECK(v.residual < 1e-6);
  }
  ContactCheckOptions bad;
  bad.coefficient_perturbation = 1e-3;
  Verdict v = contact_selfcheck(bad);
  CHECK_FALSE(v.pass);
  CHECK_THROWS_AS(ensure(v), CheckFailed);
}
