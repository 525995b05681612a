#include <doctest.h>

#include <cmath>
#include <random>

#include "mamass/errors.hpp"
#include "mamass/frames.hpp"
#include "mamass/functions.hpp"

using namespace mamass;

namespace {

const char* kNormSq = "smooth_poly(terms=[(1,[1,0],[1,0]),(1,[0,1],[0,1])])";
const char* kSpecs[] = {kNormSq,
                        "smooth_poly(terms=[(1,[1,0],[1,0]),(1,[0,1],[0,1]),(1,[2,1],[0,1])])",
                        "radial(profile=log,c=1)",
                        "loglinear(A=[[1,1],[0,1]])",
                        "monomial_ideal(m=[[1,0],[0,2]],w=[1,1])",
                        "lse_toric(a=[1,2],beta=2)"};

CVec random_point(std::mt19937_64& gen, int d, double scale) {
  std::normal_distribution<double> N;
  CVec z(d);
  for (int j = 0; j < d; ++j) z(j) = cplx(N(gen), N(gen)) * scale;
  return z;
}

}  // namespace

TEST_CASE("adapted frame at simple points") {
  CVec z(2);
  z << 1.0, 0.0;
  UnitaryFrame F = adapted_frame(z);
  CHECK(F.pivot == 0);
  CHECK((F.vectors() - CMat::Identity(2, 2)).norm() < 1e-15);

  z << 0.0, std::exp(-2.0);
  F = adapted_frame(z);
  CHECK(F.pivot == 1);
  CHECK(std::abs(F.vectors()(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(F.vectors()(0, 1)) == doctest::Approx(1.0));

  CHECK_THROWS_AS(adapted_frame(CVec::Zero(2)), ZeroPoint);
}

TEST_CASE("adapted frames are unitary and equivariant") {
  std::mt19937_64 gen(17);
  for (int d = 2; d <= 4; ++d)
    for (int i = 0; i < 50; ++i) {
      CVec z = random_point(gen, d, 0.5);
      UnitaryFrame F = adapted_frame(z);
      CHECK((F.a * F.a.adjoint() - CMat::Identity(d, d)).norm() < 1e-13);
      CHECK((F.vectors().col(0) - z / z.norm()).norm() < 1e-14);
      cplx phase = std::polar(1.0, 0.7);
      UnitaryFrame R = adapted_frame(phase * z, F.pivot);
      CHECK((R.vectors() - phase * F.vectors()).norm() < 1e-13);
    }
}

TEST_CASE("Hessian components in the frame") {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 10; ++i) {
    CVec z = random_point(gen, 2, 0.2);
    // ddbar |z|^2 is the identity in any unitary coframe.
    FrameHessian sq = frame_hessian(parse_spec(kNormSq), z);
    CHECK((sq.components - CMat::Identity(2, 2)).norm() < 1e-13);
    CHECK(sq.t == doctest::Approx(std::log(z.norm())));

    for (const char* text : kSpecs) {
      FunctionSpec f = parse_spec(text);
      FrameHessian H = frame_hessian(f, z);
      AmbientEval amb = eval_ambient(f, z);
      INFO(text);
      CHECK((H.components - H.components.adjoint()).norm() <= 1e-12 * std::max(1.0, H.components.norm()));
      Eigen::SelfAdjointEigenSolver<CMat> a(amb.hess, Eigen::EigenvaluesOnly), b(H.components, Eigen::EigenvaluesOnly);
      CHECK((a.eigenvalues() - b.eigenvalues()).norm() <= 1e-12 * std::max(1.0, a.eigenvalues().norm()));
    }
  }
}

TEST_CASE("decomposition and restriction through frame derivatives") {
  std::mt19937_64 gen(3);
  for (const char* text : kSpecs) {
    FunctionSpec f = parse_spec(text);
    for (int k = 0; k < 3; ++k) {
      CVec z = random_point(gen, 2, 0.2);
      Verdict d = hessian_decomposition_check(f, z);
      INFO(text, " ", d.witness);
      CHECK(d.pass);
      if (f.invariant()) {
        Verdict r = restriction_check(f, z);
        INFO(r.witness);
        CHECK(r.pass);
      }
    }
  }
  CVec z3 = random_point(gen, 3, 0.3);
  CHECK(hessian_decomposition_check(parse_spec("monomial_ideal(m=[[1,0,0],[0,2,0],[0,0,1]])"), z3).pass);
}

TEST_CASE("frame derivative scalars") {
  CVec z(2);
  z << 0.3, cplx(0.1, -0.2);
  FunctionSpec f = parse_spec("lse_toric(a=[1,2],beta=2)");
  FrameDerivatives D = frame_derivatives(f, z);
  FrameHessian H = frame_hessian(f, z);
  CHECK(std::abs(D.u_0bar - H.u_0bar) < 1e-12);
  CHECK(std::abs(D.u_0_0bar - H.u_0_0bar) < 1e-6);
  // (1,1) commutation.
  CHECK((D.u_abar_0bar - D.u_0bar_abar - 0.5 * D.u_abar).norm() < 1e-5);
}

TEST_CASE("connection forms are skew-Hermitian") {
  CVec z(2);
  z << 1.0, 0.0;
  CHECK(antisymmetry_check(z).pass);
  CVec z3(3);
  z3 << 0.3, cplx(0.1, 0.2), -0.4;
  Verdict v = antisymmetry_check(z3);
  CHECK_MESSAGE(v.pass, v.witness);
  // A frame that is not unitary away from the base point fails.
  Verdict bad = antisymmetry_check(
      z3, 1e-5, [](const CVec& w) { return CMat(adapted_frame(w, 2).vectors() * (1.0 + w.squaredNorm())); });
  CHECK_FALSE(bad.pass);
}
