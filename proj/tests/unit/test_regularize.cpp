#include <doctest.h>

#include <cmath>
#include <random>

#include "mamass/errors.hpp"
#include "mamass/functions.hpp"
#include "mamass/regularize.hpp"

using namespace mamass;

namespace {

const char* kMono = "monomial_ideal(m=[[1,0],[0,2]],w=[1,1])";
const char* kNormSq = "smooth_poly(terms=[(1,[1,0],[1,0]),(1,[0,1],[0,1])])";

std::vector<CVec> sample_points(int count, std::uint64_t seed, double rmin, double rmax) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> N;
  std::vector<CVec> pts;
  for (int i = 0; i < count; ++i) {
    CVec p(2);
    p << cplx(N(gen), N(gen)), cplx(N(gen), N(gen));
    pts.push_back(p * ((rmin + (rmax - rmin) * i / std::max(1, count - 1)) / p.norm()));
  }
  return pts;
}

}  // namespace

TEST_CASE("mollifier normalization") {
  Verdict v = mollifier_selfcheck();
  CHECK_MESSAGE(v.pass, v.witness);
  Mollifier m = make_mollifier(0.01);
  CHECK(m.normalization == doctest::Approx(0.382975584998474).epsilon(1e-12));
  CHECK_THROWS_AS(make_mollifier(0.0), InvalidArgument);
}

TEST_CASE("mollified smooth and radial functions") {
  FunctionSpec sq = parse_spec(kNormSq);
  CVec z(2);
  z << 0.3, cplx(0.1, 0.2);
  // u_eps = |z|^2 + kappa eps^2 with a constant kappa > 0.
  double k1 = (mollify_at(sq, z, 0.02).value - z.squaredNorm()) / (0.02 * 0.02);
  double k2 = (mollify_at(sq, z, 0.01).value - z.squaredNorm()) / (0.01 * 0.01);
  CHECK(k1 > 0.0);
  CHECK(k1 == doctest::Approx(k2).epsilon(1e-6));

  FunctionSpec lg = parse_spec("radial(profile=log,c=1)");
  CVec h(2);
  h << 0.5, 0.0;
  double prev = std::log(0.5);
  for (double eps : {0.0025, 0.005, 0.01}) {
    Estimate e = mollify_at(lg, h, eps);
    CHECK(e.value >= prev - 3.0 * e.std_error);
    CHECK(e.value <= std::log(0.5) + 1e-3);
    prev = e.value;
  }
}

TEST_CASE("monotone regularization and rotation invariance") {
  FunctionSpec m = parse_spec(kMono);
  for (const CVec& z : sample_points(16, 7, 0.1, 0.6)) {
    Estimate a = mollify_at(m, z, 0.02), b = mollify_at(m, z, 0.01);
    double u = eval_value(m, z);
    double s = std::hypot(a.std_error, b.std_error);
    CHECK(b.value >= u - 3.0 * b.std_error - 1e-12);
    CHECK(a.value >= b.value - 3.0 * s - 1e-12);
    Estimate r = mollify_at(m, z * std::polar(1.0, 1.3), 0.02);
    CHECK(std::abs(r.value - a.value) <= 3.0 * std::hypot(a.std_error, r.std_error) + 1e-12);
  }
}

TEST_CASE("mollified derivatives") {
  FunctionSpec m = parse_spec("lse_toric(a=[1,2],beta=2)");
  for (const CVec& z : sample_points(4, 11, 0.15, 0.5)) {
    const double eps = 0.02;
    AmbientEval jet = mollified_jet(m, z, eps);
    CHECK(jet.value == doctest::Approx(mollify_at(m, z, eps).value).epsilon(1e-10));
    // Mollified Hessian stays positive semidefinite.
    Eigen::SelfAdjointEigenSolver<CMat> es(jet.hess);
    CHECK(es.eigenvalues().minCoeff() >= -1e-4);
    // Against central differences of mollified values: d^2/dz dzbar = (1/4) Laplacian per slot.
    for (int j = 0; j < 2; ++j) {
      auto at = [&](cplx dz) {
        CVec p = z;
        p(j) += dz;
        return mollify_at(m, p, eps).value;
      };
      const double hg = 1e-5, hl = 1e-4;
      double lap = (at(hl) + at(-hl) + at(cplx(0, hl)) + at(cplx(0, -hl)) - 4.0 * jet.value) / (hl * hl);
      double scale = std::max(1.0, jet.hess.norm());
      CHECK(std::abs(0.25 * lap - jet.hess(j, j).real()) <= 1e-4 * scale);
      double dx = (at(hg) - at(-hg)) / (2 * hg), dy = (at(cplx(0, hg)) - at(cplx(0, -hg))) / (2 * hg);
      CHECK(std::abs(0.5 * cplx(dx, -dy) - jet.grad(j)) <= 1e-6 * std::max(1.0, jet.grad.norm()));
    }
  }
}

TEST_CASE("domain errors") {
  FunctionSpec m = parse_spec(kMono);
  CVec z(2);
  z << 0.01, 0.0;
  CHECK_THROWS_AS(mollify_at(m, z, 0.01), TooCloseToOrigin);
  CVec z3(3);
  z3 << 0.3, 0.2, 0.1;
  CHECK_THROWS_AS(mollify_at(parse_spec("radial(profile=log,c=1)"), z3, 0.01), UnsupportedDimension);
  CHECK_THROWS_AS(mass_convergence_check(m, -6.0, {0.02, 0.01, 0.005}), TooCloseToOrigin);
}

TEST_CASE("Friedrichs commutator") {
  auto pts = sample_points(8, 5, 0.17, 0.33);
  FriedrichsOptions opt;
  opt.gradient_scheme.samples = 50000;
  Verdict r = friedrichs_check(parse_spec("radial(profile=log,c=1)"), pts, 0.02, opt);
  CHECK_MESSAGE(r.pass, r.witness);
  FunctionSpec m = parse_spec(kMono);
  Verdict v = friedrichs_check(m, pts, 0.02, opt);
  CHECK_MESSAGE(v.pass, v.witness);
  // The defect is quadratic in eps: halving eps quarters it.
  for (const CVec& z : pts) {
    double a = friedrichs_defect(m, z, 0.02), b = friedrichs_defect(m, z, 0.01);
    CHECK(b / a >= 0.2);
    CHECK(b / a <= 0.3);
  }
}

TEST_CASE("slope bound for mollified functions") {
  for (const char* text : {"radial(profile=log,c=1)", kMono, "lse_toric(a=[1,2],beta=2)"}) {
    Verdict v = mollified_slope_bound(parse_spec(text), 3.0, 6.0, {0.02, 0.01});
    INFO(text, " ", v.witness);
    CHECK(v.pass);
  }
  Verdict adm = mollified_slope_bound(parse_spec(kMono), 2.0, 3.0, {0.01, 0.005});
  CHECK_MESSAGE(adm.pass, adm.witness);
  CHECK(adm.witness.find("admissible bound") == std::string::npos);
}

TEST_CASE("mollified boundary mass converges") {
  MassConvergence r = mass_convergence_check(parse_spec("radial(profile=log,c=1)"), -2.0, {0.02, 0.01, 0.005});
  CHECK_MESSAGE(r.verdict.pass, r.verdict.witness);
  CHECK(r.mass.value == doctest::Approx(1.0).epsilon(1e-9));

  IntegrationScheme s{SchemeKind::mcis, 1000, 1};
  MassConvergence m = mass_convergence_check(parse_spec(kMono), -2.0, {0.02, 0.01, 0.005}, s);
  CHECK_MESSAGE(m.verdict.pass, m.verdict.witness);
  REQUIRE(m.gaps.size() == 3);
  CHECK(m.gaps[2] < m.gaps[1]);
  CHECK(m.gaps[1] < m.gaps[0]);
}
