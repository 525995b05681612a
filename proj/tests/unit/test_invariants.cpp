#include <doctest.h>

#include <cmath>

#include "mamass/errors.hpp"
#include "mamass/functions.hpp"
#include "mamass/invariants.hpp"

using namespace mamass;

namespace {

const char* kMono = "monomial_ideal(m=[[1,0],[0,2]],w=[1,1])";
const std::vector<double> kDeep{-1e2, -1e3, -1e4, -1e5};

IntegrationScheme tensor() { return default_scheme(1); }

}  // namespace

TEST_CASE("Lelong number by spherical-mean slopes") {
  Trace r = lelong_by_slope(parse_spec("radial(profile=log,c=3)"), 1, {-5.0, -10.0, -20.0}, tensor());
  for (double v : r.values) CHECK(v == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(r.limit.value == doctest::Approx(3.0).epsilon(1e-9));

  Trace m = lelong_by_slope(parse_spec(kMono), 1, kDeep, tensor());
  CHECK(std::abs(m.limit.value - 1.0) <= 1e-2);

  Trace s = lelong_by_slope(parse_spec("sqrt_compose(radial(profile=log,c=1))"), 1, kDeep, tensor());
  CHECK(std::abs(s.limit.value) <= 1e-2);
  CHECK(s.values[0] == doctest::Approx(0.5 / std::sqrt(100.0)).epsilon(1e-2));
  // Slopes do not increase toward the origin (convexity of the spherical mean).
  for (std::size_t i = 1; i < s.values.size(); ++i) CHECK(s.values[i] <= s.values[i - 1] + 1e-12);

  CHECK_THROWS_AS(lelong_by_slope(parse_spec(kMono), 1, {-5.0, -10.0}, tensor()), InsufficientData);
  CHECK_THROWS_AS(lelong_by_slope(parse_spec(kMono), 1, {-5.0, -1.0, -10.0}, tensor()), InvalidArgument);
}

TEST_CASE("Lelong number by the I functional") {
  Trace r = lelong_by_I(parse_spec("radial(profile=log,c=1.5)"), 1, {-5.0, -10.0, -20.0}, tensor(), 2);
  CHECK(r.limit.value == doctest::Approx(2.25).epsilon(1e-9));
  Trace l = lelong_by_I(parse_spec("loglinear(A=[[1,1],[0,1]])"), 1, {-5.0, -10.0, -20.0}, tensor(), 1);
  CHECK(l.limit.value == doctest::Approx(1.0).epsilon(1e-9));

  FunctionSpec m = parse_spec(kMono);
  Trace p2 = lelong_by_I(m, 1, kDeep, tensor(), 2);
  CHECK(std::abs(p2.limit.value - 1.0) <= 2e-2);
  Trace p1 = lelong_by_I(m, 1, kDeep, tensor(), 1);
  Trace sl = lelong_by_slope(m, 1, kDeep, tensor());
  CHECK(std::abs(std::sqrt(p2.limit.value) - sl.limit.value) <= p2.limit.uncertainty + sl.limit.uncertainty + 1e-3);
  CHECK(std::abs(p1.limit.value - sl.limit.value) <= p1.limit.uncertainty + sl.limit.uncertainty + 1e-3);

  LelongEstimate nu = lelong_number(m, 1, kDeep, tensor());
  CHECK(std::abs(nu.by_I - 1.0) <= 1e-2);
  CHECK(std::abs(nu.by_slope - 1.0) <= 1e-2);
}

TEST_CASE("directional Lelong numbers") {
  CVec zeta(1);
  zeta << cplx(0.3, 0.5);
  Trace r = directional_lelong(parse_spec("radial(profile=log,c=2)"), zeta, 0, -40.0);
  CHECK(r.limit.value == doctest::Approx(2.0).epsilon(1e-9));

  FunctionSpec m = parse_spec(kMono);
  CHECK(std::abs(directional_lelong(m, zeta, 0, -40.0).limit.value - 1.0) <= 1e-3);
  CHECK(std::abs(directional_lelong(m, CVec::Zero(1), 1, -40.0).limit.value - 2.0) <= 1e-3);

  Trace s = directional_lelong(parse_spec("sqrt_compose(radial(profile=log,c=1))"), zeta, 0, kDeep);
  CHECK(std::abs(s.limit.value) <= 1e-2);
  for (std::size_t i = 1; i < s.values.size(); ++i) CHECK(s.values[i] <= s.values[i - 1]);
}

TEST_CASE("maximal directional Lelong numbers") {
  CHECK(max_directional(parse_spec("radial(profile=log,c=1.5)"), 2, 7.0, 256).value ==
        doctest::Approx(1.5).epsilon(1e-12));

  MaxDirectional m = max_directional(parse_spec(kMono), 1, 20.0, 1024);
  CHECK(m.value <= 2.0 + 1e-9);
  CHECK(m.value >= 2.0 - 1e-2);

  MaxDirectional l = max_directional(parse_spec("lse_toric(a=[1,3],beta=2)"), 1, 20.0, 1024);
  CHECK(std::abs(l.value - 3.0) <= 5e-2);

  DirectionalProfile prof = directional_profile(parse_spec(kMono), 1, {1e2, 1e3, 1e4, 1e5}, 1024);
  Limit lam = lambda_extrapolate(prof);
  CHECK(std::abs(lam.value - 2.0) <= 2e-2);
  CHECK(lam.value <= *std::min_element(prof.M_values.begin(), prof.M_values.end()) + 1e-12);

  DirectionalProfile sq = directional_profile(parse_spec(std::string("sqrt_compose(") + kMono + ")"), 1,
                                              {1e2, 1e3, 1e4, 1e5}, 1024);
  CHECK(std::abs(lambda_extrapolate(sq).value) <= 2e-2);
  for (std::size_t i = 1; i < sq.M_values.size(); ++i)
    CHECK(sq.M_values[i] <= sq.M_values[i - 1] + 1e-9 + sq.gaps[i] + sq.gaps[i - 1]);
}

TEST_CASE("I and calI functionals") {
  Functionals r = functionals_I(parse_spec("radial(profile=log,c=2)"), 1, -3.0, tensor());
  CHECK(r.I.value == doctest::Approx(2.0 * M_PI).epsilon(1e-10));
  CHECK(r.calI.value == doctest::Approx(-6.0 * M_PI).epsilon(1e-10));
  CHECK(r.dcalI_dt == doctest::Approx(r.I.value).epsilon(1e-4));

  Functionals l = functionals_I(parse_spec("loglinear(A=[[1,1],[0,1]])"), 1, -3.0, tensor());
  CHECK(l.I.value == doctest::Approx(M_PI).epsilon(1e-10));

  Functionals m = functionals_I(parse_spec(kMono), 1, -20.0, tensor());
  CHECK(m.I.value / M_PI >= 1.0 - 1e-9);
  CHECK(m.I.value / M_PI <= 2.0 + 1e-9);
  CHECK(m.dcalI_dt == doctest::Approx(m.I.value).epsilon(1e-4));

  CHECK_THROWS_AS(functionals_I(parse_spec(kMono), 1, -0.5, tensor()), InvalidArgument);
}

TEST_CASE("infimum gap inequality") {
  InfimumGapOptions opt;
  opt.sphere_samples = 512;
  opt.grid_density = 256;
  Verdict r = infimum_gap_check(parse_spec("radial(profile=log,c=1)"), opt);
  CHECK(r.pass);
  CHECK(r.residual <= 1e-6);

  opt.A2 = 8.0;
  CHECK(infimum_gap_check(parse_spec(kMono), opt).pass);
  CHECK(infimum_gap_check(parse_spec("lse_toric(a=[1,3],beta=2)"), opt).pass);

  opt.A1 = 0.5;
  CHECK_THROWS_AS(infimum_gap_check(parse_spec(kMono), opt), InvalidArgument);
}

TEST_CASE("monotonicity and convexity suite on the catalog") {
  for (const auto& entry : psh_catalog(1)) {
    MonotonicityOptions opt;
    opt.grid_density = 256;
    for (const Verdict& v : monotonicity_suite(entry.spec, 1, tensor(), opt)) {
      INFO(entry.name, " ", v.name, " ", v.witness);
      CHECK(v.pass);
    }
  }
}

TEST_CASE("scaling covariance of the invariants") {
  FunctionSpec m = parse_spec(kMono);
  LelongEstimate base = lelong_number(m, 1, kDeep, tensor());
  for (double s : {0.5, 3.0}) {
    FunctionSpec scaled = parse_spec("scale(" + std::to_string(s) + "," + kMono + ")");
    LelongEstimate e = lelong_number(scaled, 1, kDeep, tensor());
    CHECK(e.by_slope == doctest::Approx(s * base.by_slope).epsilon(1e-9));
    MaxDirectional a = max_directional(m, 1, 10.0, 256);
    MaxDirectional b = max_directional(scaled, 1, 10.0, 256);
    CHECK(b.value == doctest::Approx(s * a.value).epsilon(1e-9));
  }
}

TEST_CASE("invariants reject non-invariant functions") {
  FunctionSpec p = parse_spec("smooth_poly(terms=[(1,[2,0],[0,0])])");
  CHECK_THROWS_AS(lelong_number(p, 1, kDeep, tensor()), NotInvariant);
  CHECK_THROWS_AS(functionals_I(p, 1, -2.0, tensor()), NotInvariant);
}
