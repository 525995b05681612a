#include <doctest.h>

#include <cmath>

#include "mamass/errors.hpp"
#include "mamass/functions.hpp"
#include "mamass/mass.hpp"

using namespace mamass;

namespace {

const char* kMono = "monomial_ideal(m=[[1,0],[0,2]],w=[1,1])";

IntegrationScheme tensor() { return default_scheme(1); }
IntegrationScheme mcis(long samples, std::uint64_t seed = 1) { return {SchemeKind::mcis, samples, seed}; }

bool within(const Estimate& e, double expect, double sigmas = 3.0, double floor = 0.0) {
  return std::abs(e.value - expect) <= sigmas * e.std_error + floor;
}

}  // namespace

TEST_CASE("mixed ratios from generalized eigenvalues") {
  for (int n = 1; n <= 3; ++n) {
    CMat G = CMat::Identity(n, n) * 0.7;
    for (int k = 0; k <= n; ++k) {
      CHECK(mixed_wedge_ratio(G, G, k) == doctest::Approx(1.0));
      if (k >= 1) CHECK(mixed_wedge_ratio(G, CMat::Zero(n, n), k) == doctest::Approx(0.0));
    }
  }
  CMat H = CMat::Zero(2, 2);
  H(0, 0) = 1.0;
  H(1, 1) = 2.0;
  CHECK(mixed_wedge_ratio(CMat::Identity(2, 2), H, 1) == doctest::Approx(1.5));
  CHECK(mixed_wedge_ratio(CMat::Identity(2, 2), H, 2) == doctest::Approx(2.0));

  RVec lam(3);
  lam << 1.0, 2.0, 3.0;
  CHECK(ratio_from_eigs(lam, 2) == doctest::Approx(11.0 / 3.0));
  CHECK(ratio_from_eigs(lam, 0) == doctest::Approx(1.0));

  CMat Gn(2, 2);
  Gn << 2.0, cplx(0.5, 0.3), cplx(0.5, -0.3), 1.0;
  RVec e = generalized_eigs(Gn, 3.0 * Gn);
  CHECK(e(0) == doctest::Approx(3.0));
  CHECK(e(1) == doctest::Approx(3.0));
  CHECK(binom(5, 2) == 10.0);
}

TEST_CASE("radial closed form") {
  for (double c : {0.5, 1.0, 1.5}) {
    BoundaryMass bm = boundary_mass(parse_spec("radial(profile=log,c=" + std::to_string(c) + ")"), 1, -5.0, tensor());
    CHECK(bm.total.value == doctest::Approx(c * c).epsilon(1e-6));
    CHECK(std::abs(bm.per_k[1].value) < 1e-12);
  }
  BoundaryMass m2 = boundary_mass(parse_spec("radial(profile=log,c=1.5)"), 2, -10.0, mcis(2000));
  CHECK(m2.total.value == doctest::Approx(3.375).epsilon(1e-9));
  CHECK(boundary_mass_alternating(parse_spec("radial(profile=log,c=1.5)"), 2, -10.0, mcis(2000)).total.value ==
        doctest::Approx(3.375).epsilon(1e-9));
}

TEST_CASE("Stokes vanishing for loglinear members") {
  for (const char* text : {"loglinear(A=[[1,1],[0,1]])", "loglinear(A=[[2,0.5],[-1,1]])"}) {
    BoundaryMass bm = boundary_mass(parse_spec(text), 1, -5.0, tensor());
    CHECK(bm.total.value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(bm.per_k[1].value) < 1e-6);
  }
  FunctionSpec l2 = parse_spec("loglinear(A=[[1,1,0],[0,1,0],[0,0.5,2]])");
  BoundaryMass bm = boundary_mass(l2, 2, -5.0, mcis(20000));
  CHECK(within(bm.total, 1.0));
  for (int k = 1; k <= 2; ++k) CHECK(within(bm.per_k[k], 0.0));
  CHECK(within(boundary_mass_alternating(l2, 2, -5.0, mcis(20000)).total, 1.0));
}

TEST_CASE("multiplicity two monomial") {
  FunctionSpec m = parse_spec(kMono);
  BoundaryMass bm = boundary_mass(m, 1, -20.0, tensor());
  CHECK(std::abs(bm.total.value - 2.0) <= 2e-2);
  ResidualMass tau = residual_mass(m, 1, {-5.0, -10.0, -20.0, -40.0}, tensor());
  CHECK(std::abs(tau.tau - 2.0) <= 2e-2);
  CHECK(tau.trace.t_grid.size() == 4);
}

TEST_CASE("zero residual mass of the square-root composition") {
  ResidualMass tau =
      residual_mass(parse_spec("sqrt_compose(radial(profile=log,c=1))"), 1, {-5.0, -10.0, -20.0, -40.0}, tensor());
  // Closed form (2 sqrt(-t))^{-2}.
  for (std::size_t i = 0; i < tau.trace.t_grid.size(); ++i)
    CHECK(tau.trace.mass[i] == doctest::Approx(0.25 / -tau.trace.t_grid[i]).epsilon(1e-8));
  CHECK(std::abs(tau.tau) <= 1e-2);
}

TEST_CASE("alternating form agrees on the catalog") {
  for (int n = 1; n <= 2; ++n) {
    IntegrationScheme s = n == 1 ? tensor() : mcis(4000);
    for (const auto& entry : psh_catalog(n)) {
      TransversalSweep sw = sweep_transversal(entry.spec, n, -6.0, s);
      BoundaryMass a = boundary_mass_from(sw), b = boundary_mass_alternating_from(sw);
      INFO(entry.name, " n=", n);
      CHECK(std::abs(a.total.value - b.total.value) <=
            3.0 * std::hypot(a.total.std_error, b.total.std_error) + 1e-9 * std::max(1.0, std::abs(a.total.value)));
      // Normalized summands add up to the total.
      double sum = 0.0;
      for (const auto& e : a.per_k) sum += e.value;
      CHECK(sum == doctest::Approx(a.total.value).epsilon(1e-12));
    }
  }
}

TEST_CASE("theta terms expand the transversal terms") {
  TransversalSweep sw = sweep_transversal(parse_spec("lse_toric(a=[1,2],beta=2)"), 1, -4.0, tensor());
  auto th = theta_terms(sw);
  auto tr = transversal_terms(sw);
  REQUIRE(th.size() == 2);
  // Theta = u_dot G + H: ratio_1(G, Theta) = u_dot + ratio_1(G, H).
  CHECK(th[0].value == doctest::Approx(tr[0].value));
  CHECK(th[1].value == doctest::Approx(tr[0].value + tr[1].value));
}

TEST_CASE("shell oracle") {
  CHECK(std::abs(shell_oracle(parse_spec("radial(profile=log,c=1)"), 1, -8.0, -4.0, tensor()).value) < 1e-10);

  for (const char* text : {kMono, "lse_toric(a=[1,2],beta=2)"}) {
    FunctionSpec f = parse_spec(text);
    IntegrationScheme s = mcis(20000, 3);
    BoundaryMass m1 = boundary_mass(f, 1, -8.0, tensor());
    BoundaryMass m2 = boundary_mass(f, 1, -4.0, tensor());
    Estimate sh = shell_oracle(f, 1, -8.0, -4.0, s);
    INFO(text, " diff=", m2.total.value - m1.total.value, " shell=", sh.value, " sigma=", sh.std_error);
    CHECK(std::abs((m2.total.value - m1.total.value) - sh.value) <= 3.0 * sh.std_error + 1e-6);
  }
  CHECK_THROWS_AS(shell_oracle(parse_spec(kMono), 1, -4.0, -8.0, tensor()), BadRadii);
}

TEST_CASE("positivity of the transversal form") {
  PositivityOptions opt;
  opt.samples = 2000;
  CHECK(positivity_check(parse_spec("radial(profile=log,c=2)"), opt).pass);
  for (int n = 1; n <= 2; ++n) {
    opt.n = n;
    CHECK(positivity_check(parse_spec(n == 1 ? "loglinear(A=[[1,2],[0,1]])" : "loglinear(A=[[1,2,0],[0,1,0],[1,0,1]])"),
                           opt)
              .pass);
  }
  opt.n = 1;
  FunctionSpec neg = parse_spec("smooth_poly(terms=[(-1,[1,0],[1,0]),(-1,[0,1],[0,1])])");
  opt.force = true;
  Verdict v = positivity_check(neg, opt);
  CHECK_FALSE(v.pass);
  CHECK_THROWS_AS(ensure(v), CheckFailed);
}

TEST_CASE("boundary mass is monotone in t") {
  FunctionSpec f = parse_spec("monomial_ideal(m=[[1,0],[0,1],[1,1]],w=[1,1,22026])");
  double prev = -1.0;
  for (double t : {-12.0, -8.0, -6.0, -4.0}) {
    double m = boundary_mass(f, 1, t, tensor()).total.value;
    CHECK(m >= prev - 1e-6);
    prev = m;
  }
}

TEST_CASE("preconditions") {
  FunctionSpec m = parse_spec(kMono);
  CHECK_THROWS_AS(boundary_mass(m, 1, -0.5, tensor()), InvalidArgument);
  CHECK_THROWS_AS(boundary_mass(m, 2, -2.0, tensor()), DimensionMismatch);
  CHECK_THROWS_AS(boundary_mass(parse_spec("smooth_poly(terms=[(1,[2,0],[0,0])])"), 1, -2.0, tensor()), NotInvariant);
}
