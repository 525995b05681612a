#include <doctest.h>

#include <cmath>
#include <random>

#include "mamass/errors.hpp"
#include "mamass/functions.hpp"
#include "mamass/geometry.hpp"

using namespace mamass;

namespace {

const char* kMono = "monomial_ideal(m=[[1,0],[0,2]],w=[1,1])";
const char* kNormSq = "smooth_poly(terms=[(1,[1,0],[1,0]),(1,[0,1],[0,1])])";

CVec random_point(std::mt19937_64& gen, int d, double r) {
  std::normal_distribution<double> N;
  CVec z(d);
  for (int j = 0; j < d; ++j) z(j) = cplx(N(gen), N(gen));
  return z * (r / z.norm());
}

// Central differences of u along real and imaginary coordinate directions.
AmbientEval finite_difference_jet(const FunctionSpec& f, const CVec& z, double h) {
  const int d = static_cast<int>(z.size());
  auto u = [&](const CVec& p) { return eval_value(f, p); };
  auto shift = [&](int j, cplx dz) {
    CVec p = z;
    p(j) += dz;
    return p;
  };
  AmbientEval out;
  out.value = u(z);
  out.grad = CVec(d);
  out.hess = CMat(d, d);
  for (int j = 0; j < d; ++j) {
    double dx = (u(shift(j, h)) - u(shift(j, -h))) / (2 * h);
    double dy = (u(shift(j, cplx(0, h))) - u(shift(j, cplx(0, -h)))) / (2 * h);
    out.grad(j) = 0.5 * cplx(dx, -dy);
  }
  // d^2u/dz_j dzbar_k = (1/4)(D_xj - i D_yj)(D_xk + i D_yk) u.
  auto second = [&](cplx a, int j, cplx b, int k) {
    auto p = [&](double s1, double s2) {
      CVec q = z;
      q(j) += s1 * a;
      q(k) += s2 * b;
      return u(q);
    };
    return (p(h, h) - p(h, -h) - p(-h, h) + p(-h, -h)) / (4 * h * h);
  };
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      double xx = second(1.0, j, 1.0, k), xy = second(1.0, j, cplx(0, 1), k);
      double yx = second(cplx(0, 1), j, 1.0, k), yy = second(cplx(0, 1), j, cplx(0, 1), k);
      out.hess(j, k) = 0.25 * cplx(xx + yy, xy - yx);
    }
  return out;
}

}  // namespace

TEST_CASE("parsing the catalog grammar") {
  FunctionSpec r = parse_spec("radial(profile=log,c=2)");
  CHECK(r.kind == FunctionKind::radial);
  CHECK(r.c == 2.0);
  CVec z(2);
  z << 0.3, cplx(0.1, 0.2);
  CHECK(eval_value(r, z) == doctest::Approx(2.0 * std::log(z.norm())));

  FunctionSpec m = parse_spec(kMono);
  CHECK(eval_value(m, z) ==
        doctest::Approx(0.5 * std::log(std::norm(z(0)) + std::pow(std::norm(z(1)), 2))));

  FunctionSpec l = parse_spec("loglinear(A=[[1,1],[0,1]])");
  CVec Az(2);
  Az << z(0) + z(1), z(1);
  CHECK(eval_value(l, z) == doctest::Approx(std::log(Az.norm())));
  CHECK(l.ambient_dim() == 2);

  FunctionSpec s = parse_spec("sqrt_compose(radial(profile=log,c=1))");
  CVec small = z * 0.1;
  CHECK(eval_value(s, small) == doctest::Approx(-std::sqrt(-std::log(small.norm()))));
  CHECK_THROWS_AS(eval_value(s, z), OutsideDomain);

  FunctionSpec p = parse_spec("smooth_poly(terms=[(1-2i,[2,0],[0,1])])");
  CHECK(p.terms.size() == 1);
  CHECK_FALSE(p.invariant());
  CHECK(parse_spec(kNormSq).invariant());
  CHECK(parse_spec("scale(0.5,radial(profile=log,c=1))").invariant());

  CHECK_THROWS_AS(parse_spec("radial(profile=cubic,c=1)"), ParseError);
  CHECK_THROWS_AS(parse_spec("monomial_ideal(m=[[1,0]],w=[1,1])"), ParseError);
  CHECK_THROWS_AS(parse_spec("nonsense"), ParseError);
  CHECK_THROWS_AS(check_dimension(l, 2), DimensionMismatch);
}

TEST_CASE("analytic jets of closed-form members") {
  CVec z(2);
  z << cplx(0.3, -0.2), cplx(0.1, 0.4);
  const double r2 = z.squaredNorm();
  AmbientEval e = eval_ambient(parse_spec("radial(profile=log,c=1)"), z);
  CMat expect = 0.5 * (CMat::Identity(2, 2) / r2 - z.conjugate() * z.transpose() / (r2 * r2));
  CHECK((e.hess - expect).norm() < 1e-12);
  CHECK(std::abs(e.hess.determinant()) < 1e-10);

  AmbientEval q = eval_ambient(parse_spec(kNormSq), z);
  CHECK((q.hess - CMat::Identity(2, 2)).norm() < 1e-14);
  CHECK(q.value == doctest::Approx(r2));
}

TEST_CASE("analytic derivatives match finite differences") {
  std::mt19937_64 gen(21);
  const char* specs[] = {"radial(profile=log,c=1.5)", "radial(profile=sqrtlog,c=1)", "loglinear(A=[[2,1],[0,1]])",
                         kMono, "lse_toric(a=[1,3],beta=2)", "sqrt_compose(monomial_ideal(m=[[1,0],[0,2]],w=[1,1]))",
                         "smooth_poly(terms=[(1,[1,0],[1,0]),(0.3,[2,0],[0,1])])"};
  for (const char* text : specs) {
    FunctionSpec f = parse_spec(text);
    for (int i = 0; i < 100; ++i) {
      CVec z = random_point(gen, 2, 0.02 + 0.3 * (i % 10) / 10.0);
      AmbientEval a = eval_ambient(f, z);
      AmbientEval fd = finite_difference_jet(f, z, 1e-4 * z.norm());
      // Log-homogeneous members have |du| ~ 1/|z| and |ddbar u| ~ 1/|z|^2.
      double gs = std::max(a.grad.norm(), 1.0 / z.norm()), hs = std::max(a.hess.norm(), 1.0 / z.squaredNorm());
      INFO(std::string(text), " |z|=", z.norm());
      CHECK((a.grad - fd.grad).norm() <= 1e-6 * gs);
      CHECK((a.hess - fd.hess).norm() <= 1e-5 * hs);
    }
  }
  // Near the z1 = 0 axis of the monomial member at small radius.
  CVec z(2);
  z << std::exp(-5.0), 0.0;
  FunctionSpec m = parse_spec(kMono);
  AmbientEval a = eval_ambient(m, z);
  AmbientEval fd = finite_difference_jet(m, z, 1e-4 * z.norm());
  CHECK((a.grad - fd.grad).norm() <= 1e-6 * a.grad.norm());
}

TEST_CASE("transversal data") {
  CVec zeta(1);
  zeta << cplx(0.4, -0.7);
  TransversalEval r = eval_transversal(parse_spec("radial(profile=log,c=1.5)"), -3.0, zeta, 0);
  CHECK(r.u_dot == doctest::Approx(1.5));
  CHECK(r.H.norm() < 1e-12);
  TransversalEval l = eval_transversal(parse_spec("loglinear(A=[[2,1],[0,1]])"), -7.0, zeta, 1);
  CHECK(l.u_dot == doctest::Approx(1.0));
  CHECK((l.Theta - (l.u_dot * l.G + l.H)).norm() < 1e-12);

  TransversalEval axis = eval_transversal(parse_spec(kMono), -10.0, CVec::Zero(1), 1);
  CHECK(std::abs(axis.u_dot - 2.0) <= 1e-3);

  CHECK_THROWS_AS(eval_transversal(parse_spec("smooth_poly(terms=[(1,[2,0],[0,0])])"), -1.0, zeta, 0), NotInvariant);

  std::mt19937_64 gen(2);
  for (const char* text : {kMono, "lse_toric(a=[1,2],beta=2)", "loglinear(A=[[1,2],[3,1]])"}) {
    FunctionSpec f = parse_spec(text);
    for (int i = 0; i < 20; ++i) {
      CVec w = random_point(gen, 1, 0.2 + 0.1 * i);
      TransversalEval a = eval_transversal(f, -2.0, w, i % 2);
      TransversalEval d = eval_transversal_fd(f, -2.0, w, i % 2);
      INFO(std::string(text));
      CHECK(std::abs(a.u_dot - d.u_dot) <= 1e-6 * std::max(1.0, std::abs(a.u_dot)));
      CHECK((a.H - d.H).norm() <= 1e-5 * std::max(1.0, a.H.norm()));
    }
  }
}

TEST_CASE("plurisubharmonicity and the psh catalog") {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& entry : psh_catalog(n)) {
      PshCheckOptions opt;
      opt.n = n;
      Verdict v = psh_check(entry.spec, opt);
      INFO(entry.name, " n=", n, " ", v.witness);
      CHECK(v.pass);
    }
  }
  PshCheckOptions opt;
  Verdict neg = psh_check(parse_spec("smooth_poly(terms=[(-1,[1,0],[1,0]),(-1,[0,1],[0,1])])"), opt);
  CHECK_FALSE(neg.pass);
  CHECK_THROWS_AS(ensure(neg), CheckFailed);
}

TEST_CASE("slopes are non-negative and u_t is convex along rays") {
  std::mt19937_64 gen(8);
  for (const auto& entry : psh_catalog(1)) {
    for (int i = 0; i < 30; ++i) {
      CVec zeta = random_point(gen, 1, 0.1 + 0.1 * i);
      int chart = i % 2;
      double t = -1.5 - 0.5 * i;
      double h = 0.1;
      TransversalEval a = eval_transversal(entry.spec, t - h, zeta, chart);
      TransversalEval b = eval_transversal(entry.spec, t, zeta, chart);
      TransversalEval c = eval_transversal(entry.spec, t + h, zeta, chart);
      INFO(entry.name);
      CHECK(b.u_dot >= -1e-9);
      CHECK(a.u_t - 2.0 * b.u_t + c.u_t >= -1e-9);
    }
  }
}

TEST_CASE("zero slopes of square-root compositions") {
  FunctionSpec f = parse_spec("sqrt_compose(monomial_ideal(m=[[1,0],[0,2]],w=[1,1]))");
  CVec zeta(1);
  zeta << 0.7;
  double prev = eval_transversal(f, -10.0, zeta, 0).u_dot;
  for (double t : {-100.0, -1000.0, -10000.0}) {
    double s = eval_transversal(f, t, zeta, 0).u_dot;
    CHECK(s < prev);
    prev = s;
  }
  CHECK(prev < 1e-2);
}
