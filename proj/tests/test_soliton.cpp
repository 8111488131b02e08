#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "warpcheck/soliton.hpp"
#include "test_util.hpp"

using namespace warpcheck;

namespace {

MetricField line(const std::string& name, std::array<double, 2> box) {
  std::vector<std::string> c = {name};
  return MetricField::create(c, {Expr::constant(1.0)}, DomainPredicate::always(), "line", {box});
}

WarpedProduct cosh_warp() {
  return WarpedProduct::create(line("t", {-1.5, 1.5}), line("u", {-1.5, 1.5}),
                               parse("cosh(t)", std::vector<std::string>{"t"}));
}

WarpedProduct exp_warp() {
  return WarpedProduct::create(line("t", {-1.5, 1.5}), line("u", {-1.5, 1.5}),
                               parse("exp(t)", std::vector<std::string>{"t"}));
}

SolitonData flagship() {
  auto wp = cosh_warp();
  const auto& c = wp.product().coords();
  return SolitonData{wp, parse("cosh(t)*exp(u)", c), parse("cosh(t)*exp(u) - 1", c)};
}

SolitonData base_only_instance() {
  auto wp = exp_warp();
  const auto& c = wp.product().coords();
  return SolitonData{wp, parse("exp(t)", c), parse("exp(t) - 1", c)};
}

// Brinkmann base: g_uv = 1 on v > -2, h = 2 + v, fiber flat R^1.
SolitonData brinkmann() {
  std::vector<std::string> bc = {"u", "v"};
  std::vector<Expr> bu(3);
  bu[MetricField::tri_index(2, 0, 1)] = Expr::constant(1.0);
  auto base = MetricField::create(bc, bu, DomainPredicate::parse("v > -2", bc), "brinkmann base",
                                  {{-1.0, 1.0}, {-1.0, 1.0}});
  auto wp = WarpedProduct::create(base, line("w", {-1.0, 1.0}), parse("2 + v", bc));
  const auto& c = wp.product().coords();
  return SolitonData{wp, parse("u - (2 + v)*w^2/2", c), Expr::constant(0.0)};
}

MetricField euclidean2() {
  std::vector<std::string> c = {"x", "y"};
  std::vector<Expr> u(3);
  u[MetricField::tri_index(2, 0, 0)] = Expr::constant(1.0);
  u[MetricField::tri_index(2, 1, 1)] = Expr::constant(1.0);
  return MetricField::create(c, u, DomainPredicate::always(), "R2_0");
}

MetricField minkowski2() {
  std::vector<std::string> c = {"x", "y"};
  std::vector<Expr> u(3);
  u[MetricField::tri_index(2, 0, 0)] = Expr::constant(-1.0);
  u[MetricField::tri_index(2, 1, 1)] = Expr::constant(1.0);
  return MetricField::create(c, u, DomainPredicate::always(), "R2_1");
}

MetricField sphere2() {
  std::vector<std::string> c = {"theta", "phi"};
  std::vector<Expr> u(3);
  u[MetricField::tri_index(2, 0, 0)] = Expr::constant(1.0);
  u[MetricField::tri_index(2, 1, 1)] = parse("sin(theta)^2", c);
  return MetricField::create(c, u, DomainPredicate::parse("theta > 0.001 and theta < 3.1405", c),
                             "round sphere", {{0.3, M_PI - 0.3}, {0.1, 6.2}});
}

}  // namespace

TEST_CASE("soliton residual: Gaussian, flagship, base-only") {
  auto e2 = euclidean2();
  SolitonData gaussian{e2, parse("(x^2 + y^2)/2", e2.coords()), Expr::constant(1.0)};
  SymTensor2 r = soliton_residual(gaussian, {0.7, -0.4});
  CHECK(r.max_abs() == 0.0);

  auto fs = flagship();
  for (const Point& p : sample_points(fs.chart().plan(42, 100)))
    CHECK(soliton_residual(fs, p).max_abs() <= 1e-8);
  CHECK(soliton_check(fs).pass);

  auto bo = base_only_instance();
  for (const Point& p : sample_points(bo.chart().plan(42, 100)))
    CHECK(soliton_residual(bo, p).max_abs() <= 1e-8);
  CHECK(soliton_check(bo).pass);

  auto br = brinkmann();
  CHECK(soliton_check(br).pass);
}

TEST_CASE("decompose_potential: flagship, base-only, non-separable") {
  auto wp = cosh_warp();
  const auto& c = wp.product().coords();

  auto split = decompose_potential(wp, parse("cosh(t)*exp(u)", c), {0.0}, {0.0});
  // beta = cosh t, phi = e^u - 1 under the phi(q0)=0 gauge
  for (double t : {-1.0, 0.0, 0.8})
    CHECK(split.beta.eval(std::vector<double>{t}) ==
          doctest::Approx(std::cosh(t)).epsilon(1e-13));
  for (double u : {-1.0, 0.0, 0.8})
    CHECK(split.phi.eval(std::vector<double>{u}) ==
          doctest::Approx(std::exp(u) - 1.0).epsilon(1e-13));

  auto trivial = decompose_potential(wp, parse("t^2", c), {0.0}, {0.0});
  CHECK(trivial.phi.is_constant());
  CHECK(trivial.phi.constant_value() == 0.0);
  CHECK(trivial.beta.eval(std::vector<double>{0.5}) == doctest::Approx(0.25));

  CHECK_THROWS_AS(decompose_potential(wp, parse("t*u", c), {0.0}, {0.0}), NonDecomposable);
}

TEST_CASE("check_fiber_dependent: flagship passes with a=-1, c=-1") {
  auto wp = cosh_warp();
  const auto& c = wp.product().coords();
  Expr f = parse("cosh(t)*exp(u)", c);
  Expr lam = parse("cosh(t)*exp(u) - 1", c);
  auto split = decompose_potential(wp, f, {0.0}, {0.0});

  StructureConstants k{-1.0, 0.0, -1.0, 0.0};
  auto rep = check_fiber_dependent(wp, split, k, lam);
  CHECK(rep.pass);
  CHECK(rep.max_residual <= 1e-7);
  CHECK(rep.derived.at("b") == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("check_fiber_dependent: trivial warp is rejected") {
  auto wp = WarpedProduct::create(line("t", {-1.0, 1.0}), line("u", {-1.0, 1.0}),
                                  Expr::constant(1.0));
  PotentialSplit split{Expr::constant(0.0), Expr::constant(0.0), {0.0}};
  CHECK_THROWS_AS(
      check_fiber_dependent(wp, split, StructureConstants{}, Expr::constant(0.0)),
      TrivialWarp);
}

TEST_CASE("check_fiber_dependent: tampered lambda fails on the lambda line") {
  auto wp = cosh_warp();
  const auto& c = wp.product().coords();
  Expr f = parse("cosh(t)*exp(u)", c);
  Expr lam_bad = parse("cosh(t)*exp(u) - 1 + 0.1", c);
  auto split = decompose_potential(wp, f, {0.0}, {0.0});

  auto rep = check_fiber_dependent(wp, split, StructureConstants{-1.0, 0.0, -1.0, 0.0}, lam_bad);
  CHECK(!rep.pass);
  const ResidualLine& lam_line = rep.lines[4];
  CHECK(!lam_line.pass());
  CHECK(lam_line.max_residual() == doctest::Approx(0.1).epsilon(1e-9));
  for (int i : {0, 1, 2, 3, 5}) CHECK(rep.lines[static_cast<std::size_t>(i)].pass());
}

TEST_CASE("gauge invariance of the decomposition and the verdict") {
  auto wp = cosh_warp();
  const auto& c = wp.product().coords();
  Expr f = parse("cosh(t)*exp(u)", c);
  Expr lam = parse("cosh(t)*exp(u) - 1", c);

  auto s1 = decompose_potential(wp, f, {0.0}, {0.0});
  auto s2 = decompose_potential(wp, f, {0.5}, {0.3});

  // reconstructions agree even though (beta, phi) differ by a gauge shift
  Expr r1 = Expr::add(s1.beta, Expr::mul(wp.warp(), wp.lift_fiber(s1.phi)));
  Expr r2 = Expr::add(s2.beta, Expr::mul(wp.warp(), wp.lift_fiber(s2.phi)));
  for (const Point& p : sample_points(wp.plan(3, 50)))
    CHECK(std::abs(r1.eval(p) - r2.eval(p)) <= 1e-9 * (1.0 + std::abs(r1.eval(p))));

  StructureConstants k{-1.0, 0.0, -1.0, 0.0};
  auto rep1 = check_fiber_dependent(wp, s1, k, lam);
  auto rep2 = check_fiber_dependent(wp, s2, k, lam);
  CHECK(rep1.pass == rep2.pass);
  CHECK(rep1.pass);
}

TEST_CASE("relation consistency: (c - |grad h|^2)/h^2 constant over samples") {
  auto wp = cosh_warp();
  double c = -1.0;
  double first = 0.0;
  bool got_first = false;
  for (const Point& p : sample_points(wp.plan(42, 50))) {
    Point pb = wp.base_point(p);
    TangentVector gh = gradient(wp.base(), wp.warp(), pb);
    double gh2 = norm_sq(wp.base(), gh, pb);
    double h = wp.warp().eval(pb);
    double val = (c - gh2) / (h * h);
    if (!got_first) {
      first = val;
      got_first = true;
    }
    CHECK(std::abs(val - first) <= 1e-7);
  }
  CHECK(first == doctest::Approx(-1.0).epsilon(1e-10));  // the Einstein constant a
}

TEST_CASE("fiber-dependent pass implies soliton pass (and tampering breaks both)") {
  auto fs = flagship();
  const auto* wp = fs.warped();
  auto split = decompose_potential(*wp, fs.f, {0.0}, {0.0});
  auto rep = check_fiber_dependent(*wp, split, StructureConstants{-1.0, 0.0, -1.0, 0.0}, fs.lambda);
  CHECK(rep.pass);
  CHECK(soliton_check(fs).pass);

  SolitonData tampered = fs;
  tampered.lambda = parse("cosh(t)*exp(u) - 1.2", fs.chart().coords());
  CHECK(!soliton_check(tampered).pass);
  auto rep_bad =
      check_fiber_dependent(*wp, split, StructureConstants{-1.0, 0.0, -1.0, 0.0}, tampered.lambda);
  CHECK(!rep_bad.pass);
}

TEST_CASE("check_base_only") {
  auto wp = exp_warp();
  const auto& c = wp.product().coords();

  auto rep = check_base_only(wp, parse("exp(t)", c), parse("exp(t) - 1", c), 0.0);
  CHECK(rep.pass);
  CHECK(rep.max_residual <= 1e-8);

  // Einstein case: f = 0, lambda = -1 (hyperbolic plane)
  auto rep2 = check_base_only(wp, Expr::constant(0.0), Expr::constant(-1.0), 0.0);
  CHECK(rep2.pass);

  CHECK_THROWS_AS(check_base_only(wp, parse("exp(t) + u", c), parse("exp(t) - 1", c), 0.0),
                  FiberDependence);
}

TEST_CASE("check_improper: Brinkmann instance") {
  auto br = brinkmann();
  const auto* wp = br.warped();
  auto split = decompose_potential(*wp, br.f, {0.0}, {0.0, 0.0});
  // beta = u, phi = -w^2/2
  CHECK(split.beta.eval(std::vector<double>{0.7, 0.1}) == doctest::Approx(0.7));
  CHECK(split.phi.eval(std::vector<double>{0.5}) == doctest::Approx(-0.125));

  auto rep = check_improper(*wp, split, 1.0, br.lambda);
  CHECK(rep.pass);
  CHECK(rep.max_residual <= 1e-9);

  // h = 2 + u + v has |grad h|^2 = 2: NotImproper
  std::vector<std::string> bc = {"u", "v"};
  std::vector<Expr> bu(3);
  bu[MetricField::tri_index(2, 0, 1)] = Expr::constant(1.0);
  auto base = MetricField::create(bc, bu, DomainPredicate::parse("u + v > -2", bc), "base",
                                  {{-0.9, 0.9}, {-0.9, 0.9}});
  auto wp2 = WarpedProduct::create(base, line("w", {-1.0, 1.0}), parse("2 + u + v", bc));
  CHECK_THROWS_AS(check_improper(wp2, split, 1.0, Expr::constant(0.0)), NotImproper);

  // a curved fiber fails the Ricci-flat line
  auto wp3 = WarpedProduct::create(
      std::get<WarpedProduct>(br.metric).base(), sphere2(),
      parse("2 + v", bc));
  PotentialSplit split3{split.beta, Expr::constant(0.0), {M_PI / 2.0, 1.0}};
  auto rep3 = check_improper(wp3, split3, 0.0, parse("1/(2 + v)", bc));
  CHECK(!rep3.lines[2].pass());
  CHECK(rep3.lines[2].max_residual() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sc_residual: model solutions") {
  // R^2_1 with phi = -(b/2)(-x^2 + y^2), b = 1
  auto m2 = minkowski2();
  Expr phi = parse("-(1/2)*(-(x^2) + y^2)", m2.coords());
  for (const Point& p : sample_points(m2.plan(42, 30))) {
    SymTensor2 r = sc_residual(m2, phi, ConformalSpec{0.0, 1.0}, p);
    CHECK(r.max_abs() <= 1e-12);
  }

  // unit sphere height function, c = 1, b = 0
  auto sph = sphere2();
  Expr height = parse("cos(theta)", sph.coords());
  for (const Point& p : sample_points(sph.plan(42, 30))) {
    SymTensor2 r = sc_residual(sph, height, ConformalSpec{1.0, 0.0}, p);
    CHECK(r.max_abs() <= 1e-12);
  }

  // S^2_2(1) chart -dr^2 - sinh^2 r dpsi^2 with phi = cosh r, c = 1, b = 0
  std::vector<std::string> hc = {"r", "psi"};
  std::vector<Expr> su(3);
  su[MetricField::tri_index(2, 0, 0)] = Expr::constant(-1.0);
  su[MetricField::tri_index(2, 1, 1)] = parse("-(sinh(r)^2)", hc);
  auto s22 = MetricField::create(hc, su, DomainPredicate::parse("r > 0.001", hc), "S2_2 chart",
                                 {{0.3, 2.5}, {0.1, 6.2}});
  Expr ch = parse("cosh(r)", hc);
  for (const Point& p : sample_points(s22.plan(42, 30))) {
    SymTensor2 r = sc_residual(s22, ch, ConformalSpec{1.0, 0.0}, p);
    CHECK(r.max_abs() <= 1e-12);
  }
}

TEST_CASE("sc_residual is linear in (phi, b)") {
  auto sph = sphere2();
  Expr phi1 = parse("cos(theta)", sph.coords());
  Expr phi2 = parse("theta^3", sph.coords());  // not a solution; residual nonzero
  double alpha = 2.5, b1 = 0.4, b2 = -0.7, c = 1.0;
  Expr combo = Expr::add(Expr::mul(Expr::constant(alpha), phi1), phi2);
  for (const Point& p : sample_points(sph.plan(5, 25))) {
    SymTensor2 lhs = sc_residual(sph, combo, ConformalSpec{c, alpha * b1 + b2}, p);
    SymTensor2 rhs = alpha * sc_residual(sph, phi1, ConformalSpec{c, b1}, p) +
                     sc_residual(sph, phi2, ConformalSpec{c, b2}, p);
    CHECK(wtest::max_abs_diff(lhs, rhs) <= 1e-10);
  }
}

TEST_CASE("recover_conformal_constants") {
  // flagship product metric is the hyperbolic plane: a = -1, a0 = 0
  auto wp = cosh_warp();
  Expr f = parse("cosh(t)*exp(u)", wp.product().coords());
  auto res = recover_conformal_constants(wp.product(), f, -1.0);
  CHECK(std::abs(res.a0) <= 1e-7);
  CHECK(res.max_deviation <= 1e-7);
  CHECK(res.details.pass);

  // flat plane with f = |x|^2/2: psi = -1, a0 = -1 under Hess f + (af+a0) g = 0
  auto e2 = euclidean2();
  Expr quad = parse("(x^2 + y^2)/2", e2.coords());
  auto res2 = recover_conformal_constants(e2, quad, 0.0);
  CHECK(res2.a0 == doctest::Approx(-1.0).epsilon(1e-12));

  // f = sinh(t) on the exponential-warp chart: Hessian not proportional to g
  auto ew = exp_warp();
  Expr bad = parse("sinh(t)", ew.product().coords());
  CHECK_THROWS_AS(recover_conformal_constants(ew.product(), bad, -1.0), NotConformal);

  // non-Einstein chart is rejected up front
  std::vector<std::string> nc = {"x", "y"};
  std::vector<Expr> nu(3);
  nu[MetricField::tri_index(2, 0, 0)] = Expr::constant(1.0);
  nu[MetricField::tri_index(2, 1, 1)] = parse("exp(2*x^2)", nc);
  auto curved = MetricField::create(nc, nu, DomainPredicate::always(), "curved");
  CHECK_THROWS_AS(recover_conformal_constants(curved, quad, -1.0), NotEinstein);
}
