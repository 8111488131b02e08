#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "warpcheck/warped.hpp"
#include "test_util.hpp"

using namespace warpcheck;

namespace {

MetricField line(const std::string& name, double gtt, std::array<double, 2> box) {
  std::vector<std::string> c = {name};
  std::vector<Expr> u = {Expr::constant(gtt)};
  return MetricField::create(c, u, DomainPredicate::always(), "line", {box});
}

WarpedProduct exp_warp() {
  return WarpedProduct::create(line("t", 1.0, {-1.5, 1.5}), line("u", 1.0, {-1.5, 1.5}),
                               parse("exp(t)", std::vector<std::string>{"t"}));
}

WarpedProduct cosh_warp() {
  return WarpedProduct::create(line("t", 1.0, {-1.5, 1.5}), line("u", 1.0, {-1.5, 1.5}),
                               parse("cosh(t)", std::vector<std::string>{"t"}));
}

WarpedProduct sphere_as_warp() {
  std::vector<std::string> c = {"theta"};
  std::vector<Expr> u = {Expr::constant(1.0)};
  auto base = MetricField::create(c, u, DomainPredicate::parse("theta > 0.001 and theta < 3.1405", c),
                                  "interval", {{0.3, M_PI - 0.3}});
  return WarpedProduct::create(base, line("phi", 1.0, {0.1, 6.2}),
                               parse("sin(theta)", c));
}

// hyperbolic-plane base x flat 2d fiber, h = (x^2+y^2+1)/(2y)
WarpedProduct hyperbolic_base_wp() {
  std::vector<std::string> bc = {"x", "y"};
  std::vector<Expr> bu(3);
  bu[MetricField::tri_index(2, 0, 0)] = parse("1/y^2", bc);
  bu[MetricField::tri_index(2, 1, 1)] = parse("1/y^2", bc);
  auto base = MetricField::create(bc, bu, DomainPredicate::parse("y > 0", bc), "half plane",
                                  {{-2.0, 2.0}, {0.5, 2.5}});

  std::vector<std::string> fc = {"p", "q"};
  std::vector<Expr> fu(3);
  fu[MetricField::tri_index(2, 0, 0)] = Expr::constant(1.0);
  fu[MetricField::tri_index(2, 1, 1)] = Expr::constant(1.0);
  auto fiber = MetricField::create(fc, fu, DomainPredicate::always(), "R2",
                                   {{-1.0, 1.0}, {-1.0, 1.0}});
  return WarpedProduct::create(base, fiber, parse("(x^2 + y^2 + 1)/(2*y)", bc));
}

}  // namespace

TEST_CASE("product metric assembles blocks") {
  auto wp = exp_warp();
  const MetricField& g = wp.product();
  CHECK(g.dim() == 2);
  Point p = {0.7, 0.3};
  auto md = metric_at(g, p);
  CHECK(md.g(0, 0) == doctest::Approx(1.0));
  CHECK(md.g(1, 1) == doctest::Approx(std::exp(2.0 * 0.7)).epsilon(1e-13));
  CHECK(md.g(0, 1) == 0.0);

  auto cw = cosh_warp();
  auto md2 = metric_at(cw.product(), p);
  CHECK(md2.g(1, 1) == doctest::Approx(std::cosh(0.7) * std::cosh(0.7)).epsilon(1e-13));
}

TEST_CASE("non-positive warping function is a DomainViolation") {
  std::vector<std::string> c = {"t"};
  CHECK_THROWS_AS(WarpedProduct::create(line("t", 1.0, {-1.5, 1.5}), line("u", 1.0, {-1.0, 1.0}),
                                        parse("t", c)),
                  DomainViolation);
}

TEST_CASE("h referencing a fiber coordinate is rejected") {
  // parse over base coords cannot even name the fiber coordinate
  CHECK_THROWS_AS(parse("u", std::vector<std::string>{"t"}), ParseError);
  // and a hand-built expression with an out-of-range index is caught
  Expr bad = Expr::variable("u", 1);
  CHECK_THROWS_AS(WarpedProduct::create(line("t", 1.0, {-1.5, 1.5}), line("u", 1.0, {-1.0, 1.0}),
                                        bad),
                  Error);
}

TEST_CASE("coordinate name clash is rejected") {
  CHECK_THROWS_AS(WarpedProduct::create(line("t", 1.0, {-1.5, 1.5}), line("t", 1.0, {-1.0, 1.0}),
                                        parse("exp(t)", std::vector<std::string>{"t"})),
                  Error);
}

TEST_CASE("warped Ricci closed form: exponential and cosh warps") {
  auto wp = exp_warp();
  SymTensor2 r = warped_ricci(wp, {0.0, 0.4});
  CHECK(r(0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r(0, 1) == 0.0);
  CHECK(r(1, 1) == doctest::Approx(-1.0).epsilon(1e-12));  // -e^{2t} at t=0

  auto cw = cosh_warp();
  SymTensor2 rc = warped_ricci(cw, {1.0, 0.2});
  CHECK(rc(1, 1) == doctest::Approx(-std::cosh(1.0) * std::cosh(1.0)).epsilon(1e-12));
  CHECK(rc(0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("constant warp degemerates to the block Ricci") {
  auto wp = WarpedProduct::create(line("t", 1.0, {-1.0, 1.0}), line("u", 1.0, {-1.0, 1.0}),
                                  Expr::constant(1.0));
  SymTensor2 r = warped_ricci(wp, {0.3, 0.5});
  CHECK(r.max_abs() == 0.0);  // Ric_B = Ric_F = 0 and all h-terms vanish
}

TEST_CASE("warped Hessian closed form") {
  auto cw = cosh_warp();
  Expr f = parse("cosh(t)*exp(u)", cw.product().coords());
  for (const Point& p : sample_points(cw.plan(42, 30))) {
    SymTensor2 h = warped_hessian(cw, f, p);
    CHECK(std::abs(h(0, 1)) <= 1e-12 * (1.0 + h.max_abs()));
  }

  // base-only f: mixed block plain zero, fiber block h (grad h . grad f) g_F
  Expr fb = parse("t^2", cw.product().coords());
  Point p0 = {0.8, -0.3};
  SymTensor2 hb = warped_hessian(cw, fb, p0);
  CHECK(hb(0, 1) == 0.0);
  // h (grad h . grad f) g_F(U,U) with the unscaled fiber metric:
  // cosh(t) * sinh(t) * 2t * 1
  double t = p0[0];
  double expect = std::cosh(t) * std::sinh(t) * 2.0 * t;
  CHECK(hb(1, 1) == doctest::Approx(expect).epsilon(1e-12));

  // f = u on the exponential warp: mixed entry -h^{-1} h' = -1
  auto ew = exp_warp();
  Expr fu = parse("u", ew.product().coords());
  SymTensor2 hu = warped_hessian(ew, fu, {0.0, 0.0});
  CHECK(hu(0, 1) == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("closed form cross-validates against the direct chart computation") {
  struct Inst {
    WarpedProduct wp;
    std::string f_src;
  };
  std::vector<Inst> instances;
  instances.push_back({exp_warp(), "exp(t)*(1 + u)"});
  instances.push_back({cosh_warp(), "cosh(t)*exp(u)"});
  instances.push_back({hyperbolic_base_wp(), "x*exp(p) + y + q^2"});

  for (const auto& inst : instances) {
    const MetricField& g = inst.wp.product();
    Expr f = parse(inst.f_src, g.coords());
    for (const Point& p : sample_points(inst.wp.plan(42, 100))) {
      SymTensor2 closed_r = warped_ricci(inst.wp, p);
      SymTensor2 direct_r = ricci(g, p);
      CHECK(wtest::max_abs_diff(closed_r, direct_r) <= 1e-7 * (1.0 + direct_r.max_abs()));
      // the direct mixed block must vanish on its own
      for (int i = 0; i < inst.wp.base_dim(); ++i)
        for (int a = 0; a < inst.wp.fiber_dim(); ++a)
          CHECK(std::abs(direct_r(i, inst.wp.base_dim() + a)) <=
                1e-8 * (1.0 + direct_r.max_abs()));

      SymTensor2 closed_h = warped_hessian(inst.wp, f, p);
      SymTensor2 direct_h = hessian(g, f, p);
      CHECK(wtest::max_abs_diff(closed_h, direct_h) <= 1e-7 * (1.0 + direct_h.max_abs()));
    }
  }
}

TEST_CASE("split potentials have vanishing mixed Hessian block") {
  auto cw = cosh_warp();
  const auto& coords = cw.product().coords();
  // f = beta(t) + h(t) phi(u)
  Expr f = parse("t^2 - 1 + cosh(t)*(exp(u) - 1)", coords);
  for (const Point& p : sample_points(cw.plan(9, 50))) {
    SymTensor2 h = warped_hessian(cw, f, p);
    CHECK(std::abs(h(0, 1)) <= 1e-8 * (1.0 + h.max_abs()));
    SymTensor2 hd = hessian(cw.product(), f, p);
    CHECK(std::abs(hd(0, 1)) <= 1e-8 * (1.0 + hd.max_abs()));
  }
}

TEST_CASE("einstein_check accepts the model warps and rejects wrong constants") {
  auto rep1 = einstein_check(exp_warp(), -1.0, 0.0);
  CHECK(rep1.pass);
  CHECK(rep1.max_residual <= 1e-9);

  auto rep2 = einstein_check(cosh_warp(), -1.0, -1.0);
  CHECK(rep2.pass);

  auto rep3 = einstein_check(sphere_as_warp(), 1.0, 1.0);
  CHECK(rep3.pass);

  auto bad = einstein_check(cosh_warp(), -1.0, 0.0);  // wrong fiber constant
  CHECK(!bad.pass);
  CHECK(bad.max_residual == doctest::Approx(1.0).epsilon(1e-9));  // |e - c| = 1

  // 2d base goes through the tensor form of the equations
  auto hyp = hyperbolic_base_wp();
  auto rep4 = einstein_check(hyp, -1.0, -1.0);
  // base and scalar equations hold (Hess h = h g_B with a = -1) but the flat
  // fiber is not Einstein with c(m-1) = -1, so only the fiber line fails
  CHECK(rep4.lines[0].pass());
  CHECK(rep4.lines[1].pass());
  CHECK(!rep4.lines[2].pass());
}
