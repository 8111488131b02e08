#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "warpcheck/catalog.hpp"
#include "warpcheck/json_io.hpp"
#include "test_util.hpp"

using namespace warpcheck;

TEST_CASE("registry names resolve; unknown names are config errors") {
  auto names = catalog_names();
  CHECK(names.size() >= 12);
  for (const auto& n : names) CHECK_NOTHROW(catalog_describe(n));
  CHECK_THROWS_AS(catalog_build("no_such_entry"), ConfigError);
  CHECK_THROWS_AS(catalog_build("cosh_warp", "not json"), ConfigError);
}

TEST_CASE("cosh_warp: parameter validation and the energy relation") {
  auto e = catalog_build("cosh_warp", R"({"a":-1,"c":-1})");
  const auto* wp = e.warped();
  REQUIRE(wp != nullptr);
  auto rep = einstein_check(*wp, -1.0, -1.0);
  CHECK(rep.pass);

  // h is exactly cosh(t) after constant folding
  CHECK(wp->warp().eval(std::vector<double>{0.7}) ==
        doctest::Approx(std::cosh(0.7)).epsilon(1e-12));

  // relation |grad h|^2 + a h^2 = c numerically at samples
  for (const Point& p : sample_points(wp->base().plan(42, 50))) {
    TangentVector gh = gradient(wp->base(), wp->warp(), p);
    double gh2 = norm_sq(wp->base(), gh, p);
    double h = wp->warp().eval(p);
    CHECK(gh2 + (-1.0) * h * h == doctest::Approx(-1.0).epsilon(1e-10));
  }

  CHECK_THROWS_AS(catalog_build("cosh_warp", R"({"a":-1,"c":1})"), ConfigError);
  CHECK_THROWS_AS(catalog_build("cosh_warp", R"({"a":-1,"c":0})"), ConfigError);
  CHECK_THROWS_AS(catalog_build("exp_warp", R"({"a":0})"), ConfigError);
  CHECK_THROWS_AS(catalog_build("exp_warp", R"({"A":-2})"), ConfigError);

  // a > 0 flips the base sign so that the warp equation still holds
  auto pos = catalog_build("cosh_warp", R"({"a":2,"c":1})");
  CHECK(einstein_check(*pos.warped(), 2.0, 1.0).pass);
}

TEST_CASE("exp_warp satisfies the exponential branch with c = 0") {
  auto e = catalog_build("exp_warp", R"({"a":-1,"A":1})");
  const auto* wp = e.warped();
  auto rep = einstein_check(*wp, -1.0, 0.0);
  CHECK(rep.pass);
  CHECK(rep.max_residual <= 1e-9);

  for (const Point& p : sample_points(wp->base().plan(42, 50))) {
    TangentVector gh = gradient(wp->base(), wp->warp(), p);
    double gh2 = norm_sq(wp->base(), gh, p);
    double h = wp->warp().eval(p);
    CHECK(std::abs(gh2 - h * h) <= 1e-10 * (1.0 + h * h));
  }
}

TEST_CASE("semi_euclidean sc solution and flagship expectations") {
  auto e = catalog_build("semi_euclidean", R"({"n":2,"eps":1,"b":1})");
  const auto& g = std::get<MetricField>(e.payload);
  for (const Point& p : sample_points(g.plan(42, 30))) {
    SymTensor2 r = sc_residual(g, e.sc_phi, *e.conformal, p);
    CHECK(r.max_abs() <= 1e-12);
  }

  auto fs = catalog_build("flagship_soliton");
  const auto& s = std::get<SolitonData>(fs.payload);
  CHECK(soliton_check(s).pass);
  CHECK(fs.constants->a == -1.0);
  CHECK(fs.constants->c == -1.0);

  auto split = decompose_potential(*s.warped(), s.f, {0.0}, {0.0});
  auto rep = check_fiber_dependent(*s.warped(), split, *fs.constants, s.lambda);
  CHECK(rep.pass);

  auto rec = recover_conformal_constants(s.chart(), s.f, fs.constants->a);
  CHECK(std::abs(rec.a0 - fs.constants->a0) <= 1e-6);
}

TEST_CASE("every entry passes its declared checkers under default sampling") {
  for (const std::string& name : catalog_names()) {
    CatalogEntry e = catalog_build(name);
    INFO("entry: ", name);
    for (const std::string& checker : e.expected_checkers) {
      INFO("checker: ", checker);
      if (checker == "soliton") {
        CHECK(soliton_check(std::get<SolitonData>(e.payload)).pass);
      } else if (checker == "fiber_dependent") {
        const auto& s = std::get<SolitonData>(e.payload);
        const auto* wp = s.warped();
        Point q0(static_cast<std::size_t>(wp->fiber_dim()), 0.0);
        Point p0(static_cast<std::size_t>(wp->base_dim()), 0.0);
        auto split = decompose_potential(*wp, s.f, q0, p0);
        CHECK(check_fiber_dependent(*wp, split, *e.constants, s.lambda).pass);
      } else if (checker == "base_only") {
        const auto& s = std::get<SolitonData>(e.payload);
        CHECK(check_base_only(*s.warped(), s.f, s.lambda, e.constants->c).pass);
      } else if (checker == "improper") {
        const auto& s = std::get<SolitonData>(e.payload);
        const auto* wp = s.warped();
        Point q0(static_cast<std::size_t>(wp->fiber_dim()), 0.0);
        Point p0(static_cast<std::size_t>(wp->base_dim()), 0.0);
        auto split = decompose_potential(*wp, s.f, q0, p0);
        CHECK(check_improper(*wp, split, e.constants->b, s.lambda).pass);
      } else if (checker == "einstein") {
        CHECK(einstein_check(*e.warped(), e.constants->a, e.constants->c).pass);
      } else if (checker == "sc") {
        const auto& g = std::get<MetricField>(e.payload);
        for (const Point& p : sample_points(g.plan(42, 50)))
          CHECK(sc_residual(g, e.sc_phi, *e.conformal, p).max_abs() <=
                1e-8 * (1.0 + metric_at(g, p).g.max_abs()));
      } else if (checker == "curvature") {
        const auto& g = std::get<MetricField>(e.payload);
        for (const Point& p : sample_points(g.plan(42, 100))) {
          auto md = metric_at(g, p);
          SymTensor2 want = (g.dim() - 1) * (*e.curvature) * md.g;
          CHECK(wtest::max_abs_diff(ricci(g, p), want) <= 1e-7 * (1.0 + want.max_abs()));
        }
      } else if (checker == "conformal_constants") {
        const auto& s = std::get<SolitonData>(e.payload);
        auto rec = recover_conformal_constants(s.chart(), s.f, e.constants->a);
        CHECK(std::abs(rec.a0 - e.constants->a0) <= 1e-6);
      } else if (checker == "completeness_incomplete") {
        // exercised in the dynamics suite
      } else {
        FAIL("unknown checker tag '", checker, "' on entry ", name);
      }
    }
  }
}

TEST_CASE("bochner pairs satisfy the divergence identity at 50 points") {
  for (const auto& pair : bochner_pairs()) {
    INFO("pair: ", pair.label);
    for (const Point& p : sample_points(pair.g.plan(42, 50))) {
      double ric_scale = ricci(pair.g, p).max_abs();
      for (int i = 0; i < pair.g.dim(); ++i) {
        TangentVector X{Point(static_cast<std::size_t>(pair.g.dim()), 0.0)};
        X.components[static_cast<std::size_t>(i)] = 1.0;
        double r = bochner_residual(pair.g, pair.phi, p, X);
        CHECK(std::abs(r) <= 1e-6 * (1.0 + ric_scale));
      }
    }
  }
}

TEST_CASE("catalog emit round-trips through the schema parsers") {
  std::string mj = catalog_emit("been_busemann");
  MetricField g = parse_metric_json(mj);
  CHECK(g.dim() == 2);
  CHECK(metric_at(g, {0.0, 0.0}).g(1, 1) == doctest::Approx(-1.0));

  std::string wj = catalog_emit("cosh_warp");
  WarpedProduct wp = parse_warped_json(wj);
  CHECK(wp.warp().eval(std::vector<double>{0.3}) ==
        doctest::Approx(std::cosh(0.3)).epsilon(1e-12));

  std::string sj = catalog_emit("flagship_soliton");
  SolitonData s = parse_soliton_json(sj);
  CHECK(soliton_check(s).pass);
}

TEST_CASE("height-zero classification: all 8 quadric/causal-type combinations") {
  using Kind = HeightFunctionSpec::Kind;
  struct Case {
    Kind kind;
    int eps;
    std::vector<double> A;
    bool no_zeros;
  };
  // ambient signs are (-,...,-,+,...): index eps timelike directions first
  std::vector<Case> cases = {
      {Kind::Pseudosphere, 2, {0.0, 0.0, 1.0}, true},    // A spacelike
      {Kind::Pseudosphere, 2, {1.0, 0.0, 1.0}, true},    // A lightlike
      {Kind::Pseudosphere, 2, {1.0, 0.0, 0.0}, false},   // A timelike
      {Kind::Pseudosphere, 1, {0.0, 0.0, 1.0}, false},   // index != n
      {Kind::PseudoHyperbolic, 1, {1.0, 0.0, 0.0}, true},   // A timelike
      {Kind::PseudoHyperbolic, 1, {1.0, 1.0, 0.0}, true},   // A lightlike
      {Kind::PseudoHyperbolic, 1, {0.0, 0.0, 1.0}, false},  // A spacelike
      {Kind::PseudoHyperbolic, 2, {1.0, 0.0, 0.0}, false},  // index != 1
  };
  for (const auto& c : cases) {
    HeightFunctionSpec spec{c.A, Signature{3, c.eps}, c.kind, 1.0};
    auto rep = height_zero_classification(spec);
    INFO("kind=", static_cast<int>(c.kind), " eps=", c.eps);
    CHECK(rep.predicted_no_zeros == c.no_zeros);
    CHECK(rep.consistent);
  }

  // the named example: S^2_2 with A = (0,0,1), min |phi| = 1 at the apex
  auto rep = height_zero_classification(
      HeightFunctionSpec{{0.0, 0.0, 1.0}, Signature{3, 2}, Kind::Pseudosphere, 1.0});
  CHECK(rep.sampled_min_abs == doctest::Approx(1.0));

  // empty quadrics and the A = 0 precondition
  CHECK_THROWS_AS(height_zero_classification(
                      HeightFunctionSpec{{1.0, 0.0, 0.0}, Signature{3, 3}, Kind::Pseudosphere, 1.0}),
                  EmptyQuadric);
  CHECK_THROWS_AS(height_zero_classification(HeightFunctionSpec{
                      {1.0, 0.0, 0.0}, Signature{3, 0}, Kind::PseudoHyperbolic, 1.0}),
                  EmptyQuadric);
  CHECK_THROWS_AS(height_zero_classification(
                      HeightFunctionSpec{{0.0, 0.0, 0.0}, Signature{3, 2}, Kind::Pseudosphere, 1.0}),
                  Error);
}
