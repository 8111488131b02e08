#include "warpcheck/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "json_internal.hpp"
#include "warpcheck/json_io.hpp"

namespace warpcheck {

namespace {

using detail::json;

json parse_params(const std::string& params_json) {
  if (params_json.empty()) return json::object();
  json j = json::parse(params_json, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ConfigError("catalog parameters must be a JSON object");
  return j;
}

MetricField flat_line(const std::string& name, double gtt, std::array<double, 2> box) {
  std::vector<std::string> c = {name};
  return MetricField::create(c, {Expr::constant(gtt)}, DomainPredicate::always(),
                             (gtt < 0 ? "-dt^2 line" : "dt^2 line"), {box});
}

MetricField semi_euclidean_metric(int n, int eps) {
  std::vector<std::string> coords;
  for (int i = 1; i <= n; ++i) coords.push_back("x" + std::to_string(i));
  std::vector<Expr> upper(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (int i = 0; i < n; ++i)
    upper[MetricField::tri_index(n, i, i)] = Expr::constant(i < eps ? -1.0 : 1.0);
  return MetricField::create(coords, upper, DomainPredicate::always(),
                             "R^" + std::to_string(n) + "_" + std::to_string(eps));
}

MetricField half_plane_metric() {
  std::vector<std::string> c = {"x", "y"};
  std::vector<Expr> u(3);
  u[MetricField::tri_index(2, 0, 0)] = parse("1/y^2", c);
  u[MetricField::tri_index(2, 1, 1)] = parse("1/y^2", c);
  return MetricField::create(c, u, DomainPredicate::parse("y > 0", c), "hyperbolic half-plane",
                             {{-2.0, 2.0}, {0.5, 2.5}});
}

MetricField sphere_metric(int n) {
  if (n == 2) {
    std::vector<std::string> c = {"theta", "phi"};
    std::vector<Expr> u(3);
    u[MetricField::tri_index(2, 0, 0)] = Expr::constant(1.0);
    u[MetricField::tri_index(2, 1, 1)] = parse("sin(theta)^2", c);
    return MetricField::create(c, u,
                               DomainPredicate::parse("theta > 0.001 and theta < 3.1405", c),
                               "round 2-sphere", {{0.3, M_PI - 0.3}, {0.1, 6.2}});
  }
  // n == 3: dtheta^2 + sin^2 theta (dphi^2 + sin^2 phi dpsi^2)
  std::vector<std::string> c = {"theta", "phi", "psi"};
  std::vector<Expr> u(6);
  u[MetricField::tri_index(3, 0, 0)] = Expr::constant(1.0);
  u[MetricField::tri_index(3, 1, 1)] = parse("sin(theta)^2", c);
  u[MetricField::tri_index(3, 2, 2)] = parse("sin(theta)^2*sin(phi)^2", c);
  return MetricField::create(
      c, u,
      DomainPredicate::parse("theta > 0.001 and theta < 3.1405 and phi > 0.001 and phi < 3.1405",
                             c),
      "round 3-sphere", {{0.4, M_PI - 0.4}, {0.4, M_PI - 0.4}, {0.1, 6.2}});
}

// upper part of S^2_2(1/sqrt(c)) by pullback from R^3_2 (signs -,-,+)
MetricField pseudosphere_metric(double c) {
  double radius = 1.0 / std::sqrt(c);
  std::vector<std::string> hc = {"r", "psi"};
  std::string rs = "(" + std::to_string(radius) + ")";
  std::vector<Expr> emb = {parse(rs + "*sinh(r)*cos(psi)", hc),
                           parse(rs + "*sinh(r)*sin(psi)", hc),
                           parse(rs + "*cosh(r)", hc)};
  return pullback_metric(hc, emb, Signature{3, 2}, DomainPredicate::parse("r > 0.001", hc),
                         "S^2_2 upper chart", {{0.3, 2.5}, {0.1, 6.2}});
}

// upper-sheet hyperboloid model of H^2(1) by pullback from R^3_1
MetricField hyperboloid_metric() {
  std::vector<std::string> hc = {"r", "psi"};
  std::vector<Expr> emb = {parse("cosh(r)", hc), parse("sinh(r)*cos(psi)", hc),
                           parse("sinh(r)*sin(psi)", hc)};
  return pullback_metric(hc, emb, Signature{3, 1}, DomainPredicate::parse("r > 0.001", hc),
                         "H^2 hyperboloid chart", {{0.3, 2.5}, {0.1, 6.2}});
}

MetricField been_busemann_metric() {
  std::vector<std::string> c = {"x", "y"};
  std::vector<Expr> u(3);
  u[MetricField::tri_index(2, 0, 0)] = Expr::constant(1.0);
  u[MetricField::tri_index(2, 1, 1)] = parse("-exp(2*x)", c);
  return MetricField::create(c, u, DomainPredicate::always(), "dx^2 - e^{2x} dy^2",
                             {{-1.0, 1.0}, {-1.0, 1.0}});
}

MetricField brinkmann_base() {
  std::vector<std::string> bc = {"u", "v"};
  std::vector<Expr> bu(3);
  bu[MetricField::tri_index(2, 0, 1)] = Expr::constant(1.0);
  return MetricField::create(bc, bu, DomainPredicate::parse("v > -2", bc), "g_uv = 1 chart",
                             {{-1.0, 1.0}, {-1.0, 1.0}});
}

// Expression for the semi-Euclidean conformal solution
// phi = -(b/2) sum eps_j x_j^2 + sum A_j x_j + A_last.
Expr sc_solution_expr(int n, int eps, double b, const std::vector<double>& A, double A_last) {
  Expr acc = Expr::constant(A_last);
  for (int j = 0; j < n; ++j) {
    double eps_j = j < eps ? -1.0 : 1.0;
    Expr xj = Expr::variable("x" + std::to_string(j + 1), j);
    acc = Expr::add(acc, Expr::mul(Expr::constant(-0.5 * b * eps_j), Expr::mul(xj, xj)));
    if (A[static_cast<std::size_t>(j)] != 0.0)
      acc = Expr::add(acc, Expr::mul(Expr::constant(A[static_cast<std::size_t>(j)]), xj));
  }
  return acc;
}

using Builder = std::function<CatalogEntry(const json&)>;

const std::map<std::string, std::pair<std::string, Builder>>& registry() {
  static const std::map<std::string, std::pair<std::string, Builder>> reg = {
      {"semi_euclidean",
       {"flat R^n_eps with the quadratic conformal solution; params n>=2, eps in [0,n], "
        "b (default 1), A (array), A_last",
        [](const json& p) {
          int n = p.value("n", 2);
          int eps = p.value("eps", 0);
          if (n < 1 || n > 4) throw ConfigError("semi_euclidean: n must be in [1,4]");
          if (eps < 0 || eps > n) throw ConfigError("semi_euclidean: eps must be in [0,n]");
          double b = p.value("b", 1.0);
          std::vector<double> A(static_cast<std::size_t>(n), 0.0);
          if (p.contains("A")) {
            A = p.at("A").get<std::vector<double>>();
            if (static_cast<int>(A.size()) != n)
              throw ConfigError("semi_euclidean: A must have n entries");
          }
          double A_last = p.value("A_last", 0.0);

          CatalogEntry e;
          e.payload = semi_euclidean_metric(n, eps);
          e.curvature = 0.0;
          e.conformal = ConformalSpec{0.0, b};
          e.sc_phi = sc_solution_expr(n, eps, b, A, A_last);
          e.bochner_phi = e.sc_phi;
          e.expected_checkers = {"sc", "curvature"};
          return e;
        }}},
      {"sphere_round",
       {"unit round sphere, curvature 1, with the polar height function; params n in {2,3}",
        [](const json& p) {
          int n = p.value("n", 2);
          if (n != 2 && n != 3) throw ConfigError("sphere_round: n must be 2 or 3");
          CatalogEntry e;
          MetricField g = sphere_metric(n);
          e.sc_phi = parse("cos(theta)", g.coords());
          e.bochner_phi = e.sc_phi;
          e.payload = std::move(g);
          e.curvature = 1.0;
          e.conformal = ConformalSpec{1.0, 0.0};
          e.expected_checkers = {"sc", "curvature"};
          return e;
        }}},
      {"pseudosphere_chart",
       {"upper part of S^2_2(1/sqrt(c)) as a negative-definite pullback chart; params c>0",
        [](const json& p) {
          double c = p.value("c", 1.0);
          if (!(c > 0.0)) throw ConfigError("pseudosphere_chart: c must be > 0");
          CatalogEntry e;
          MetricField g = pseudosphere_metric(c);
          // height function w.r.t. A = (0,0,1): radius * cosh r
          double radius = 1.0 / std::sqrt(c);
          e.sc_phi = Expr::mul(Expr::constant(radius), parse("cosh(r)", g.coords()));
          e.bochner_phi = e.sc_phi;
          e.payload = std::move(g);
          e.curvature = c;
          e.conformal = ConformalSpec{c, 0.0};
          e.expected_checkers = {"sc", "curvature"};
          return e;
        }}},
      {"hyperbolic_chart",
       {"hyperbolic plane of curvature -1; params model in {half_plane, hyperboloid}",
        [](const json& p) {
          std::string model = p.value("model", "half_plane");
          CatalogEntry e;
          if (model == "half_plane") {
            MetricField g = half_plane_metric();
            e.sc_phi = parse("(x^2 + y^2 + 1)/(2*y)", g.coords());
            e.bochner_phi = e.sc_phi;
            e.payload = std::move(g);
          } else if (model == "hyperboloid") {
            MetricField g = hyperboloid_metric();
            e.sc_phi = parse("cosh(r)", g.coords());
            e.bochner_phi = e.sc_phi;
            e.payload = std::move(g);
          } else {
            throw ConfigError("hyperbolic_chart: model must be half_plane or hyperboloid");
          }
          e.curvature = -1.0;
          e.conformal = ConformalSpec{-1.0, 0.0};
          e.expected_checkers = {"sc", "curvature"};
          return e;
        }}},
      {"exp_warp",
       {"(R, sgn dt^2) x_{A e^{sqrt|a| t}} R with sgn = -sgn a; params a != 0 (default -1), "
        "A > 0 (default 1)",
        [](const json& p) {
          double a = p.value("a", -1.0);
          double A = p.value("A", 1.0);
          if (a == 0.0) throw ConfigError("exp_warp: a must be nonzero");
          if (!(A > 0.0)) throw ConfigError("exp_warp: A must be positive");
          double sgn = a < 0 ? 1.0 : -1.0;  // base metric sign, -sgn(a)
          std::vector<std::string> bc = {"t"};
          std::string h_src =
              std::to_string(A) + "*exp(" + std::to_string(std::sqrt(std::abs(a))) + "*t)";
          CatalogEntry e;
          e.payload = WarpedProduct::create(flat_line("t", sgn, {-1.5, 1.5}),
                                            flat_line("u", 1.0, {-1.5, 1.5}),
                                            parse(h_src, bc));
          e.constants = StructureConstants{a, 0.0, 0.0, 0.0};
          e.expected_checkers = {"einstein"};
          return e;
        }}},
      {"cosh_warp",
       {"(R, sgn dt^2) x_{sqrt|c/a| cosh(sqrt|a| t + B)} R; params a != 0 (default -1), "
        "c with sgn c = sgn a (default -1), B (default 0)",
        [](const json& p) {
          double a = p.value("a", -1.0);
          double c = p.value("c", -1.0);
          double B = p.value("B", 0.0);
          if (a == 0.0) throw ConfigError("cosh_warp: a must be nonzero");
          if (c == 0.0 || (c > 0) != (a > 0))
            throw ConfigError("cosh_warp: the relation |grad h|^2 + a h^2 = c forces "
                              "sgn c = sgn a and c != 0");
          double sgn = a < 0 ? 1.0 : -1.0;
          std::vector<std::string> bc = {"t"};
          std::string h_src = std::to_string(std::sqrt(std::abs(c / a))) + "*cosh(" +
                              std::to_string(std::sqrt(std::abs(a))) + "*t + " +
                              std::to_string(B) + ")";
          CatalogEntry e;
          e.payload = WarpedProduct::create(flat_line("t", sgn, {-1.5, 1.5}),
                                            flat_line("u", 1.0, {-1.5, 1.5}),
                                            parse(h_src, bc));
          e.constants = StructureConstants{a, 0.0, c, 0.0};
          e.expected_checkers = {"einstein"};
          return e;
        }}},
      {"flagship_soliton",
       {"dt^2 + cosh^2 t du^2 with f = cosh t e^u, lambda = f - 1; a=-1, c=-1, a0=0",
        [](const json&) {
          auto wp = WarpedProduct::create(flat_line("t", 1.0, {-1.5, 1.5}),
                                          flat_line("u", 1.0, {-1.5, 1.5}),
                                          parse("cosh(t)", std::vector<std::string>{"t"}));
          const auto& c = wp.product().coords();
          CatalogEntry e;
          e.bochner_phi = parse("cosh(t)*exp(u)", c);
          e.payload = SolitonData{wp, parse("cosh(t)*exp(u)", c),
                                  parse("cosh(t)*exp(u) - 1", c)};
          e.constants = StructureConstants{-1.0, -1.0, -1.0, 0.0};
          e.curvature = -1.0;
          e.expected_checkers = {"soliton", "fiber_dependent", "einstein",
                                 "conformal_constants"};
          return e;
        }}},
      {"base_only_soliton",
       {"dt^2 + e^{2t} du^2 with f = e^t, lambda = e^t - 1; c=0",
        [](const json&) {
          auto wp = WarpedProduct::create(flat_line("t", 1.0, {-1.5, 1.5}),
                                          flat_line("u", 1.0, {-1.5, 1.5}),
                                          parse("exp(t)", std::vector<std::string>{"t"}));
          const auto& c = wp.product().coords();
          CatalogEntry e;
          e.bochner_phi = parse("exp(t)", c);
          e.payload = SolitonData{wp, parse("exp(t)", c), parse("exp(t) - 1", c)};
          e.constants = StructureConstants{-1.0, 0.0, 0.0, 0.0};
          e.expected_checkers = {"soliton", "base_only", "einstein"};
          return e;
        }}},
      {"brinkmann_improper",
       {"g_uv = 1 base (v > -2), h = 2 + v, flat fiber; f = u - h w^2/2, lambda = 0, b = 1",
        [](const json&) {
          auto base = brinkmann_base();
          auto wp = WarpedProduct::create(base, flat_line("w", 1.0, {-1.0, 1.0}),
                                          parse("2 + v", base.coords()));
          const auto& c = wp.product().coords();
          CatalogEntry e;
          e.bochner_phi = parse("u - (2 + v)*w^2/2", c);
          e.payload = SolitonData{wp, parse("u - (2 + v)*w^2/2", c), Expr::constant(0.0)};
          e.constants = StructureConstants{0.0, 1.0, 0.0, 0.0};
          e.expected_checkers = {"soliton", "improper", "completeness_incomplete"};
          return e;
        }}},
      {"been_busemann",
       {"dx^2 - e^{2x} dy^2: geodesically incomplete despite complete factors",
        [](const json&) {
          CatalogEntry e;
          MetricField g = been_busemann_metric();
          e.bochner_phi = parse("x + y^2", g.coords());
          e.payload = std::move(g);
          e.expected_checkers = {};
          return e;
        }}},
      {"parallel_gradient_warp",
       {"flat R^2 (x > -2) x_{2+x} R: parallel grad h forces incompleteness",
        [](const json&) {
          std::vector<std::string> bc = {"x", "y"};
          std::vector<Expr> bu(3);
          bu[MetricField::tri_index(2, 0, 0)] = Expr::constant(1.0);
          bu[MetricField::tri_index(2, 1, 1)] = Expr::constant(1.0);
          auto base = MetricField::create(bc, bu, DomainPredicate::parse("x > -2", bc),
                                          "flat strip", {{-1.0, 1.0}, {-1.0, 1.0}});
          CatalogEntry e;
          e.payload = WarpedProduct::create(base, flat_line("w", 1.0, {-1.0, 1.0}),
                                            parse("2 + x", bc));
          e.expected_checkers = {"completeness_incomplete"};
          return e;
        }}},
      {"hyperbolic_base_wp",
       {"half-plane base x flat R^2 fiber with h = (x^2+y^2+1)/(2y): cross-validation instance",
        [](const json&) {
          auto base = half_plane_metric();
          std::vector<std::string> fc = {"p", "q"};
          std::vector<Expr> fu(3);
          fu[MetricField::tri_index(2, 0, 0)] = Expr::constant(1.0);
          fu[MetricField::tri_index(2, 1, 1)] = Expr::constant(1.0);
          auto fiber = MetricField::create(fc, fu, DomainPredicate::always(), "flat R^2",
                                           {{-1.0, 1.0}, {-1.0, 1.0}});
          CatalogEntry e;
          e.payload = WarpedProduct::create(base, fiber,
                                            parse("(x^2 + y^2 + 1)/(2*y)", base.coords()));
          e.expected_checkers = {};
          return e;
        }}},
  };
  return reg;
}

}  // namespace

CatalogEntry catalog_build(const std::string& name, const std::string& params_json) {
  auto it = registry().find(name);
  if (it == registry().end()) throw ConfigError("unknown catalog name '" + name + "'");
  json params = parse_params(params_json);
  CatalogEntry e = it->second.second(params);
  e.name = name;
  e.description = it->second.first;
  e.params_json = params.dump();
  return e;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : registry()) names.push_back(name);
  return names;
}

std::string catalog_describe(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw ConfigError("unknown catalog name '" + name + "'");
  return it->second.first;
}

std::string catalog_emit(const std::string& name, const std::string& params_json, int indent) {
  CatalogEntry e = catalog_build(name, params_json);
  if (const auto* m = std::get_if<MetricField>(&e.payload))
    return to_json_string(*m, indent);
  if (const auto* w = std::get_if<WarpedProduct>(&e.payload))
    return to_json_string(*w, indent);
  return to_json_string(std::get<SolitonData>(e.payload), indent);
}

std::vector<BochnerPair> bochner_pairs() {
  std::vector<BochnerPair> pairs;
  auto add_entry = [&pairs](const std::string& name, const std::string& params = "{}") {
    CatalogEntry e = catalog_build(name, params);
    if (!e.bochner_phi.valid()) return;
    pairs.push_back({name, e.chart(), e.bochner_phi});
  };
  add_entry("semi_euclidean", R"({"n":2,"eps":0,"A":[0.3,-0.2]})");
  add_entry("semi_euclidean", R"({"n":2,"eps":1,"A":[1.0,0.5]})");
  add_entry("semi_euclidean", R"({"n":3,"eps":1})");
  add_entry("sphere_round");
  add_entry("pseudosphere_chart");
  add_entry("hyperbolic_chart", R"({"model":"half_plane"})");
  add_entry("hyperbolic_chart", R"({"model":"hyperboloid"})");
  add_entry("flagship_soliton");
  add_entry("base_only_soliton");
  add_entry("brinkmann_improper");
  add_entry("been_busemann");
  return pairs;
}

namespace {

// 100x100 chart sweep of a quadric with per-point ambient coordinates.
struct QuadricChart {
  std::function<std::vector<double>(double, double)> embed;
  std::array<double, 2> u_range;
  std::array<double, 2> v_range;
};

QuadricChart quadric_chart(const HeightFunctionSpec& spec) {
  const double R = spec.radius;
  const int eps = spec.ambient.index;
  if (spec.kind == HeightFunctionSpec::Kind::Pseudosphere) {
    if (eps == 0)  // ordinary sphere
      return {[R](double u, double v) {
                return std::vector<double>{R * std::sin(u) * std::cos(v),
                                           R * std::sin(u) * std::sin(v), R * std::cos(u)};
              },
              {0.0, M_PI},
              {0.0, 2.0 * M_PI}};
    if (eps == 1)  // de Sitter surface, connected
      return {[R](double u, double v) {
                return std::vector<double>{R * std::sinh(u), R * std::cosh(u) * std::cos(v),
                                           R * std::cosh(u) * std::sin(v)};
              },
              {-3.0, 3.0},
              {0.0, 2.0 * M_PI}};
    if (eps == 2)  // upper part of S^2_2
      return {[R](double u, double v) {
                return std::vector<double>{R * std::sinh(u) * std::cos(v),
                                           R * std::sinh(u) * std::sin(v), R * std::cosh(u)};
              },
              {0.0, 3.0},
              {0.0, 2.0 * M_PI}};
    throw EmptyQuadric("pseudosphere is empty in a negative-definite ambient space");
  }
  // pseudohyperbolic: <x,x> = -R^2 in ambient index eps
  if (eps == 0) throw EmptyQuadric("pseudohyperbolic quadric needs a timelike direction");
  if (eps == 1)  // upper sheet of H^2_0
    return {[R](double u, double v) {
              return std::vector<double>{R * std::cosh(u), R * std::sinh(u) * std::cos(v),
                                         R * std::sinh(u) * std::sin(v)};
            },
            {0.0, 3.0},
            {0.0, 2.0 * M_PI}};
  if (eps == 2)  // H^2_1, connected one-sheet quadric
    return {[R](double u, double v) {
              return std::vector<double>{R * std::cosh(u) * std::cos(v),
                                         R * std::cosh(u) * std::sin(v), R * std::sinh(u)};
            },
            {-3.0, 3.0},
            {0.0, 2.0 * M_PI}};
  // eps == 3: all directions timelike, quadric is a round sphere of squares
  return {[R](double u, double v) {
            return std::vector<double>{R * std::sin(u) * std::cos(v),
                                       R * std::sin(u) * std::sin(v), R * std::cos(u)};
          },
          {0.0, M_PI},
          {0.0, 2.0 * M_PI}};
}

}  // namespace

HeightZeroReport height_zero_classification(const HeightFunctionSpec& spec) {
  const int N = spec.ambient.dimension;
  if (N != 3)
    throw ConfigError("height_zero_classification supports n = 2 quadrics (ambient dim 3)");
  if (static_cast<int>(spec.A.size()) != N)
    throw Error("ambient vector A has wrong dimension");
  if (!(spec.radius > 0.0)) throw Error("radius must be positive");

  double a_eucl = 0.0, a_norm = 0.0;
  for (int i = 0; i < N; ++i) {
    double s = i < spec.ambient.index ? -1.0 : 1.0;
    a_eucl += spec.A[static_cast<std::size_t>(i)] * spec.A[static_cast<std::size_t>(i)];
    a_norm += s * spec.A[static_cast<std::size_t>(i)] * spec.A[static_cast<std::size_t>(i)];
  }
  if (a_eucl == 0.0) throw Error("height function needs a nonzero ambient vector A");

  HeightZeroReport rep;
  rep.a_character = classify_causal(a_norm, a_eucl);

  const int n = N - 1;
  const bool causal_ok =
      spec.kind == HeightFunctionSpec::Kind::Pseudosphere
          ? (rep.a_character == CausalCharacter::Spacelike ||
             rep.a_character == CausalCharacter::Lightlike)
          : (rep.a_character == CausalCharacter::Timelike ||
             rep.a_character == CausalCharacter::Lightlike);
  const int required_index = spec.kind == HeightFunctionSpec::Kind::Pseudosphere ? n : 1;
  rep.predicted_no_zeros = (spec.ambient.index == required_index) && causal_ok;

  QuadricChart chart = quadric_chart(spec);  // throws EmptyQuadric when empty

  const int grid = 100;
  double min_abs = std::numeric_limits<double>::infinity();
  bool pos = false, neg = false;
  for (int iu = 0; iu < grid; ++iu)
    for (int iv = 0; iv < grid; ++iv) {
      double u = chart.u_range[0] +
                 (chart.u_range[1] - chart.u_range[0]) * iu / static_cast<double>(grid - 1);
      double v = chart.v_range[0] +
                 (chart.v_range[1] - chart.v_range[0]) * iv / static_cast<double>(grid - 1);
      std::vector<double> x = chart.embed(u, v);
      double phi = 0.0;
      for (int i = 0; i < N; ++i) {
        double s = i < spec.ambient.index ? -1.0 : 1.0;
        phi += s * spec.A[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
      }
      min_abs = std::min(min_abs, std::abs(phi));
      if (phi > 0) pos = true;
      if (phi < 0) neg = true;
    }

  rep.sampled_min_abs = min_abs;
  rep.sign_change_found = pos && neg;
  double zero_tol = 1e-6 * std::sqrt(a_eucl) * spec.radius;
  rep.consistent = rep.predicted_no_zeros ? (min_abs > zero_tol)
                                          : (rep.sign_change_found || min_abs < zero_tol);
  return rep;
}

}  // namespace warpcheck
