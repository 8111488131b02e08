#include "warpcheck/json_io.hpp"

#include <cstdio>

#include "json_internal.hpp"

namespace warpcheck {

namespace detail {

namespace {

std::pair<int, int> parse_component_key(const std::string& key) {
  int i = -1, j = -1;
  if (std::sscanf(key.c_str(), "%d,%d", &i, &j) != 2 || i < 0 || j < 0)
    throw ConfigError("bad metric component key '" + key + "' (expected \"i,j\")");
  return {i, j};
}

}  // namespace

MetricField metric_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coords"))
    throw ConfigError("metric JSON needs a \"coords\" array");
  std::vector<std::string> coords = j.at("coords").get<std::vector<std::string>>();
  const int n = static_cast<int>(coords.size());

  std::vector<Expr> upper(static_cast<std::size_t>(n) * (n + 1) / 2);
  if (j.contains("components")) {
    for (const auto& [key, value] : j.at("components").items()) {
      auto [a, b] = parse_component_key(key);
      if (a >= n || b >= n)
        throw ConfigError("component index " + key + " out of range for dimension " +
                          std::to_string(n));
      upper[MetricField::tri_index(n, a, b)] = parse(value.get<std::string>(), coords);
    }
  }

  DomainPredicate dom = DomainPredicate::always();
  if (j.contains("domain")) dom = DomainPredicate::parse(j.at("domain").get<std::string>(), coords);

  std::string label = j.value("label", std::string{});

  std::vector<std::array<double, 2>> box;
  if (j.contains("box")) {
    for (const auto& pair : j.at("box")) {
      if (!pair.is_array() || pair.size() != 2) throw ConfigError("box entries must be [lo, hi]");
      box.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
  }

  return MetricField::create(std::move(coords), std::move(upper), std::move(dom),
                             std::move(label), std::move(box));
}

WarpedProduct warped_from_json(const json& j) {
  if (!j.contains("base") || !j.contains("fiber") || !j.contains("h"))
    throw ConfigError("warped product JSON needs \"base\", \"fiber\" and \"h\"");
  MetricField base = metric_from_json(j.at("base"));
  MetricField fiber = metric_from_json(j.at("fiber"));
  Expr h = parse(j.at("h").get<std::string>(), base.coords());
  return WarpedProduct::create(std::move(base), std::move(fiber), std::move(h));
}

SolitonData soliton_from_json(const json& j) {
  if (!j.contains("metric") || !j.contains("f") || !j.contains("lambda"))
    throw ConfigError("soliton JSON needs \"metric\", \"f\" and \"lambda\"");
  const json& jm = j.at("metric");
  SolitonData s;
  if (looks_like_warped(jm)) {
    WarpedProduct wp = warped_from_json(jm);
    s.f = parse(j.at("f").get<std::string>(), wp.product().coords());
    s.lambda = parse(j.at("lambda").get<std::string>(), wp.product().coords());
    s.metric = std::move(wp);
  } else {
    MetricField g = metric_from_json(jm);
    s.f = parse(j.at("f").get<std::string>(), g.coords());
    s.lambda = parse(j.at("lambda").get<std::string>(), g.coords());
    s.metric = std::move(g);
  }
  return s;
}

json metric_to_json(const MetricField& g) {
  json j;
  j["coords"] = g.coords();
  json comps = json::object();
  for (int i = 0; i < g.dim(); ++i)
    for (int k = i; k < g.dim(); ++k) {
      const Expr& e = g.component(i, k);
      if (e.is_constant() && e.constant_value() == 0.0) continue;
      comps[std::to_string(i) + "," + std::to_string(k)] = e.str();
    }
  j["components"] = comps;
  j["domain"] = g.domain().source();
  j["label"] = g.label();
  json box = json::array();
  for (const auto& b : g.sample_box()) box.push_back({b[0], b[1]});
  j["box"] = box;
  return j;
}

json warped_to_json(const WarpedProduct& wp) {
  json j;
  j["base"] = metric_to_json(wp.base());
  j["fiber"] = metric_to_json(wp.fiber());
  j["h"] = wp.warp().str();
  return j;
}

json soliton_to_json(const SolitonData& s) {
  json j;
  if (const WarpedProduct* wp = s.warped())
    j["metric"] = warped_to_json(*wp);
  else
    j["metric"] = metric_to_json(std::get<MetricField>(s.metric));
  j["f"] = s.f.str();
  j["lambda"] = s.lambda.str();
  return j;
}

}  // namespace detail

namespace {

detail::json parse_document(const std::string& text) {
  detail::json j = detail::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("malformed JSON document");
  return j;
}

}  // namespace

MetricField parse_metric_json(const std::string& text) {
  return detail::metric_from_json(parse_document(text));
}

WarpedProduct parse_warped_json(const std::string& text) {
  return detail::warped_from_json(parse_document(text));
}

SolitonData parse_soliton_json(const std::string& text) {
  return detail::soliton_from_json(parse_document(text));
}

std::string to_json_string(const MetricField& g, int indent) {
  return detail::metric_to_json(g).dump(indent);
}

std::string to_json_string(const WarpedProduct& wp, int indent) {
  return detail::warped_to_json(wp).dump(indent);
}

std::string to_json_string(const SolitonData& s, int indent) {
  return detail::soliton_to_json(s).dump(indent);
}

}  // namespace warpcheck
