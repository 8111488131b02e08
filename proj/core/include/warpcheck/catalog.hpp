#pragma once

#include <optional>

#include "warpcheck/soliton.hpp"

namespace warpcheck {

/// Ready-to-check model space or soliton instance. Every entry records which
/// checkers it is expected to pass under default sampling; the catalog is the
/// regression suite's backbone.
struct CatalogEntry {
  std::string name;
  std::string description;
  std::string params_json;  // normalized parameters used for the build
  std::variant<MetricField, WarpedProduct, SolitonData> payload;

  std::optional<StructureConstants> constants;   // a, b, c, a0 where meaningful
  std::optional<ConformalSpec> conformal;        // c, b of the conformal equation
  std::optional<double> curvature;               // Ric = (n-1) * curvature * g
  Expr sc_phi;                                   // conformal-field solution, if any
  Expr bochner_phi;                              // scalar field for the Bochner suite
  std::vector<std::string> expected_checkers;

  const MetricField& chart() const {
    if (const auto* m = std::get_if<MetricField>(&payload)) return *m;
    if (const auto* w = std::get_if<WarpedProduct>(&payload)) return w->product();
    return std::get<SolitonData>(payload).chart();
  }
  const WarpedProduct* warped() const {
    if (const auto* w = std::get_if<WarpedProduct>(&payload)) return w;
    if (const auto* s = std::get_if<SolitonData>(&payload)) return s->warped();
    return nullptr;
  }
};

/// Instantiate a registry entry. `params_json` is a JSON object with the
/// entry's documented parameters; {} selects the defaults. Throws ConfigError
/// for unknown names or out-of-range parameters.
CatalogEntry catalog_build(const std::string& name, const std::string& params_json = "{}");

std::vector<std::string> catalog_names();
std::string catalog_describe(const std::string& name);

/// Entry payload as schema JSON (`catalog emit`).
std::string catalog_emit(const std::string& name, const std::string& params_json = "{}",
                         int indent = 2);

/// All (chart, phi) pairs exercised by the Bochner-identity suite.
struct BochnerPair {
  std::string label;
  MetricField g;
  Expr phi;
};
std::vector<BochnerPair> bochner_pairs();

/// Height function phi_A(x) = <A, x> restricted to a quadric in the
/// semi-Euclidean space of the given ambient signature (dimension n+1,
/// negative directions first).
struct HeightFunctionSpec {
  std::vector<double> A;
  Signature ambient;  // of the surrounding semi-Euclidean space
  enum class Kind { Pseudosphere, PseudoHyperbolic } kind = Kind::Pseudosphere;
  double radius = 1.0;
};

struct HeightZeroReport {
  bool predicted_no_zeros = false;
  double sampled_min_abs = 0.0;
  bool sign_change_found = false;
  bool consistent = false;  // sampling agrees with the prediction
  CausalCharacter a_character = CausalCharacter::Spacelike;
};

/// Prediction: on the pseudosphere the height function has no zeros iff the
/// ambient index equals n and A is spacelike or lightlike; on the
/// pseudohyperbolic quadric iff the ambient index equals 1 and A is timelike
/// or lightlike. The report pairs the prediction with a 10^4-point sweep of
/// an explicit chart of the quadric. Supports n = 2. Throws EmptyQuadric
/// when the quadric is empty for the signature and Error when A = 0.
HeightZeroReport height_zero_classification(const HeightFunctionSpec& spec);

}  // namespace warpcheck
