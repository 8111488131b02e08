#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "warpcheck/tensor.hpp"

namespace warpcheck {

/// Deterministic seeded uniform sampling inside a coordinate box. The same
/// (seed, count, box) always yields the same points, independent of platform:
/// doubles are drawn as (mt19937_64() >> 11) * 2^-53.
struct SamplingPlan {
  std::uint64_t seed = 42;
  int count = 100;
  std::vector<std::array<double, 2>> box;  // per-coordinate [lo, hi]

  SamplingPlan() = default;
  SamplingPlan(std::uint64_t s, int n, std::vector<std::array<double, 2>> b)
      : seed(s), count(n), box(std::move(b)) {}
};

/// Draw `plan.count` points from the box. Points failing `accept` (when
/// provided) are re-drawn; throws DomainViolation if the box cannot produce
/// enough admissible points.
std::vector<Point> sample_points(const SamplingPlan& plan,
                                 const std::function<bool(const Point&)>& accept = {});

/// Default box [-1,1]^n.
std::vector<std::array<double, 2>> unit_box(int n);

}  // namespace warpcheck
