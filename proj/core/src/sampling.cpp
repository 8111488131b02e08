#include "warpcheck/sampling.hpp"

#include <random>

#include "warpcheck/errors.hpp"

namespace warpcheck {

std::vector<std::array<double, 2>> unit_box(int n) {
  return std::vector<std::array<double, 2>>(static_cast<std::size_t>(n), {-1.0, 1.0});
}

std::vector<Point> sample_points(const SamplingPlan& plan,
                                 const std::function<bool(const Point&)>& accept) {
  std::mt19937_64 rng(plan.seed);
  auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(plan.count));
  const std::size_t n = plan.box.size();
  long attempts = 0;
  const long max_attempts = 10000L * std::max(1, plan.count);
  while (points.size() < static_cast<std::size_t>(plan.count)) {
    if (++attempts > max_attempts)
      throw DomainViolation("sampling box produced too few in-domain points");
    Point p(n);
    for (std::size_t i = 0; i < n; ++i)
      p[i] = plan.box[i][0] + (plan.box[i][1] - plan.box[i][0]) * unit();
    if (accept && !accept(p)) continue;
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace warpcheck
