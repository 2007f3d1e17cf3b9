// Distance queries against convex sets that are known only through a
// support-point map (Gilbert-Johnson-Keerthi iteration).

#pragma once

#include "lambdahull/core.hpp"

#include <functional>
#include <span>

namespace lambdahull {

using SupportPointFn = std::function<Vec(const Vec&)>;

struct DistanceBounds {
  double lower = 0.0;  // certified lower bound on dist(x, M)
  double upper = 0.0;  // dist from x to the current inner approximation
  Vec closest;         // point of M (convex combination of support points)
  int iterations = 0;
};

// Bounds on dist(x, M). Iterates until upper - lower <= tol, upper <= tol, or
// `settled(lower, upper)` returns true.
DistanceBounds gjk_distance(int dim, const SupportPointFn& support_point, const Vec& x,
                            double tol, int max_iters,
                            const std::function<bool(double, double)>& settled = {});

// Minimum-norm point of conv(points).
Vec min_norm_point(std::span<const Vec> points);

}  // namespace lambdahull
