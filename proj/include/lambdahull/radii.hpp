// Inradius, circumradius, touching sets and the tangent-polytope closure.

#pragma once

#include "lambdahull/bodies.hpp"

#include <span>
#include <vector>

namespace lambdahull {

struct MebResult {
  Vec center;
  double radius = 0.0;
  std::vector<int> support;  // indices of points on the boundary (within 1e-7)
};

// Smallest enclosing ball of a finite point set (move-to-front Welzl).
MebResult min_enclosing_ball(std::span<const Vec> points);

struct InballResult {
  double radius = 0.0;
  Vec center;
  std::vector<Vec> touching;
  std::vector<int> contact_centers;  // ball index behind each touching point
  bool degenerate = false;           // single ball: the whole sphere touches
};

InballResult inradius(const BallPolytope& body);

inline constexpr double kHemisphereEps = 1e-9;

// True iff the points (about z) lie in some open hemisphere, decided by the
// minimum-norm point of the convex hull of the normalised directions.
bool open_hemisphere_check(std::span<const Vec> points, const Vec& z,
                           double eps = kHemisphereEps);

// Intersection of the 1/lambda balls tangent to B(z, r) at the points of T.
BallPolytope tangent_polytope(std::span<const Vec> touching, const Vec& z, double r,
                              double lambda);

struct CircumResult {
  double radius = 0.0;
  Vec center;
  std::vector<Vec> certificate;  // unit directions from center to contacts
  bool converged = true;
  int iterations = 0;
};

// Smallest enclosing ball of a body known through its support points: core
// set of farthest points, exact MEB of the core set, repeat.
CircumResult circumradius(const ConvexBodyView& body, const SolverConfig& cfg = {});

}  // namespace lambdahull
