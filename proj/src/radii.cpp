#include "lambdahull/radii.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>

namespace lambdahull {
namespace {

struct Sphere {
  Vec center;
  double radius = -1.0;  // negative: empty
};

// Circumsphere of the points inside their affine hull; nullopt when the
// points are affinely dependent.
std::optional<Sphere> circumsphere(std::span<const Vec> pts, const std::vector<int>& idx) {
  if (idx.empty()) return Sphere{};
  const Vec& base = pts[idx[0]];
  if (idx.size() == 1) return Sphere{base, 0.0};
  const int k = static_cast<int>(idx.size()) - 1;
  Mat diff(base.size(), k);
  for (int j = 0; j < k; ++j) diff.col(j) = pts[idx[j + 1]] - base;
  const SmallMat gram = diff.transpose() * diff;
  Eigen::LDLT<SmallMat> ldlt(gram);
  const double scale = gram.diagonal().maxCoeff();
  if (ldlt.info() != Eigen::Success || ldlt.vectorD().cwiseAbs().minCoeff() <= 1e-14 * scale)
    return std::nullopt;
  const SmallVec beta = ldlt.solve(SmallVec(0.5 * gram.diagonal()));
  const Vec offset = diff * beta;
  return Sphere{base + offset, offset.norm()};
}

struct Welzl {
  std::span<const Vec> pts;
  int dim;
  double slack;
  bool degenerate = false;

  bool outside(const Sphere& s, const Vec& p) const {
    return s.radius < 0.0 || (p - s.center).norm() > s.radius + slack;
  }

  Sphere run(std::vector<int>& order, std::size_t end, std::vector<int>& boundary) {
    auto sphere = circumsphere(pts, boundary);
    if (!sphere) {
      degenerate = true;
      return Sphere{};
    }
    Sphere ball = *sphere;
    if (static_cast<int>(boundary.size()) == dim + 1) return ball;
    for (std::size_t i = 0; i < end; ++i) {
      const int p = order[i];
      if (!outside(ball, pts[p])) continue;
      boundary.push_back(p);
      ball = run(order, i, boundary);
      boundary.pop_back();
      if (degenerate) return ball;
      std::rotate(order.begin(), order.begin() + i, order.begin() + i + 1);
    }
    return ball;
  }
};

Sphere brute_force_meb(std::span<const Vec> pts, double slack) {
  const int m = static_cast<int>(pts.size());
  const int n = static_cast<int>(pts.front().size());
  Sphere best;
  best.radius = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    if (static_cast<int>(idx.size()) > n + 1) continue;
    const auto s = circumsphere(pts, idx);
    if (!s || s->radius >= best.radius) continue;
    bool ok = true;
    for (const Vec& p : pts)
      if ((p - s->center).norm() > s->radius + slack) ok = false;
    if (ok) best = *s;
  }
  if (!std::isfinite(best.radius))
    throw Error(ErrorCode::DegenerateSupport, "no enclosing support set found");
  return best;
}

}  // namespace

MebResult min_enclosing_ball(std::span<const Vec> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidParam, "MEB of empty set");
  const int n = static_cast<int>(points.front().size());
  double scale = 0.0;
  for (const Vec& p : points) scale = std::max(scale, (p - points.front()).norm());
  const double slack = 1e-13 * std::max(1.0, scale);

  Welzl w{points, n, slack};
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> boundary;
  Sphere ball = w.run(order, order.size(), boundary);
  if (w.degenerate) {
    if (points.size() > 20)
      throw Error(ErrorCode::DegenerateSupport, "affinely dependent support set");
    ball = brute_force_meb(points, slack);
  }

  MebResult out;
  out.center = ball.center;
  out.radius = 0.0;
  for (const Vec& p : points) out.radius = std::max(out.radius, (p - ball.center).norm());
  for (std::size_t i = 0; i < points.size(); ++i)
    if ((points[i] - out.center).norm() >= out.radius - 1e-7) out.support.push_back(int(i));
  return out;
}

InballResult inradius(const BallPolytope& body) {
  const double rho = body.ball_radius();
  InballResult out;
  if (body.size() == 1) {
    out.radius = rho;
    out.center = body.centers().front();
    out.degenerate = true;
    return out;
  }
  const MebResult meb = min_enclosing_ball(body.centers());
  out.radius = rho - meb.radius;
  out.center = meb.center;
  for (int i : meb.support) {
    const Vec& c = body.centers()[i];
    const Vec d = meb.center - c;
    out.touching.push_back(c + (rho / d.norm()) * d);
    out.contact_centers.push_back(i);
  }
  return out;
}

bool open_hemisphere_check(std::span<const Vec> points, const Vec& z, double eps) {
  if (points.empty()) return true;
  std::vector<Vec> dirs;
  dirs.reserve(points.size());
  for (const Vec& p : points) {
    const Vec d = p - z;
    const double nd = d.norm();
    if (nd <= 0.0) throw Error(ErrorCode::InvalidParam, "touching point at the sphere center");
    dirs.push_back(d / nd);
  }
  return min_norm_point(dirs).norm() > eps;
}

BallPolytope tangent_polytope(std::span<const Vec> touching, const Vec& z, double r,
                              double lambda) {
  const double rho = 1.0 / lambda;
  if (!(r > 0.0) || r > rho * (1.0 + 1e-12))
    throw Error(ErrorCode::InvalidParam, "inradius must lie in (0, 1/lambda]");
  if (touching.empty()) throw Error(ErrorCode::InvalidParam, "empty touching set");
  for (const Vec& p : touching)
    if (std::abs((p - z).norm() - r) > 1e-9 * std::max(1.0, r))
      throw Error(ErrorCode::InvalidParam, "touching point off the inscribed sphere");
  if (open_hemisphere_check(touching, z))
    throw Error(ErrorCode::HemisphereViolation,
                "touching set lies in an open hemisphere; the ball is not maximal");
  const double scale = 1.0 - rho / r;
  std::vector<Vec> centers;
  centers.reserve(touching.size());
  for (const Vec& p : touching) centers.push_back(z + scale * (p - z));
  return BallPolytope(lambda, std::move(centers));
}

CircumResult circumradius(const ConvexBodyView& body, const SolverConfig& cfg) {
  if (!body.support_point) throw Error(ErrorCode::Unsupported, "view has no support points");
  const int n = body.dim;
  std::vector<Vec> core;
  for (int i = 0; i < n; ++i) {
    core.push_back(body.support_point(unit_vec(n, i)));
    core.push_back(body.support_point(-unit_vec(n, i)));
  }
  CircumResult out;
  out.converged = false;
  double best_upper = std::numeric_limits<double>::infinity();
  MebResult meb;
  const int cap = std::min(cfg.max_iters, 10000);
  for (int it = 0; it < cap; ++it) {
    out.iterations = it + 1;
    meb = min_enclosing_ball(core);
    const FarthestResult far = farthest_distance(body, meb.center, cfg);
    if (far.distance < best_upper) {
      best_upper = far.distance;
      out.center = meb.center;
    }
    if (far.distance - meb.radius <= 1e-10 * std::max(1.0, meb.radius)) {
      out.converged = true;
      break;
    }
    core.push_back(far.point);
    // Drop core points strictly inside the current ball to keep the MEB small.
    if (core.size() > 64) {
      std::vector<Vec> kept;
      for (int i : meb.support) kept.push_back(core[i]);
      kept.push_back(far.point);
      core.swap(kept);
    }
  }
  out.radius = best_upper;
  for (const Vec& p : core) {
    const Vec d = p - out.center;
    if (d.norm() >= out.radius - 1e-7) out.certificate.push_back(d.normalized());
  }
  return out;
}

}  // namespace lambdahull
