#include "lambdahull/bodies.hpp"

#include "lambdahull/radii.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <boost/math/special_functions/erf.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

namespace lambdahull {
namespace {

constexpr double kFeasibleSlack = 1e-11;  // relative to the ball radius

void check_unit(const Vec& u) {
  if (std::abs(u.norm() - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidParam, "direction must be a unit vector");
}

// Combinations of {0..m-1} of size k, lexicographic.
template <typename F>
void for_each_combination(int m, int k, F&& f) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::optional<BallPolytope::Face> make_face(const std::vector<Vec>& centers,
                                            const std::vector<int>& members, double rho) {
  const int n = static_cast<int>(centers.front().size());
  const int k = static_cast<int>(members.size());
  BallPolytope::Face face;
  face.members = members;
  const Vec& base = centers[members[0]];
  if (k == 1) {
    face.origin = base;
    face.basis = Mat(n, 0);
    face.radius = rho;
    return face;
  }
  Mat diff(n, k - 1);
  for (int j = 1; j < k; ++j) diff.col(j - 1) = centers[members[j]] - base;
  Eigen::HouseholderQR<Mat> qr(diff);
  const Mat r = qr.matrixQR().topRows(k - 1).template triangularView<Eigen::Upper>();
  const double scale = diff.colwise().norm().maxCoeff();
  for (int j = 0; j < k - 1; ++j)
    if (std::abs(r(j, j)) <= 1e-10 * scale) return std::nullopt;
  const Mat full_q = qr.householderQ();
  face.basis = full_q.leftCols(k - 1);
  const SmallMat gram = diff.transpose() * diff;
  const SmallVec rhs = 0.5 * gram.diagonal();
  const SmallVec beta = gram.ldlt().solve(rhs);
  const Vec offset = diff * beta;
  const double circum2 = offset.squaredNorm();
  if (circum2 >= rho * rho * (1.0 - 1e-12)) return std::nullopt;
  face.origin = base + offset;
  face.radius = std::sqrt(rho * rho - circum2);
  return face;
}

bool feasible_point(const std::vector<Vec>& centers, const Vec& y, double rho) {
  const double bound = rho * (1.0 + kFeasibleSlack);
  const double bound2 = bound * bound;
  for (const Vec& c : centers)
    if ((y - c).squaredNorm() > bound2) return false;
  return true;
}

// target = sum_i mu_i (y - c_i) with mu >= 0 over the face members.
bool nonnegative_multipliers(const std::vector<Vec>& centers, const BallPolytope::Face& face,
                             const Vec& y, const Vec& target) {
  const int k = static_cast<int>(face.members.size());
  if (k == 1) return target.dot(y - centers[face.members[0]]) >= -1e-12 * target.norm();
  Mat g(y.size(), k);
  for (int j = 0; j < k; ++j) g.col(j) = y - centers[face.members[j]];
  const SmallMat gram = g.transpose() * g;
  const SmallVec mu = gram.ldlt().solve(g.transpose() * target);
  const double scale = mu.cwiseAbs().maxCoeff();
  return (mu.array() >= -1e-9 * scale).all();
}

Vec complement_direction(const Mat& basis, const Vec& hint) {
  const int n = static_cast<int>(hint.size());
  for (int i = 0; i < n; ++i) {
    Vec e = unit_vec(n, i);
    Vec b = e - basis * (basis.transpose() * e);
    if (b.norm() > 0.5) return b.normalized();
  }
  return hint;
}

}  // namespace

// ---------------------------------------------------------------------------
// BallPolytope

BallPolytope::BallPolytope(double lambda, std::vector<Vec> centers) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw Error(ErrorCode::InvalidParam, "lambda must be positive");
  if (centers.empty()) throw Error(ErrorCode::EmptyBody, "no balls");
  const int n = static_cast<int>(centers.front().size());
  if (n < 2 || n > kMaxDim) throw Error(ErrorCode::InvalidParam, "dimension out of range");
  std::vector<Vec> unique;
  for (const Vec& c : centers) {
    if (c.size() != n) throw Error(ErrorCode::InvalidParam, "mixed dimensions");
    bool dup = false;
    for (const Vec& u : unique)
      if ((u - c).norm() <= 1e-12) dup = true;
    if (!dup) unique.push_back(c);
  }
  const double rho = 1.0 / lambda;
  const MebResult meb = min_enclosing_ball(unique);
  if (!(meb.radius < rho * (1.0 - 1e-12)))
    throw Error(ErrorCode::EmptyBody, "ball intersection has empty interior");

  auto data = std::make_shared<Data>();
  data->dim = n;
  data->lambda = lambda;
  data->centers = std::move(unique);
  const int m = static_cast<int>(data->centers.size());
  for (int k = 1; k <= std::min(n, m); ++k) {
    for_each_combination(m, k, [&](const std::vector<int>& idx) {
      if (auto f = make_face(data->centers, idx, rho)) data->faces.push_back(std::move(*f));
    });
  }
  data_ = std::move(data);
}

bool BallPolytope::contains(const Vec& x, double tol) const {
  const double bound = ball_radius() + tol;
  for (const Vec& c : centers())
    if ((x - c).norm() > bound) return false;
  return true;
}

BallPolytope BallPolytope::transformed(const Mat& rotation, const Vec& shift) const {
  std::vector<Vec> moved;
  moved.reserve(size());
  for (const Vec& c : centers()) moved.push_back(rotation * c + shift);
  return BallPolytope(lambda(), std::move(moved));
}

BallPolytope BallPolytope::without(std::size_t i) const {
  if (size() < 2 || i >= size()) throw Error(ErrorCode::InvalidParam, "cannot drop ball");
  std::vector<Vec> rest;
  for (std::size_t j = 0; j < size(); ++j)
    if (j != i) rest.push_back(centers()[j]);
  return BallPolytope(lambda(), std::move(rest));
}

SupportResult support_ballpoly(const BallPolytope& body, const Vec& u, const SolverConfig&) {
  check_unit(u);
  const double rho = body.ball_radius();
  const auto& centers = body.centers();
  SupportResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (const auto& face : body.faces()) {
    Vec b = u;
    if (face.basis.cols() > 0) b -= face.basis * (face.basis.transpose() * u);
    const double nb = b.norm();
    if (nb <= 1e-12) continue;
    const Vec y = face.origin + (face.radius / nb) * b;
    if (!feasible_point(centers, y, rho)) continue;
    const double val = u.dot(y);
    if (val > best.value) {
      best.value = val;
      best.point = y;
    }
    if (nonnegative_multipliers(centers, face, y, u)) {
      best.value = val;
      best.point = y;
      return best;
    }
  }
  if (!std::isfinite(best.value))
    throw Error(ErrorCode::NonConvergence, "no feasible support candidate");
  return best;
}

Vec project(const BallPolytope& body, const Vec& x, const SolverConfig& cfg) {
  if (body.contains(x, 0.0)) return x;
  const double rho = body.ball_radius();
  const auto& centers = body.centers();
  double best = std::numeric_limits<double>::infinity();
  Vec best_point;
  for (const auto& face : body.faces()) {
    const Vec rel = x - face.origin;
    Vec b = rel;
    if (face.basis.cols() > 0) b -= face.basis * (face.basis.transpose() * rel);
    double nb = b.norm();
    if (nb <= 1e-14) {
      b = complement_direction(face.basis, rel);
      nb = 1.0;
    }
    const Vec y = face.origin + (face.radius / nb) * b;
    if (!feasible_point(centers, y, rho)) continue;
    const double d = (x - y).norm();
    if (d < best) {
      best = d;
      best_point = y;
    }
    if (nonnegative_multipliers(centers, face, y, x - y)) return y;
  }
  if (!std::isfinite(best)) {
    (void)cfg;
    throw Error(ErrorCode::NonConvergence, "no feasible projection candidate");
  }
  return best_point;
}

double distance(const BallPolytope& body, const Vec& x, const SolverConfig& cfg) {
  return (x - project(body, x, cfg)).norm();
}

namespace {

Vec project_ball(const Ball& b, const Vec& y) {
  const Vec d = y - b.center;
  const double nd = d.norm();
  if (nd <= b.radius) return y;
  return b.center + (b.radius / nd) * d;
}

Vec project_halfspace(const Halfspace& h, const Vec& y) {
  const double gap = h.offset - h.normal.dot(y);
  if (gap <= 0.0) return y;
  return y + (gap / h.normal.squaredNorm()) * h.normal;
}

double violation(std::span<const Ball> balls, std::span<const Halfspace> hs, const Vec& y) {
  double v = 0.0;
  for (const auto& b : balls) v = std::max(v, (y - b.center).norm() - b.radius);
  for (const auto& h : hs) v = std::max(v, (h.offset - h.normal.dot(y)) / h.normal.norm());
  return v;
}

}  // namespace

std::optional<Vec> feasibility(std::span<const Ball> balls, const SolverConfig& cfg,
                               std::span<const Halfspace> halfspaces) {
  if (balls.empty()) throw Error(ErrorCode::InvalidParam, "feasibility needs a ball");
  Vec y = Vec::Zero(balls.front().center.size());
  for (const auto& b : balls) y += b.center;
  y /= static_cast<double>(balls.size());
  double prev = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < cfg.max_iters; ++sweep) {
    if (violation(balls, halfspaces, y) <= cfg.tol) return y;
    double moved = 0.0;
    for (const auto& b : balls) {
      const Vec next = project_ball(b, y);
      moved += (next - y).norm();
      y = next;
    }
    for (const auto& h : halfspaces) {
      const Vec next = project_halfspace(h, y);
      moved += (next - y).norm();
      y = next;
    }
    if (moved > cfg.gap_tol && std::abs(prev - moved) <= 1e-10 * moved) return std::nullopt;
    prev = moved;
  }
  throw Error(ErrorCode::NonConvergence, "cyclic projection neither converged nor stalled");
}

SupportResult support_ballpoly_bisection(const BallPolytope& body, const Vec& u,
                                         const SolverConfig& cfg) {
  check_unit(u);
  const double rho = body.ball_radius();
  std::vector<Ball> balls;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const Vec& c : body.centers()) {
    balls.push_back({c, rho});
    lo = std::max(lo, c.dot(u) - rho);
    hi = std::min(hi, c.dot(u) + rho);
  }
  SolverConfig inner = cfg;
  inner.tol = 0.01 * cfg.tol;
  SupportResult out;
  out.point = *feasibility(balls, inner);
  out.value = out.point.dot(u);
  lo = std::max(lo, out.value);
  while (hi - lo > cfg.tol) {
    const double mid = 0.5 * (lo + hi);
    const Halfspace level{u, mid};
    std::optional<Vec> hit;
    try {
      hit = feasibility(balls, inner, std::span<const Halfspace>(&level, 1));
    } catch (const Error&) {
      break;  // level within gap_tol of the support value
    }
    if (hit) {
      out.point = *hit;
      lo = std::max(mid, hit->dot(u) - inner.tol);
    } else {
      hi = mid;
    }
  }
  out.value = 0.5 * (lo + hi);
  return out;
}

Vec project_dykstra(const BallPolytope& body, const Vec& x, const SolverConfig& cfg) {
  const double rho = body.ball_radius();
  const auto& centers = body.centers();
  const std::size_t m = centers.size();
  std::vector<Vec> incr(m, Vec::Zero(x.size()));
  Vec y = x;
  for (int sweep = 0; sweep < cfg.max_iters; ++sweep) {
    double change = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Vec shifted = y + incr[i];
      const Vec next = project_ball({centers[i], rho}, shifted);
      incr[i] = shifted - next;
      change += (next - y).squaredNorm();
      y = next;
    }
    if (std::sqrt(change) <= 0.01 * cfg.tol && body.contains(y, cfg.tol)) return y;
  }
  throw Error(ErrorCode::NonConvergence, "Dykstra projection did not converge");
}

// ---------------------------------------------------------------------------
// Closed forms

const char* to_string(RotKind kind) {
  switch (kind) {
    case RotKind::Ball: return "ball";
    case RotKind::Lens: return "lens";
    case RotKind::Spindle: return "spindle";
  }
  return "?";
}

RotSymBody make_ball(int dim, double lambda, const Vec& center, double radius) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidParam, "lambda must be positive");
  if (center.size() != dim) throw Error(ErrorCode::InvalidParam, "center dimension");
  if (!(radius > 0.0) || radius > (1.0 / lambda) * (1.0 + 1e-12))
    throw Error(ErrorCode::InvalidParam, "ball radius must lie in (0, 1/lambda]");
  RotSymBody b;
  b.kind = RotKind::Ball;
  b.dim = dim;
  b.lambda = lambda;
  b.axis = unit_vec(dim, 0);
  b.center = center;
  b.param = radius;
  return b;
}

namespace {

RotSymBody make_axial(RotKind kind, double lambda, const Vec& axis, const Vec& center,
                      double param) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidParam, "lambda must be positive");
  const double rho = 1.0 / lambda;
  if (!(param > 0.0) || param > rho * (1.0 + 1e-12))
    throw Error(ErrorCode::InvalidParam, "parameter must lie in (0, 1/lambda]");
  if (axis.size() != center.size() || axis.norm() < 1e-12)
    throw Error(ErrorCode::InvalidParam, "axis must be a nonzero vector of the body dimension");
  RotSymBody b;
  b.kind = kind;
  b.dim = static_cast<int>(center.size());
  b.lambda = lambda;
  b.axis = axis.normalized();
  b.center = center;
  b.param = std::min(param, rho);
  return b;
}

// Support of the origin-centred lens with half-offset a = rho - r.
double lens_support_local(double rho, double a, double cos_t, double sin_t) {
  const double c = std::abs(cos_t);
  if (c * rho >= a) return rho - a * c;
  return std::sqrt(rho * rho - a * a) * sin_t;
}

Vec lens_support_point_local(double rho, double a, const Vec& axis, const Vec& u) {
  const double c = u.dot(axis);
  if (std::abs(c) * rho >= a) {
    const double sign = c >= 0 ? 1.0 : -1.0;
    return -sign * a * axis + rho * u;
  }
  Vec perp = u - c * axis;
  return (std::sqrt(rho * rho - a * a) / perp.norm()) * perp;
}

}  // namespace

RotSymBody make_lens(double lambda, const Vec& axis, const Vec& center, double inradius) {
  RotSymBody b = make_axial(RotKind::Lens, lambda, axis, center, inradius);
  if (b.param >= (1.0 / lambda) * (1.0 - 1e-15)) {
    b.kind = RotKind::Ball;
    b.param = 1.0 / lambda;
  }
  return b;
}

RotSymBody make_spindle(double lambda, const Vec& axis, const Vec& center, double circumradius) {
  return make_axial(RotKind::Spindle, lambda, axis, center, circumradius);
}

double support_rotsym(const RotSymBody& body, const Vec& u) {
  const double rho = 1.0 / body.lambda;
  const double base = body.center.dot(u);
  switch (body.kind) {
    case RotKind::Ball: return base + body.param * u.norm();
    case RotKind::Lens: {
      const double c = u.dot(body.axis);
      const double s = std::sqrt(std::max(0.0, u.squaredNorm() - c * c));
      return base + lens_support_local(rho, rho - body.param, c, s);
    }
    case RotKind::Spindle: {
      // Dual lens has inradius rho - R.
      const double a = body.param;
      const double c = u.dot(body.axis);
      const double s = std::sqrt(std::max(0.0, u.squaredNorm() - c * c));
      return base + rho - lens_support_local(rho, a, -c, s);
    }
  }
  return 0.0;
}

Vec support_point_rotsym(const RotSymBody& body, const Vec& u) {
  const double rho = 1.0 / body.lambda;
  const Vec d = u.normalized();
  switch (body.kind) {
    case RotKind::Ball: return body.center + body.param * d;
    case RotKind::Lens:
      return body.center + lens_support_point_local(rho, rho - body.param, body.axis, d);
    case RotKind::Spindle:
      return body.center + rho * d + lens_support_point_local(rho, body.param, body.axis, -d);
  }
  return body.center;
}

bool contains_rotsym(const RotSymBody& body, const Vec& x, double tol) {
  const double rho = 1.0 / body.lambda;
  const Vec rel = x - body.center;
  switch (body.kind) {
    case RotKind::Ball: return rel.norm() <= body.param + tol;
    case RotKind::Lens: {
      const double a = rho - body.param;
      return (rel - a * body.axis).norm() <= rho + tol &&
             (rel + a * body.axis).norm() <= rho + tol;
    }
    case RotKind::Spindle: {
      const double along = rel.dot(body.axis);
      const double radial = (rel - along * body.axis).norm();
      const double d = std::sqrt(std::max(0.0, rho * rho - body.param * body.param));
      return std::abs(along) <= body.param + tol &&
             std::hypot(along, radial + d) <= rho + tol;
    }
  }
  return false;
}

BallPolytope to_ballpoly(const RotSymBody& body) {
  const double rho = 1.0 / body.lambda;
  if (body.kind == RotKind::Lens) {
    const double a = rho - body.param;
    return BallPolytope(body.lambda, {body.center + a * body.axis, body.center - a * body.axis});
  }
  if (body.kind == RotKind::Ball && std::abs(body.param - rho) <= 1e-12 * rho)
    return BallPolytope(body.lambda, {body.center});
  throw Error(ErrorCode::Unsupported, std::string(to_string(body.kind)) +
                                          " is not a finite intersection of 1/lambda balls");
}

RotSymBody dual_of(const RotSymBody& body) {
  const double rho = 1.0 / body.lambda;
  switch (body.kind) {
    case RotKind::Lens: return make_spindle(body.lambda, body.axis, body.center, rho - body.param);
    case RotKind::Spindle: return make_lens(body.lambda, body.axis, body.center, rho - body.param);
    case RotKind::Ball:
      if (body.param >= rho * (1.0 - 1e-12))
        throw Error(ErrorCode::Unsupported, "dual of a full 1/lambda ball is a point");
      return make_ball(body.dim, body.lambda, body.center, rho - body.param);
  }
  return body;
}

int dim_of(const Body& body) {
  return std::visit(
      [](const auto& b) {
        if constexpr (std::is_same_v<std::decay_t<decltype(b)>, BallPolytope>) return b.dim();
        else return b.dim;
      },
      body);
}

double lambda_of(const Body& body) {
  return std::visit(
      [](const auto& b) {
        if constexpr (std::is_same_v<std::decay_t<decltype(b)>, BallPolytope>)
          return b.lambda();
        else return b.lambda;
      },
      body);
}

// ---------------------------------------------------------------------------
// Views

ConvexBodyView view_of(const BallPolytope& body, const SolverConfig& cfg) {
  ConvexBodyView v;
  v.dim = body.dim();
  v.lambda = body.lambda();
  v.key = body_to_json(body);
  v.support = [body, cfg](const Vec& u) { return support_ballpoly(body, u, cfg).value; };
  v.support_point = [body, cfg](const Vec& u) { return support_ballpoly(body, u, cfg).point; };
  v.contains = [body](const Vec& x, double tol) { return body.contains(x, tol); };
  v.distance = [body, cfg](const Vec& x) { return distance(body, x, cfg); };
  if (body.size() == 1) v.ball = Ball{body.centers().front(), body.ball_radius()};
  return v;
}

ConvexBodyView view_of(const RotSymBody& body) {
  ConvexBodyView v;
  v.dim = body.dim;
  v.lambda = body.lambda;
  v.key = body_to_json(body);
  v.support = [body](const Vec& u) { return support_rotsym(body, u); };
  v.support_point = [body](const Vec& u) { return support_point_rotsym(body, u); };
  v.contains = [body](const Vec& x, double tol) { return contains_rotsym(body, x, tol); };
  switch (body.kind) {
    case RotKind::Ball:
      v.ball = Ball{body.center, body.param};
      v.distance = [body](const Vec& x) {
        return std::max(0.0, (x - body.center).norm() - body.param);
      };
      break;
    case RotKind::Lens: {
      const BallPolytope poly = to_ballpoly(body);
      v.distance = [poly](const Vec& x) { return distance(poly, x); };
      break;
    }
    case RotKind::Spindle: break;
  }
  return v;
}

ConvexBodyView view_of(const Body& body, const SolverConfig& cfg) {
  if (const auto* p = std::get_if<BallPolytope>(&body)) return view_of(*p, cfg);
  return view_of(std::get<RotSymBody>(body));
}

namespace {

Vec halton_direction(int n, int index) {
  static constexpr int primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  Vec v(n);
  for (int k = 0; k < n; ++k) {
    double f = 1.0, r = 0.0;
    int i = index + 1;
    while (i > 0) {
      f /= primes[k];
      r += f * (i % primes[k]);
      i /= primes[k];
    }
    v(k) = std::sqrt(2.0) * boost::math::erf_inv(2.0 * r - 1.0);
  }
  if (v.norm() < 1e-12) v = unit_vec(n, 0);
  return v.normalized();
}

}  // namespace

FarthestResult farthest_distance(const ConvexBodyView& body, const Vec& x,
                                 const SolverConfig& cfg) {
  if (!body.support_point) throw Error(ErrorCode::Unsupported, "view has no support points");
  FarthestResult best;
  best.distance = -1.0;
  const int per_start = std::min(cfg.max_iters, 2000);
  for (int s = 0; s < std::max(1, cfg.multistarts); ++s) {
    Vec u = halton_direction(body.dim, s);
    Vec y = body.support_point(u);
    double dist = (y - x).norm();
    for (int it = 0; it < per_start && dist > 0.0; ++it) {
      const Vec next_u = (y - x) / dist;
      const double step = (next_u - u).norm();
      u = next_u;
      y = body.support_point(u);
      dist = (y - x).norm();
      if (step <= cfg.ascent_step_tol) break;
    }
    if (dist > best.distance) {
      best.distance = dist;
      best.point = y;
      best.direction = dist > 0.0 ? Vec((y - x) / dist) : u;
    }
  }
  return best;
}

double distance_to(const ConvexBodyView& body, const Vec& x, const SolverConfig& cfg) {
  if (body.distance) return body.distance(x);
  if (!body.support_point) throw Error(ErrorCode::Unsupported, "view has no support points");
  return gjk_distance(body.dim, body.support_point, x, 0.01 * cfg.tol, 500).upper;
}

ConvexBodyView dual_view(const ConvexBodyView& body, double lambda, const SolverConfig& cfg) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidParam, "dual needs lambda > 0");
  const double rho = 1.0 / lambda;
  ConvexBodyView v;
  v.dim = body.dim;
  v.lambda = lambda;
  v.key = "dual:" + body.key;
  auto primal = std::make_shared<const ConvexBodyView>(body);
  v.support = [primal, rho](const Vec& u) { return rho - primal->support(-u); };
  v.support_point = [primal, rho](const Vec& u) {
    return Vec(rho * u.normalized() + primal->support_point(-u));
  };
  v.contains = [primal, rho, cfg](const Vec& x, double tol) {
    return farthest_distance(*primal, x, cfg).distance <= rho + tol;
  };
  return v;
}

ConvexBodyView dual_view(const BallPolytope& body, const SolverConfig& cfg) {
  return dual_view(view_of(body, cfg), body.lambda(), cfg);
}

double dual_support(const BallPolytope& body, const Vec& u, const SolverConfig& cfg) {
  return body.ball_radius() - support_ballpoly(body, -u, cfg).value;
}

bool dual_contains(const BallPolytope& body, const Vec& x, const SolverConfig& cfg) {
  return farthest_distance(view_of(body, cfg), x, cfg).distance <= body.ball_radius() + cfg.tol;
}

ConvexBodyView minkowski_view(std::vector<MinkowskiTerm> terms, const SolverConfig& cfg) {
  if (terms.empty()) throw Error(ErrorCode::InvalidParam, "empty Minkowski sum");
  const int dim = terms.front().body.dim;
  bool any_positive = false;
  Vec shift = Vec::Zero(dim);
  double ball_radius = 0.0;
  std::vector<MinkowskiTerm> rest;
  std::string key;
  for (const auto& t : terms) {
    if (t.body.dim != dim) throw Error(ErrorCode::InvalidParam, "mixed dimensions in sum");
    if (t.weight < 0.0) throw Error(ErrorCode::InvalidParam, "negative Minkowski weight");
    if (t.weight > 0.0) any_positive = true;
    key += format_real(t.weight) + "*" + t.body.key + "+";
    if (t.weight == 0.0) continue;
    if (t.body.ball) {
      shift += t.weight * t.body.ball->center;
      ball_radius += t.weight * t.body.ball->radius;
    } else {
      if (!t.body.support_point || !t.body.support)
        throw Error(ErrorCode::Unsupported, "summand without a support map");
      rest.push_back(t);
    }
  }
  if (!any_positive) throw Error(ErrorCode::InvalidParam, "all Minkowski weights are zero");

  ConvexBodyView v;
  v.dim = dim;
  v.key = "sum:" + key;
  auto parts = std::make_shared<const std::vector<MinkowskiTerm>>(std::move(rest));
  v.support = [parts, shift, ball_radius](const Vec& u) {
    double h = shift.dot(u) + ball_radius * u.norm();
    for (const auto& t : *parts) h += t.weight * t.body.support(u);
    return h;
  };
  v.support_point = [parts, shift, ball_radius](const Vec& u) {
    Vec p = shift + ball_radius * u.normalized();
    for (const auto& t : *parts) p += t.weight * t.body.support_point(u);
    return p;
  };
  if (parts->empty()) {
    v.ball = Ball{shift, ball_radius};
    v.distance = [shift, ball_radius](const Vec& x) {
      return std::max(0.0, (x - shift).norm() - ball_radius);
    };
  } else if (parts->size() == 1 && parts->front().body.distance) {
    const MinkowskiTerm only = parts->front();
    v.distance = [only, shift, ball_radius](const Vec& x) {
      const double d = only.weight * only.body.distance((x - shift) / only.weight);
      return std::max(0.0, d - ball_radius);
    };
  } else {
    SupportPointFn core = [parts](const Vec& u) {
      Vec p = Vec::Zero(u.size());
      for (const auto& t : *parts) p += t.weight * t.body.support_point(u);
      return p;
    };
    v.distance = [core, dim, shift, ball_radius, cfg](const Vec& x) {
      const double d = gjk_distance(dim, core, x - shift, 0.01 * cfg.tol, 500).upper;
      return std::max(0.0, d - ball_radius);
    };
  }
  const auto dist = v.distance;
  v.contains = [dist](const Vec& x, double tol) { return dist(x) <= tol; };
  return v;
}

bool minkowski_contains(std::span<const MinkowskiTerm> terms, const Vec& x,
                        const SolverConfig& cfg) {
  const ConvexBodyView sum =
      minkowski_view(std::vector<MinkowskiTerm>(terms.begin(), terms.end()), cfg);
  return sum.contains(x, cfg.tol);
}

// ---------------------------------------------------------------------------
// JSON

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string vec_json(const Vec& v) {
  std::string s = "[";
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_real(v(i));
  }
  return s + "]";
}

Vec vec_from(const nlohmann::json& j, int dim, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw Error(ErrorCode::InvalidParam, std::string(what) + " must be an array of length dim");
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = j.at(i).get<double>();
  return v;
}

}  // namespace

std::string body_to_json(const Body& body) {
  if (const auto* p = std::get_if<BallPolytope>(&body)) {
    std::string s = "{\"dim\":" + std::to_string(p->dim()) + ",\"lambda\":" +
                    format_real(p->lambda()) + ",\"kind\":\"ballpoly\",\"centers\":[";
    for (std::size_t i = 0; i < p->size(); ++i) {
      if (i) s += ",";
      s += vec_json(p->centers()[i]);
    }
    return s + "]}";
  }
  const auto& r = std::get<RotSymBody>(body);
  return "{\"dim\":" + std::to_string(r.dim) + ",\"lambda\":" + format_real(r.lambda) +
         ",\"kind\":\"" + to_string(r.kind) + "\",\"axis\":" + vec_json(r.axis) +
         ",\"center\":" + vec_json(r.center) + ",\"param\":" + format_real(r.param) + "}";
}

Body body_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidParam, std::string("malformed body JSON: ") + e.what());
  }
  try {
    const int dim = j.at("dim").get<int>();
    const double lambda = j.at("lambda").get<double>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ballpoly") {
      std::vector<Vec> centers;
      for (const auto& c : j.at("centers")) centers.push_back(vec_from(c, dim, "center"));
      return BallPolytope(lambda, std::move(centers));
    }
    const Vec center = j.contains("center") ? vec_from(j.at("center"), dim, "center")
                                            : Vec(Vec::Zero(dim));
    const Vec axis =
        j.contains("axis") ? vec_from(j.at("axis"), dim, "axis") : Vec(unit_vec(dim, 0));
    const double param = j.at("param").get<double>();
    if (kind == "ball") return make_ball(dim, lambda, center, param);
    if (kind == "lens") return make_lens(lambda, axis, center, param);
    if (kind == "spindle") return make_spindle(lambda, axis, center, param);
    throw Error(ErrorCode::InvalidParam, "unknown body kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidParam, std::string("body JSON: ") + e.what());
  }
}

}  // namespace lambdahull
