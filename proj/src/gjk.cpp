#include "lambdahull/gjk.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <limits>
#include <vector>

namespace lambdahull {
namespace {

using Simplex = std::vector<Vec>;

// Closest point to the origin of conv(w). Replaces w by the vertices of the
// face whose relative interior holds the answer.
Vec closest_in_simplex(Simplex& w) {
  const int k = static_cast<int>(w.size());
  double best = std::numeric_limits<double>::infinity();
  Vec best_point;
  unsigned best_mask = 0;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    int idx[kMaxDim + 2];
    int cnt = 0;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) idx[cnt++] = i;
    if (cnt == 1) {
      const double d = w[idx[0]].squaredNorm();
      if (d < best) {
        best = d;
        best_point = w[idx[0]];
        best_mask = mask;
      }
      continue;
    }
    const Vec& base = w[idx[0]];
    Mat diff(base.size(), cnt - 1);
    for (int j = 1; j < cnt; ++j) diff.col(j - 1) = w[idx[j]] - base;
    const SmallMat gram = diff.transpose() * diff;
    const SmallVec rhs = -(diff.transpose() * base);
    Eigen::LDLT<SmallMat> ldlt(gram);
    if (ldlt.info() != Eigen::Success) continue;
    const double scale = gram.diagonal().maxCoeff();
    if (ldlt.vectorD().cwiseAbs().minCoeff() <= 1e-13 * scale) continue;
    const SmallVec mu = ldlt.solve(rhs);
    const double lambda0 = 1.0 - mu.sum();
    if (lambda0 <= 0.0 || (mu.array() <= 0.0).any()) continue;
    Vec p = base + diff * mu;
    const double d = p.squaredNorm();
    if (d < best) {
      best = d;
      best_point = p;
      best_mask = mask;
    }
  }
  Simplex reduced;
  for (int i = 0; i < k; ++i)
    if (best_mask & (1u << i)) reduced.push_back(w[i]);
  w.swap(reduced);
  return best_point;
}

}  // namespace

DistanceBounds gjk_distance(int dim, const SupportPointFn& support_point, const Vec& x,
                            double tol, int max_iters,
                            const std::function<bool(double, double)>& settled) {
  DistanceBounds out;
  Simplex w;
  Vec dir = unit_vec(dim, 0);
  Vec s = support_point(dir) - x;
  w.push_back(s);
  Vec v = s;
  out.lower = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    out.iterations = it + 1;
    const double vn = v.norm();
    out.upper = vn;
    if (vn <= tol) {
      out.lower = 0.0;
      break;
    }
    dir = -v / vn;
    s = support_point(dir) - x;
    // dist(0, M - x) >= -h_{M-x}(dir) = <s, v>/|v|.
    out.lower = std::max(out.lower, -s.dot(dir));
    if (out.upper - out.lower <= tol) break;
    if (settled && settled(out.lower, out.upper)) break;
    if (static_cast<int>(w.size()) > dim) break;
    w.push_back(s);
    const Vec next = closest_in_simplex(w);
    if (next.squaredNorm() >= v.squaredNorm() * (1.0 - 1e-15)) {
      v = next;
      out.upper = v.norm();
      break;
    }
    v = next;
    if (static_cast<int>(w.size()) == dim + 1) {
      // Origin lies in a full-dimensional simplex of support points.
      v = Vec::Zero(dim);
      out.upper = 0.0;
      out.lower = 0.0;
      break;
    }
  }
  out.upper = std::min(out.upper, v.norm());
  out.lower = std::min(out.lower, out.upper);
  out.closest = x + v;
  return out;
}

Vec min_norm_point(std::span<const Vec> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidParam, "min_norm_point of empty set");
  const int dim = static_cast<int>(points.front().size());
  auto support = [&](const Vec& d) {
    std::size_t arg = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double v = points[i].dot(d);
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    return points[arg];
  };
  const DistanceBounds b = gjk_distance(dim, support, Vec::Zero(dim), 1e-15, 1000);
  return b.closest;
}

}  // namespace lambdahull
