#include "lambdahull/steiner_mixed.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include <algorithm>
#include <map>
#include <numeric>

namespace lambdahull {
namespace {

constexpr long long kChunk = 4096;
constexpr double kInsideTol = 1e-10;

// One family of nested sets sampled through its own box from the shared
// uniform stream.
struct Group {
  BBox box;
  std::function<int(const Vec&)> classify;
  int levels = 1;
};

struct GroupedSample {
  std::vector<double> value;  // flattened (group, level)
  Eigen::MatrixXd covariance;
};

GroupedSample mc_grouped(const std::vector<Group>& groups, long long samples,
                         std::uint64_t seed) {
  if (samples < 2) throw Error(ErrorCode::InvalidParam, "need at least two samples");
  const int n = static_cast<int>(groups.front().box.lo.size());
  const int g_count = static_cast<int>(groups.size());
  std::vector<int> offset(g_count + 1, 0);
  for (int g = 0; g < g_count; ++g) offset[g + 1] = offset[g] + groups[g].levels + 1;
  const int stride = offset.back();  // level slots including "outside"

  const long long chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::vector<long long>> joint(chunks);
  parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
    std::vector<long long> counts(static_cast<std::size_t>(stride) * stride, 0);
    CounterRng rng(seed, c);
    const long long end = std::min(samples, static_cast<long long>(c + 1) * kChunk);
    std::vector<int> slot(g_count);
    Vec u(n), x(n);
    for (long long i = static_cast<long long>(c) * kChunk; i < end; ++i) {
      for (int d = 0; d < n; ++d) u(d) = rng.uniform();
      for (int g = 0; g < g_count; ++g) {
        const BBox& b = groups[g].box;
        x = b.lo + u.cwiseProduct(b.hi - b.lo);
        const int level = std::clamp(groups[g].classify(x), 0, groups[g].levels);
        slot[g] = offset[g] + level;
      }
      for (int a = 0; a < g_count; ++a)
        for (int b = 0; b < g_count; ++b) ++counts[slot[a] * stride + slot[b]];
    }
    joint[c] = std::move(counts);
  });
  std::vector<long long> total(static_cast<std::size_t>(stride) * stride, 0);
  for (const auto& c : joint)
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += c[k];

  // Indicator (g, k) = [level_g <= k]; joint hits by prefix sums over levels.
  std::vector<int> flat_group, flat_level;
  for (int g = 0; g < g_count; ++g)
    for (int k = 0; k < groups[g].levels; ++k) {
      flat_group.push_back(g);
      flat_level.push_back(k);
    }
  const int q = static_cast<int>(flat_group.size());
  const double nn = static_cast<double>(samples);
  GroupedSample out;
  out.value.resize(q);
  out.covariance = Eigen::MatrixXd::Zero(q, q);
  std::vector<double> p(q);
  for (int a = 0; a < q; ++a) {
    const int g = flat_group[a];
    long long hits = 0;
    for (int l = 0; l <= flat_level[a]; ++l) hits += total[(offset[g] + l) * stride + offset[g] + l];
    p[a] = hits / nn;
    out.value[a] = groups[g].box.volume() * p[a];
  }
  for (int a = 0; a < q; ++a)
    for (int b = a; b < q; ++b) {
      const int ga = flat_group[a], gb = flat_group[b];
      long long both = 0;
      for (int la = 0; la <= flat_level[a]; ++la)
        for (int lb = 0; lb <= flat_level[b]; ++lb)
          both += total[(offset[ga] + la) * stride + offset[gb] + lb];
      const double cov = groups[ga].box.volume() * groups[gb].box.volume() *
                         (both / nn - p[a] * p[b]) / nn;
      out.covariance(a, b) = out.covariance(b, a) = cov;
    }
  return out;
}

// Smallest level k with dist(x, body) <= thresholds[k] (sorted ascending).
std::function<int(const Vec&)> distance_classifier(const ConvexBodyView& body,
                                                   std::vector<double> thresholds,
                                                   const SolverConfig& cfg) {
  auto level_of = [thresholds](double d) {
    return static_cast<int>(std::lower_bound(thresholds.begin(), thresholds.end(), d) -
                            thresholds.begin());
  };
  if (body.ball) {
    const Ball b = *body.ball;
    return [b, level_of](const Vec& x) {
      return level_of(std::max(0.0, (x - b.center).norm() - b.radius));
    };
  }
  if (body.distance) {
    const auto dist = body.distance;
    return [dist, level_of](const Vec& x) { return level_of(dist(x)); };
  }
  if (!body.support_point) throw Error(ErrorCode::Unsupported, "view has no support points");
  const SupportPointFn sp = body.support_point;
  const int dim = body.dim;
  const double tol = std::min(kInsideTol, 0.01 * cfg.tol);
  return [sp, dim, tol, thresholds, level_of](const Vec& x) {
    auto settled = [&thresholds](double lo, double up) {
      for (double t : thresholds)
        if (lo <= t && t < up) return false;
      return true;
    };
    const DistanceBounds b = gjk_distance(dim, sp, x, tol, 300, settled);
    return level_of(b.upper);
  };
}

std::vector<std::vector<int>> monomials(int degree, int vars) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(vars, 0);
  std::function<void(int, int)> rec = [&](int slot, int left) {
    if (slot == vars - 1) {
      cur[slot] = left;
      out.push_back(cur);
      return;
    }
    for (int a = left; a >= 0; --a) {
      cur[slot] = a;
      rec(slot + 1, left - a);
    }
  };
  rec(0, degree);
  return out;
}

double multinomial(const std::vector<int>& a) {
  int n = 0;
  double v = 1.0;
  for (int k : a) {
    for (int i = 1; i <= k; ++i) v *= static_cast<double>(n + i) / i;
    n += k;
  }
  return v;
}

struct LeastSquares {
  Eigen::VectorXd coef;
  Eigen::MatrixXd cov;
  double condition = 0.0;
};

LeastSquares fit(const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
                 const Eigen::MatrixXd& cov_y) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  LeastSquares out;
  out.condition = sv(0) / sv(sv.size() - 1);
  if (!(out.condition <= 1e6))
    throw Error(ErrorCode::IllConditioned,
                "fit condition number " + format_real(out.condition) + " exceeds 1e6");
  // Generalised least squares when the sample covariance is usable,
  // ordinary least squares otherwise.
  Eigen::LDLT<Eigen::MatrixXd> cy(cov_y);
  const double floor = 1e-12 * cov_y.diagonal().cwiseAbs().maxCoeff();
  if (cy.info() == Eigen::Success && cy.isPositive() && floor > 0.0 &&
      cy.vectorD().minCoeff() > floor) {
    const Eigen::MatrixXd wa = cy.solve(design);
    const Eigen::MatrixXd info = design.transpose() * wa;
    Eigen::LDLT<Eigen::MatrixXd> ci(info);
    if (ci.info() == Eigen::Success && ci.isPositive()) {
      out.cov = ci.solve(Eigen::MatrixXd::Identity(info.rows(), info.cols()));
      out.coef = out.cov * (wa.transpose() * y);
      return out;
    }
  }
  const Eigen::MatrixXd pinv =
      svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().transpose();
  out.coef = pinv * y;
  out.cov = pinv * cov_y * pinv.transpose();
  return out;
}

// Box of sum_i w_i K_i from additive coordinate supports.
BBox weighted_box(const std::vector<const ConvexBodyView*>& bodies, const std::vector<double>& w,
                  int n, double margin, double pad) {
  BBox b;
  b.lo = Vec::Zero(n);
  b.hi = Vec::Zero(n);
  for (std::size_t k = 0; k < bodies.size(); ++k) {
    if (w[k] == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      const Vec e = unit_vec(n, i);
      b.hi(i) += w[k] * bodies[k]->support(e);
      b.lo(i) -= w[k] * bodies[k]->support(-e);
    }
  }
  const Vec mid = 0.5 * (b.lo + b.hi);
  const Vec half = 0.5 * (b.hi - b.lo) * (1.0 + margin);
  b.lo = mid - half - Vec::Constant(n, pad);
  b.hi = mid + half + Vec::Constant(n, pad);
  return b;
}

}  // namespace

ConvexBodyView euclidean_ball_view(int n, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidParam, "ball radius must be positive");
  ConvexBodyView v;
  v.dim = n;
  v.key = "euclidean_ball:" + std::to_string(n) + ":" + format_real(radius);
  v.support = [radius](const Vec& u) { return radius * u.norm(); };
  v.support_point = [radius](const Vec& u) { return Vec(radius * u.normalized()); };
  v.contains = [radius](const Vec& x, double tol) { return x.norm() <= radius + tol; };
  v.distance = [radius](const Vec& x) { return std::max(0.0, x.norm() - radius); };
  v.ball = Ball{Vec::Zero(n), radius};
  return v;
}

BBox bbox_of(const ConvexBodyView& body, double margin) {
  return weighted_box({&body}, {1.0}, body.dim, margin, 0.0);
}

VolumeEstimate mc_volume(const std::function<bool(const Vec&)>& member, const BBox& box,
                         long long samples, std::uint64_t seed) {
  Group g{box, [&member](const Vec& x) { return member(x) ? 0 : 1; }, 1};
  const GroupedSample s = mc_grouped({g}, samples, seed);
  VolumeEstimate out;
  out.value = s.value[0];
  out.std_error = std::sqrt(std::max(0.0, s.covariance(0, 0)));
  out.samples = samples;
  out.hits = std::llround(s.value[0] / box.volume() * samples);
  out.seed = seed;
  if (out.hits == 0) throw Error(ErrorCode::EmptyEstimate, "no sample hit the body");
  return out;
}

MultiVolume mc_multi_volume(const std::function<int(const Vec&)>& classify, int levels,
                            const BBox& box, long long samples, std::uint64_t seed) {
  const GroupedSample s = mc_grouped({Group{box, classify, levels}}, samples, seed);
  MultiVolume out;
  out.value = s.value;
  out.covariance = s.covariance;
  out.samples = samples;
  return out;
}

// ---------------------------------------------------------------------------

std::vector<double> default_eps_grid(int n) {
  std::vector<double> g;
  for (int k = 1; k <= n + 2; ++k) g.push_back(0.1 * k);
  return g;
}

SteinerEstimate steiner_intrinsic(const ConvexBodyView& body, const std::vector<double>& eps_grid,
                                  long long samples, std::uint64_t seed,
                                  const SolverConfig& cfg) {
  const int n = body.dim;
  if (n > 4) throw Error(ErrorCode::Unsupported, "Steiner fitting is limited to n <= 4");
  std::vector<double> eps = eps_grid;
  std::sort(eps.begin(), eps.end());
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
  if (static_cast<int>(eps.size()) < n + 1)
    throw Error(ErrorCode::InvalidParam, "need at least n + 1 distinct eps nodes");
  for (double e : eps)
    if (!(e > 0.0 && e <= 1.0)) throw Error(ErrorCode::InvalidParam, "eps nodes must lie in (0, 1]");

  BBox box = bbox_of(body, 0.1);
  box.lo.array() -= eps.back();
  box.hi.array() += eps.back();
  const MultiVolume mv = mc_multi_volume(distance_classifier(body, eps, cfg),
                                         static_cast<int>(eps.size()), box, samples, seed);

  const int g = static_cast<int>(eps.size());
  Eigen::MatrixXd design(g, n + 1);
  Eigen::VectorXd y(g);
  for (int i = 0; i < g; ++i) {
    y(i) = mv.value[i];
    for (int k = 0; k <= n; ++k) design(i, k) = std::pow(eps[i], k);
  }
  const LeastSquares ls = fit(design, y, mv.covariance);

  SteinerEstimate out;
  out.dim = n;
  out.eps_grid = eps;
  out.volumes = mv.value;
  out.condition = ls.condition;
  out.samples = samples;
  out.seed = seed;
  out.intrinsic.assign(n + 1, 0.0);
  out.std_error.assign(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    // Coefficient of eps^k is kappa_k V_{n-k}.
    out.intrinsic[n - k] = ls.coef(k) / kappa(k);
    out.std_error[n - k] = std::sqrt(std::max(0.0, ls.cov(k, k))) / kappa(k);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<double> default_weight_grid() { return {0.25, 0.5, 0.75, 1.0}; }

std::size_t VolumePolynomial::index_of(const std::vector<int>& exponent) const {
  for (std::size_t k = 0; k < exponents.size(); ++k)
    if (exponents[k] == exponent) return k;
  throw Error(ErrorCode::InvalidParam, "exponent is not a monomial of the fit");
}

double VolumePolynomial::mixed(const std::vector<int>& exponent) const {
  return coefficient[index_of(exponent)] / multinomial(exponent);
}

VolumePolynomial fit_volume_polynomial(const std::vector<ConvexBodyView>& bodies,
                                       const std::vector<double>& weight_grid,
                                       long long samples, std::uint64_t seed,
                                       const SolverConfig& cfg) {
  if (bodies.empty()) throw Error(ErrorCode::InvalidParam, "no bodies");
  const int n = bodies.front().dim;
  if (n > 3) throw Error(ErrorCode::Unsupported, "mixed volumes are limited to n <= 3");
  std::vector<double> grid = weight_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.empty() || grid.front() <= 0.0)
    throw Error(ErrorCode::InvalidParam, "weight grid must be positive");

  // Canonical order by key; equal keys merge.
  std::map<std::string, const ConvexBodyView*> unique;
  for (const auto& b : bodies) {
    if (b.dim != n) throw Error(ErrorCode::InvalidParam, "mixed dimensions");
    unique.emplace(b.key, &b);
  }
  if (unique.size() > 3) throw Error(ErrorCode::Unsupported, "at most 3 distinct bodies");
  VolumePolynomial out;
  out.dim = n;
  std::vector<const ConvexBodyView*> canon;
  for (const auto& [key, ptr] : unique) {
    out.keys.push_back(key);
    canon.push_back(ptr);
  }
  for (const auto& b : bodies)
    out.input_index.push_back(static_cast<int>(
        std::find(out.keys.begin(), out.keys.end(), b.key) - out.keys.begin()));
  const int m = static_cast<int>(canon.size());

  // Balls (translated to the origin) fold into distance thresholds.
  std::vector<int> ball_slots, core_slots;
  for (int k = 0; k < m; ++k) (canon[k]->ball ? ball_slots : core_slots).push_back(k);

  auto tensor = [&](int dims) {
    std::vector<std::vector<int>> idx{{}};
    for (int d = 0; d < dims; ++d) {
      std::vector<std::vector<int>> next;
      for (const auto& v : idx)
        for (int g = 0; g < static_cast<int>(grid.size()); ++g) {
          auto w = v;
          w.push_back(g);
          next.push_back(w);
        }
      idx.swap(next);
    }
    return idx;
  };
  const auto ball_combos = tensor(static_cast<int>(ball_slots.size()));
  const auto core_combos = tensor(static_cast<int>(core_slots.size()));

  std::vector<double> radii;  // threshold per ball combo
  for (const auto& c : ball_combos) {
    double r = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) r += grid[c[j]] * canon[ball_slots[j]]->ball->radius;
    radii.push_back(ball_slots.empty() ? kInsideTol : r);
  }
  std::vector<int> order(radii.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return radii[a] < radii[b]; });
  std::vector<double> sorted_radii;
  for (int o : order) sorted_radii.push_back(radii[o]);
  const double pad = sorted_radii.back();

  std::vector<Group> groups;
  std::vector<std::vector<double>> group_weights;  // weight per canonical slot (core only)
  for (const auto& c : core_combos) {
    std::vector<double> w(m, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) w[core_slots[j]] = grid[c[j]];
    group_weights.push_back(w);
    Group g;
    g.levels = static_cast<int>(sorted_radii.size());
    g.box = weighted_box(canon, w, n, 0.1, pad);
    if (core_slots.empty()) {
      g.classify = distance_classifier(euclidean_ball_view(n, 1e-300), sorted_radii, cfg);
    } else if (core_slots.size() == 1) {
      const ConvexBodyView& body = *canon[core_slots[0]];
      const double t = w[core_slots[0]];
      ConvexBodyView scaled;
      scaled.dim = n;
      if (body.distance) {
        const auto dist = body.distance;
        scaled.distance = [dist, t](const Vec& x) { return t * dist(x / t); };
      } else {
        const auto sp = body.support_point;
        scaled.support_point = [sp, t](const Vec& u) { return Vec(t * sp(u)); };
      }
      g.classify = distance_classifier(scaled, sorted_radii, cfg);
    } else {
      ConvexBodyView sum;
      sum.dim = n;
      std::vector<std::pair<SupportPointFn, double>> parts;
      for (int k : core_slots) parts.emplace_back(canon[k]->support_point, w[k]);
      sum.support_point = [parts](const Vec& u) {
        Vec p = Vec::Zero(u.size());
        for (const auto& [sp, t] : parts) p += t * sp(u);
        return p;
      };
      g.classify = distance_classifier(sum, sorted_radii, cfg);
    }
    groups.push_back(std::move(g));
  }
  const GroupedSample s = mc_grouped(groups, samples, seed);

  out.exponents = monomials(n, m);
  const int cols = static_cast<int>(out.exponents.size());
  const int rows = static_cast<int>(s.value.size());
  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd y(rows);
  int row = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int level = 0; level < groups[g].levels; ++level, ++row) {
      std::vector<double> w = group_weights[g];
      const auto& bc = ball_combos[order[level]];
      for (std::size_t j = 0; j < bc.size(); ++j) w[ball_slots[j]] = grid[bc[j]];
      y(row) = s.value[row];
      for (int c = 0; c < cols; ++c) {
        double mono = 1.0;
        for (int k = 0; k < m; ++k) mono *= std::pow(w[k], out.exponents[c][k]);
        design(row, c) = mono;
      }
    }
  }
  const LeastSquares ls = fit(design, y, s.covariance);
  out.coefficient.assign(ls.coef.data(), ls.coef.data() + cols);
  out.covariance = ls.cov;
  out.condition = ls.condition;
  out.samples = samples;
  out.seed = seed;
  out.weight_grid = grid;
  return out;
}

namespace {

std::vector<int> canonical_exponent(const VolumePolynomial& fit, const std::vector<int>& per_input) {
  std::vector<int> e(fit.keys.size(), 0);
  for (std::size_t i = 0; i < per_input.size(); ++i) e[fit.input_index[i]] += per_input[i];
  return e;
}

// Mixed volumes for the given exponents with their covariance.
void mixed_with_cov(const VolumePolynomial& fit, const std::vector<std::vector<int>>& exps,
                    Eigen::VectorXd& value, Eigen::MatrixXd& cov) {
  const int k = static_cast<int>(exps.size());
  value.resize(k);
  cov.resize(k, k);
  std::vector<std::size_t> idx(k);
  std::vector<double> scale(k);
  for (int a = 0; a < k; ++a) {
    idx[a] = fit.index_of(exps[a]);
    scale[a] = 1.0 / multinomial(exps[a]);
    value(a) = fit.coefficient[idx[a]] * scale[a];
  }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) cov(a, b) = fit.covariance(idx[a], idx[b]) * scale[a] * scale[b];
}

}  // namespace

MixedVolumeEstimate mixed_volume(const std::vector<MixedTerm>& terms,
                                 const std::vector<double>& weight_grid, long long samples,
                                 std::uint64_t seed, const SolverConfig& cfg) {
  if (terms.empty()) throw Error(ErrorCode::InvalidParam, "empty tuple");
  std::vector<ConvexBodyView> bodies;
  std::vector<int> mult;
  int total = 0;
  for (const auto& t : terms) {
    if (t.multiplicity < 0) throw Error(ErrorCode::InvalidParam, "negative multiplicity");
    bodies.push_back(t.body);
    mult.push_back(t.multiplicity);
    total += t.multiplicity;
  }
  const int n = bodies.front().dim;
  if (n > 3) throw Error(ErrorCode::Unsupported, "mixed volumes are limited to n <= 3");
  if (total != n) throw Error(ErrorCode::InvalidParam, "multiplicities must sum to n");
  const VolumePolynomial poly = fit_volume_polynomial(bodies, weight_grid, samples, seed, cfg);
  const std::vector<int> e = canonical_exponent(poly, mult);
  Eigen::VectorXd v;
  Eigen::MatrixXd c;
  mixed_with_cov(poly, {e}, v, c);
  MixedVolumeEstimate out;
  for (std::size_t k = 0; k < poly.keys.size(); ++k) out.tuple.emplace_back(poly.keys[k], e[k]);
  out.value = v(0);
  out.std_error = std::sqrt(std::max(0.0, c(0, 0)));
  out.condition = poly.condition;
  out.samples = samples;
  out.seed = seed;
  out.weight_grid = poly.weight_grid;
  return out;
}

AfResult af_residual(const ConvexBodyView& k1, const ConvexBodyView& k2,
                     const std::vector<ConvexBodyView>& rest, long long samples,
                     std::uint64_t seed, const SolverConfig& cfg) {
  const int n = k1.dim;
  if (static_cast<int>(rest.size()) != n - 2)
    throw Error(ErrorCode::InvalidParam, "rest must hold n - 2 bodies");
  std::vector<ConvexBodyView> bodies{k1, k2};
  bodies.insert(bodies.end(), rest.begin(), rest.end());
  const VolumePolynomial poly = fit_volume_polynomial(bodies, default_weight_grid(), samples,
                                                      seed, cfg);
  std::vector<int> tail(rest.size(), 1);
  auto with = [&](int a, int b) {
    std::vector<int> e{a, b};
    e.insert(e.end(), tail.begin(), tail.end());
    return canonical_exponent(poly, e);
  };
  Eigen::VectorXd v;
  Eigen::MatrixXd c;
  mixed_with_cov(poly, {with(1, 1), with(2, 0), with(0, 2)}, v, c);
  AfResult out;
  out.v12 = v(0);
  out.v11 = v(1);
  out.v22 = v(2);
  out.residual = v(0) * v(0) - v(1) * v(2);
  const Eigen::Vector3d grad(2.0 * v(0), -v(2), -v(1));
  out.sigma = std::sqrt(std::max(0.0, double(grad.transpose() * c * grad)));
  return out;
}

VolumePolynomial lemma1_fit(const ConvexBodyView& k, const ConvexBodyView& lens,
                            long long samples, std::uint64_t seed, const SolverConfig& cfg) {
  return fit_volume_polynomial({k, lens, euclidean_ball_view(k.dim)}, default_weight_grid(),
                               samples, seed, cfg);
}

RatioResult lemma1_ratio(const VolumePolynomial& fit, int s, int t) {
  const int n = fit.dim;
  if (s < 1 || s > n || t < 0 || t > s - 1)
    throw Error(ErrorCode::InvalidParam, "need 1 <= s <= n and 0 <= t <= s - 1");
  if (fit.input_index.size() != 3) throw Error(ErrorCode::InvalidParam, "not a (K, L, B) fit");
  Eigen::VectorXd v;
  Eigen::MatrixXd c;
  mixed_with_cov(fit,
                 {canonical_exponent(fit, {s - t, t, n - s}),
                  canonical_exponent(fit, {s - t - 1, t + 1, n - s})},
                 v, c);
  RatioResult out;
  out.s = s;
  out.t = t;
  out.ratio = v(0) / v(1);
  const double var = c(0, 0) / (v(1) * v(1)) + v(0) * v(0) * c(1, 1) / std::pow(v(1), 4) -
                     2.0 * v(0) * c(0, 1) / std::pow(v(1), 3);
  out.sigma = std::sqrt(std::max(0.0, var));
  return out;
}

RatioResult lemma1_ratio(const ConvexBodyView& k, const ConvexBodyView& lens, int s, int t,
                         long long samples, std::uint64_t seed, const SolverConfig& cfg) {
  return lemma1_ratio(lemma1_fit(k, lens, samples, seed, cfg), s, t);
}

}  // namespace lambdahull
