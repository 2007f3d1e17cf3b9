#include "lambdahull/sphere_quad.hpp"

#include "lambdahull/radii.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace lambdahull {
namespace {

constexpr std::size_t kChunk = 1024;

// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
void gauss_legendre(int k, std::vector<double>& x, std::vector<double>& w) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(k, k);
  for (int i = 1; i < k; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  x.resize(k);
  w.resize(k);
  for (int i = 0; i < k; ++i) {
    x[i] = eig.eigenvalues()(i);
    const double v = eig.eigenvectors()(0, i);
    w[i] = 2.0 * v * v;
  }
  // Exact antisymmetry keeps the grid closed under u -> -u.
  for (int i = 0; i < k / 2; ++i) {
    const double xs = 0.5 * (x[k - 1 - i] - x[i]);
    const double ws = 0.5 * (w[i] + w[k - 1 - i]);
    x[i] = -xs;
    x[k - 1 - i] = xs;
    w[i] = w[k - 1 - i] = ws;
  }
  if (k % 2 == 1) x[k / 2] = 0.0;
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-14);
}

}  // namespace

const char* to_string(DirScheme scheme) {
  switch (scheme) {
    case DirScheme::UniformMC: return "uniform";
    case DirScheme::SymmetrizedMC: return "symmetrized";
    case DirScheme::ProductGrid: return "grid";
  }
  return "?";
}

DirScheme dir_scheme_from_string(const std::string& name) {
  if (name == "uniform") return DirScheme::UniformMC;
  if (name == "symmetrized") return DirScheme::SymmetrizedMC;
  if (name == "grid") return DirScheme::ProductGrid;
  throw Error(ErrorCode::InvalidParam, "unknown direction scheme '" + name + "'");
}

DirectionRule sample_directions(int n, DirScheme scheme, int count, std::uint64_t seed) {
  if (n < 2 || n > kMaxDim) throw Error(ErrorCode::InvalidParam, "dimension out of range");
  if (count < 2) throw Error(ErrorCode::InvalidParam, "need at least two directions");
  DirectionRule rule;
  rule.dim = n;
  rule.scheme = scheme;
  rule.count = count;
  rule.seed = seed;
  const double measure = sphere_measure(n);
  switch (scheme) {
    case DirScheme::UniformMC: {
      CounterRng rng(seed, 0);
      for (int i = 0; i < count; ++i) rule.nodes.push_back(rng.on_sphere(n));
      break;
    }
    case DirScheme::SymmetrizedMC: {
      CounterRng rng(seed, 0);
      for (int i = 0; i < count / 2; ++i) {
        const Vec u = rng.on_sphere(n);
        rule.nodes.push_back(u);
        rule.nodes.push_back(-u);
      }
      break;
    }
    case DirScheme::ProductGrid: {
      if (n == 2) {
        for (int i = 0; i < count; ++i) {
          const double t = 2.0 * std::numbers::pi * i / count;
          Vec u(2);
          u << std::cos(t), std::sin(t);
          rule.nodes.push_back(u);
        }
      } else if (n == 3) {
        const int nt = std::max(1, static_cast<int>(std::lround(std::sqrt(count / 2.0))));
        const int np = 2 * nt;
        std::vector<double> x, w;
        gauss_legendre(nt, x, w);
        for (int j = 0; j < nt; ++j) {
          const double s = std::sqrt(std::max(0.0, 1.0 - x[j] * x[j]));
          for (int k = 0; k < np; ++k) {
            const double p = 2.0 * std::numbers::pi * k / np;
            Vec u(3);
            u << s * std::cos(p), s * std::sin(p), x[j];
            rule.nodes.push_back(u);
            rule.weights.push_back(w[j] * 2.0 * std::numbers::pi / np);
          }
        }
      } else {
        throw Error(ErrorCode::Unsupported, "product grid is only available for n <= 3");
      }
      break;
    }
  }
  if (rule.weights.empty())
    rule.weights.assign(rule.nodes.size(), measure / static_cast<double>(rule.nodes.size()));
  return rule;
}

std::string rule_to_json(const DirectionRule& rule) {
  nlohmann::ordered_json j;
  j["dim"] = rule.dim;
  j["scheme"] = to_string(rule.scheme);
  j["N"] = rule.count;
  j["seed"] = rule.seed;
  return j.dump();
}

DirectionRule rule_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    return sample_directions(j.at("dim").get<int>(),
                             dir_scheme_from_string(j.at("scheme").get<std::string>()),
                             j.at("N").get<int>(), j.at("seed").get<std::uint64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidParam, std::string("direction rule JSON: ") + e.what());
  }
}

std::vector<double> support_values(const ConvexBodyView& body, const DirectionRule& rule) {
  if (body.dim != rule.dim) throw Error(ErrorCode::InvalidParam, "rule dimension mismatch");
  std::vector<double> h(rule.nodes.size());
  const std::size_t chunks = (h.size() + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(h.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) h[i] = body.support(rule.nodes[i]);
  });
  return h;
}

V1Estimate intrinsic_v1(const ConvexBodyView& body, const DirectionRule& rule) {
  const int n = rule.dim;
  const double norm = 1.0 / kappa(n - 1);
  const std::vector<double> h = support_values(body, rule);
  V1Estimate est;
  double sum = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) sum += rule.weights[i] * h[i];
  est.value = norm * sum;
  const double scale = norm * sphere_measure(n);
  auto mean_sd = [](const std::vector<double>& v) {
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / (v.size() - 1.0));
  };
  switch (rule.scheme) {
    case DirScheme::UniformMC:
      est.std_error = scale * mean_sd(h) / std::sqrt(double(h.size()));
      break;
    case DirScheme::SymmetrizedMC: {
      std::vector<double> pairs(h.size() / 2);
      for (std::size_t k = 0; k < pairs.size(); ++k) pairs[k] = 0.5 * (h[2 * k] + h[2 * k + 1]);
      est.std_error = scale * mean_sd(pairs) / std::sqrt(double(pairs.size()));
      break;
    }
    case DirScheme::ProductGrid: {
      const int coarse_count = std::max(2, rule.count / 4);
      const DirectionRule coarse = sample_directions(n, rule.scheme, coarse_count, rule.seed);
      const std::vector<double> hc = support_values(body, coarse);
      double sc = 0.0;
      for (std::size_t i = 0; i < hc.size(); ++i) sc += coarse.weights[i] * hc[i];
      // Floor at rounding level so exact-equality cases keep a usable sigma.
      est.grid_error = std::max(std::abs(est.value - norm * sc), 1e-12 * std::abs(est.value));
      break;
    }
  }
  return est;
}

// ---------------------------------------------------------------------------

double RotProfile::h(double t) const {
  const double rho = 1.0 / lambda;
  if (t <= t_star) return rho - a * std::cos(t);
  return std::sqrt(std::max(0.0, rho * rho - a * a)) * std::sin(t);
}

double RotProfile::q(double t) const {
  return dim == 2 ? 1.0 : std::pow(std::sin(t), dim - 2);
}

RotProfile lens_profile(int n, double lambda, double r) {
  if (n < 2 || n > kMaxDim) throw Error(ErrorCode::InvalidParam, "dimension out of range");
  const double rho = 1.0 / lambda;
  if (!(lambda > 0.0) || !(r > 0.0) || r > rho * (1.0 + 1e-12))
    throw Error(ErrorCode::InvalidParam, "inradius must lie in (0, 1/lambda]");
  RotProfile p;
  p.dim = n;
  p.lambda = lambda;
  p.r = std::min(r, rho);
  p.a = rho - p.r;
  p.t_star = std::acos(std::clamp(p.a / rho, 0.0, 1.0));
  auto hq = [&p](double t) { return p.h(t) * p.q(t); };
  auto q = [&p](double t) { return p.q(t); };
  const double half = std::numbers::pi / 2;
  const double num = integrate(hq, 0.0, p.t_star) + integrate(hq, p.t_star, half);
  p.F = num / integrate(q, 0.0, half);
  return p;
}

double eval_R(const RotProfile& profile, double phi0) {
  const double half = std::numbers::pi / 2;
  if (!(phi0 >= 0.0) || phi0 > half * (1.0 + 1e-15))
    throw Error(ErrorCode::InvalidParam, "phi0 must lie in [0, pi/2]");
  phi0 = std::min(phi0, half);
  auto f = [&profile](double t) { return (profile.h(t) - profile.F) * profile.q(t); };
  const double split = std::min(phi0, profile.t_star);
  return integrate(f, 0.0, split) + integrate(f, split, phi0);
}

double lens_v1(int n, double lambda, double r) {
  return unit_ball_v1(n) * lens_profile(n, lambda, r).F;
}

double spindle_v1(int n, double lambda, double R) {
  const double rho = 1.0 / lambda;
  if (!(R > 0.0) || R > rho * (1.0 + 1e-12))
    throw Error(ErrorCode::InvalidParam, "circumradius must lie in (0, 1/lambda]");
  if (R >= rho) return rho * unit_ball_v1(n);
  return rho * unit_ball_v1(n) - lens_v1(n, lambda, rho - R);
}

// ---------------------------------------------------------------------------

bool radial_cell_contains(const Vec& u, std::span<const Vec> touching, const Vec& z,
                          std::size_t i) {
  if (i >= touching.size()) throw Error(ErrorCode::InvalidParam, "cell index out of range");
  const double own = u.dot(touching[i] - z);
  for (const Vec& p : touching)
    if (own < u.dot(p - z) - 1e-12) return false;
  return true;
}

LemmaMResult lemma_m_check(const BallPolytope& body, std::size_t i, const DirectionRule& rule,
                           const SolverConfig& cfg) {
  const InballResult ib = inradius(body);
  if (ib.degenerate) throw Error(ErrorCode::InvalidParam, "single-ball polytope has no facets");
  if (i >= ib.touching.size()) throw Error(ErrorCode::InvalidParam, "facet index out of range");
  std::vector<std::size_t> cell;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k)
    if (radial_cell_contains(rule.nodes[k], ib.touching, ib.center, i)) cell.push_back(k);
  if (cell.size() < 50)
    throw Error(ErrorCode::DegenerateCell,
                "cell holds " + std::to_string(cell.size()) + " nodes; increase N");

  std::vector<double> h(cell.size());
  const std::size_t chunks = (cell.size() + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(cell.size(), (c + 1) * kChunk);
    for (std::size_t k = c * kChunk; k < end; ++k) {
      const Vec& u = rule.nodes[cell[k]];
      h[k] = support_ballpoly(body, u, cfg).value - ib.center.dot(u);
    }
  });
  double sw = 0.0, swh = 0.0;
  for (std::size_t k = 0; k < cell.size(); ++k) {
    sw += rule.weights[cell[k]];
    swh += rule.weights[cell[k]] * h[k];
  }
  LemmaMResult out;
  out.cell_nodes = static_cast<int>(cell.size());
  out.lhs = swh / sw;
  out.rhs = lens_profile(body.dim(), body.lambda(), ib.radius).F;
  out.margin = out.rhs - out.lhs;
  if (rule.scheme != DirScheme::ProductGrid) {
    double ss = 0.0;
    for (double v : h) ss += (v - out.lhs) * (v - out.lhs);
    out.std_error = std::sqrt(ss / (h.size() - 1.0) / h.size());
  }
  return out;
}

}  // namespace lambdahull
