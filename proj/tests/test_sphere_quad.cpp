#include <doctest.h>

#include "lambdahull/harness.hpp"
#include "lambdahull/radii.hpp"
#include "lambdahull/sphere_quad.hpp"
#include "lambdahull/steiner_mixed.hpp"

#include <cmath>

using namespace lambdahull;

namespace {

constexpr double kPi = std::numbers::pi;

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

// Midpoint sums of the lens profile in n = 3, written out independently of
// the library profile.
double lens_h(double rho, double r, double t) {
  const double a = rho - r;
  const double ts = std::acos(a / rho);
  return t <= ts ? rho - a * std::cos(t) : std::sqrt(rho * rho - a * a) * std::sin(t);
}

}  // namespace

TEST_CASE("direction rules") {
  const DirectionRule g4 = sample_directions(2, DirScheme::ProductGrid, 4, 0);
  REQUIRE(g4.nodes.size() == 4);
  for (int k = 0; k < 4; ++k) {
    const double t = 0.5 * kPi * k;
    CHECK((g4.nodes[k] - v2(std::cos(t), std::sin(t))).norm() < 1e-15);
    CHECK(g4.weights[k] == doctest::Approx(0.5 * kPi));
  }
  for (auto scheme : {DirScheme::UniformMC, DirScheme::SymmetrizedMC, DirScheme::ProductGrid}) {
    const DirectionRule r = sample_directions(3, scheme, 5000, 4);
    double sum = 0.0;
    for (double w : r.weights) sum += w;
    CHECK(std::abs(sum - 4.0 * kPi) <= 1e-12 * 4.0 * kPi);
    for (const Vec& u : r.nodes) CHECK(std::abs(u.norm() - 1.0) < 1e-12);
  }
  const DirectionRule s = sample_directions(3, DirScheme::SymmetrizedMC, 1000, 9);
  for (std::size_t i = 0; i + 1 < s.nodes.size(); i += 2)
    CHECK((s.nodes[i] + s.nodes[i + 1]).norm() == 0.0);
  CHECK_THROWS_AS(sample_directions(4, DirScheme::ProductGrid, 100, 0), Error);
  CHECK(dir_scheme_from_string("symmetrized") == DirScheme::SymmetrizedMC);
  CHECK_THROWS_AS(dir_scheme_from_string("sobol"), Error);
}

TEST_CASE("direction rules are reproducible and serialisable") {
  const DirectionRule a = sample_directions(3, DirScheme::UniformMC, 64, 11);
  const DirectionRule b = sample_directions(3, DirScheme::UniformMC, 64, 11);
  const DirectionRule c = sample_directions(3, DirScheme::UniformMC, 64, 12);
  CHECK(rule_to_json(a) == rule_to_json(b));
  CHECK(rule_to_json(a) != rule_to_json(c));
  const DirectionRule back = rule_from_json(rule_to_json(a));
  REQUIRE(back.nodes.size() == a.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) CHECK(back.nodes[i] == a.nodes[i]);
  CHECK_THROWS_AS(rule_from_json("[1,2]"), Error);
}

TEST_CASE("V1 of balls, lenses and spindles") {
  for (int n : {2, 3}) {
    const ConvexBodyView ball = euclidean_ball_view(n);
    for (auto scheme : {DirScheme::UniformMC, DirScheme::SymmetrizedMC, DirScheme::ProductGrid}) {
      const V1Estimate v = intrinsic_v1(ball, sample_directions(n, scheme, 2000, 1));
      CHECK(v.value == doctest::Approx(unit_ball_v1(n)).epsilon(1e-12));
    }
  }
  CHECK(unit_ball_v1(2) == doctest::Approx(kPi));
  CHECK(unit_ball_v1(3) == doctest::Approx(4.0));

  const DirectionRule grid = sample_directions(2, DirScheme::ProductGrid, 200000, 0);
  const V1Estimate lens = intrinsic_v1(view_of(make_lens(1.0, v2(1, 0), v2(0, 0), 0.5)), grid);
  CHECK(std::abs(lens.value - 2.0 * kPi / 3.0) < 1e-4);
  CHECK(lens.sigma() < 1e-6);
  const V1Estimate sp = intrinsic_v1(view_of(make_spindle(1.0, v2(1, 0), v2(0, 0), 0.5)), grid);
  CHECK(std::abs(sp.value - kPi / 3.0) < 1e-4);

  // Arc-length oracle at another radius: perimeter / 2 = 2 arccos(1 - r).
  CHECK(lens_v1(2, 1.0, 0.3) == doctest::Approx(2.0 * std::acos(0.7)).epsilon(1e-12));
  CHECK(lens_v1(2, 2.0, 0.15) == doctest::Approx(std::acos(0.7)).epsilon(1e-12));
  CHECK(spindle_v1(2, 1.0, 0.5) == doctest::Approx(kPi / 3.0).epsilon(1e-12));
}

TEST_CASE("closed-form 3-d lens V1 against a one-dimensional oracle") {
  for (double r : {0.2, 0.5, 0.9}) {
    // V1 = (1 / kappa_2) * 2 * 2 pi * int_0^{pi/2} h(t) sin t dt.
    const int panels = 200000;
    double s = 0.0;
    for (int k = 0; k < panels; ++k) {
      const double t = 0.5 * kPi * (k + 0.5) / panels;
      s += lens_h(1.0, r, t) * std::sin(t);
    }
    s *= 0.5 * kPi / panels;
    const double oracle = 4.0 * s;
    CHECK(lens_v1(3, 1.0, r) == doctest::Approx(oracle).epsilon(1e-8));
    const V1Estimate g = intrinsic_v1(view_of(make_lens(1.0, unit_vec(3, 2), zero_vec(3), r)),
                                      sample_directions(3, DirScheme::ProductGrid, 200000, 0));
    CHECK(g.value == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("symmetrized Monte Carlo V1 is consistent") {
  const ConvexBodyView lens = view_of(make_lens(1.0, unit_vec(3, 0), zero_vec(3), 0.4));
  const V1Estimate v = intrinsic_v1(lens, sample_directions(3, DirScheme::SymmetrizedMC, 100000, 3));
  CHECK(v.std_error > 0.0);
  CHECK(std::abs(v.value - lens_v1(3, 1.0, 0.4)) <= 4.0 * v.std_error);
}

TEST_CASE("V1 is additive, monotone and motion invariant") {
  const DirectionRule grid = sample_directions(3, DirScheme::ProductGrid, 100000, 0);
  const GeneratedBody g = gen_random_polytope(3, 1.0, 0.35, 5, 31);
  const ConvexBodyView k = view_of(g.body);
  const V1Estimate vk = intrinsic_v1(k, grid);
  const double eps = 0.25;
  const V1Estimate sum =
      intrinsic_v1(minkowski_view({{k, 1.0}, {euclidean_ball_view(3), eps}}), grid);
  CHECK(std::abs(sum.value - vk.value - eps * unit_ball_v1(3)) < 1e-9);

  const V1Estimate bigger = intrinsic_v1(view_of(g.body.without(1)), grid);
  CHECK(vk.value <= bigger.value + 2.0 * std::max(vk.sigma(), bigger.sigma()));

  Vec shift(3);
  shift << 0.4, -0.2, 0.7;
  const V1Estimate moved =
      intrinsic_v1(view_of(g.body.transformed(random_rotation(3, 5), shift)), grid);
  CHECK(std::abs(moved.value - vk.value) <= 2.0 * (moved.sigma() + vk.sigma()) + 1e-9);
}

TEST_CASE("lens profile") {
  for (int n : {2, 3})
    for (double r : {0.1, 0.5, 0.95}) {
      const RotProfile p = lens_profile(n, 1.0, r);
      double prev_h = -1.0, prev_q = -1.0;
      for (int k = 0; k <= 200; ++k) {
        const double t = 0.5 * kPi * k / 200;
        CHECK(p.h(t) > prev_h);
        if (n > 2 && k > 0) CHECK(p.q(t) > prev_q);
        prev_h = p.h(t);
        prev_q = p.q(t);
      }
      CHECK(std::abs(eval_R(p, 0.5 * kPi)) <= 1e-9);
    }
  CHECK_THROWS_AS(eval_R(lens_profile(2, 1.0, 0.5), 2.0), Error);
}

TEST_CASE("profile matches the closed-form support") {
  const Vec axis = unit_vec(3, 0);
  const RotSymBody lens = make_lens(1.0, axis, zero_vec(3), 0.45);
  const RotProfile p = lens_profile(3, 1.0, 0.45);
  // The touching point lies at -r * axis under the ball centred at +a * axis;
  // by symmetry the angle may be measured from either pole.
  for (int k = 0; k <= 100; ++k) {
    const double t = 0.5 * kPi * k / 100;
    Vec u(3);
    u << -std::cos(t), std::sin(t), 0.0;
    CHECK(std::abs(support_rotsym(lens, u) - p.h(t)) < 1e-12);
  }
}

TEST_CASE("eval_R against a Riemann sum") {
  const double rho = 1.0, r = 0.5;
  const int panels = 1000000;
  // F = int h q / int q over [0, pi/2], q = sin t.
  double num = 0.0, den = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double t = 0.5 * kPi * (k + 0.5) / panels;
    num += lens_h(rho, r, t) * std::sin(t);
    den += std::sin(t);
  }
  const double F = num / den;
  const RotProfile p = lens_profile(3, 1.0, r);
  CHECK(p.F == doctest::Approx(F).epsilon(1e-9));
  const double phi0 = 0.25 * kPi;
  double R = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double t = phi0 * (k + 0.5) / panels;
    R += (lens_h(rho, r, t) - F) * std::sin(t);
  }
  R *= phi0 / panels;
  CHECK(eval_R(p, phi0) < 0.0);
  CHECK(eval_R(p, phi0) == doctest::Approx(R).epsilon(1e-7));
}

TEST_CASE("eval_R is nonpositive with equality only at the right end") {
  const std::vector<TrialRecord> recs = profile_records(1.0);
  CHECK(recs.size() == 20);
  for (const auto& rec : recs) CHECK(rec.status == Status::Pass);
}

TEST_CASE("radial cells") {
  const Vec z = zero_vec(2);
  const std::vector<Vec> pair{v2(0.3, 0), v2(-0.3, 0)};
  CHECK(radial_cell_contains(v2(1, 0), pair, z, 0));
  CHECK_FALSE(radial_cell_contains(v2(1, 0), pair, z, 1));

  std::vector<Vec> tri;
  for (int k = 0; k < 3; ++k) {
    const double t = 2.0 * kPi * k / 3 + 0.2;
    tri.push_back(0.4 * v2(std::cos(t), std::sin(t)));
  }
  CounterRng rng(4, 4);
  const int N = 100000;
  int hits = 0;
  for (int i = 0; i < N; ++i) hits += radial_cell_contains(rng.on_sphere(2), tri, z, 1);
  const double f = double(hits) / N;
  CHECK(std::abs(f - 1.0 / 3.0) <= 3.0 * std::sqrt(f * (1 - f) / N));
}

TEST_CASE("facet averages") {
  const BallPolytope lens = to_ballpoly(make_lens(1.0, unit_vec(3, 1), zero_vec(3), 0.5));
  const DirectionRule rule = sample_directions(3, DirScheme::UniformMC, 100000, 5);
  for (std::size_t i : {0u, 1u}) {
    const LemmaMResult res = lemma_m_check(lens, i, rule);
    CHECK(std::abs(res.margin) <= 2.0 * res.std_error);
    CHECK(res.rhs == doctest::Approx(lens_profile(3, 1.0, 0.5).F));
  }

  // Four symmetric contacts in the plane.
  std::vector<Vec> sq;
  for (int k = 0; k < 4; ++k) sq.push_back(0.3 * v2(std::cos(0.5 * kPi * k), std::sin(0.5 * kPi * k)));
  const BallPolytope four = tangent_polytope(sq, zero_vec(2), 0.3, 1.0);
  const DirectionRule r2 = sample_directions(2, DirScheme::UniformMC, 100000, 6);
  for (std::size_t i = 0; i < 4; ++i) {
    const LemmaMResult res = lemma_m_check(four, i, r2);
    CHECK(res.margin > 3.0 * res.std_error);
  }
  CHECK_THROWS_AS(lemma_m_check(four, 9, r2), Error);
  const DirectionRule tiny = sample_directions(2, DirScheme::UniformMC, 40, 6);
  CHECK_THROWS_AS(lemma_m_check(four, 0, tiny), Error);
}
