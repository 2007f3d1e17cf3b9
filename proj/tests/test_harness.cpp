#include <doctest.h>

#include "lambdahull/harness.hpp"
#include "lambdahull/radii.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

using namespace lambdahull;

namespace {

VerifyConfig small_config(int trials) {
  VerifyConfig cfg;
  cfg.trials = trials;
  cfg.seed = 5;
  cfg.v1_samples = 20000;
  cfg.volume_samples = 200000;
  cfg.mixed_samples = 20000;
  cfg.lemma_m_samples = 20000;
  return cfg;
}

}  // namespace

TEST_CASE("two contacts give the lens") {
  const GeneratedBody g = gen_random_polytope(3, 1.0, 0.4, 2, 17);
  REQUIRE(g.touching.size() == 2);
  CHECK((g.touching[0] + g.touching[1]).norm() < 1e-12);
  const RotSymBody lens = make_lens(1.0, g.touching[0], g.center, 0.4);
  CounterRng rng(1, 1);
  for (int i = 0; i < 500; ++i) {
    const Vec u = rng.on_sphere(3);
    CHECK(support_ballpoly(g.body, u).value == doctest::Approx(support_rotsym(lens, u)).epsilon(1e-9));
  }
}

TEST_CASE("random generator round trip") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const GeneratedBody g = gen_random_polytope(3, 1.0, 0.3, 4, s);
    CHECK(std::abs(inradius(g.body).radius - 0.3) <= 1e-9);
    CHECK_FALSE(open_hemisphere_check(g.touching, g.center));
  }
  for (int n : {2, 4}) {
    const GeneratedBody g = gen_random_polytope(n, 2.0, 0.25, n + 1, 3);
    CHECK(std::abs(g.inradius - 0.25) <= 1e-9);
  }
  CHECK_THROWS_AS(gen_random_polytope(5, 1.0, 0.3, 4, 0), Error);
  CHECK_THROWS_AS(gen_random_polytope(2, 1.0, 1.3, 4, 0), Error);
  CHECK_THROWS_AS(gen_random_polytope(2, 1.0, 0.3, 1, 0), Error);
}

TEST_CASE("facets lie in their tangent lenses") {
  const GeneratedBody g = gen_random_polytope(3, 1.0, 0.35, 5, 44);
  const InballResult ib = inradius(g.body);
  CounterRng rng(44, 0);
  int on_facets = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec u = rng.on_sphere(3);
    const SupportResult s = support_ballpoly(g.body, u);
    for (std::size_t k = 0; k < ib.touching.size(); ++k) {
      const Vec& c = g.body.centers()[ib.contact_centers[k]];
      if (std::abs((s.point - c).norm() - 1.0) > 1e-9) continue;
      ++on_facets;
      const RotSymBody lens = make_lens(1.0, ib.touching[k] - ib.center, ib.center, ib.radius);
      CHECK(contains_rotsym(lens, s.point, 1e-9));
      CHECK(s.value <= support_rotsym(lens, u) + 1e-9);
    }
  }
  CHECK(on_facets > 100);
}

TEST_CASE("symmetric generator") {
  SymmetryGroupSpec anti;
  anti.kind = SymmetryGroupSpec::Kind::Antipodal;
  const GeneratedBody lens = gen_symmetric_polytope(3, 1.0, 0.4, anti, 2, 3);
  CHECK(lens.touching.size() == 2);
  CHECK(symmetry_residual(lens.body, lens.generator, 1000, 1) <= 1e-9);

  SymmetryGroupSpec c3;
  c3.order = 3;
  const GeneratedBody g = gen_symmetric_polytope(3, 1.0, 0.4, c3, 3, 4);
  CHECK(g.touching.size() == 3);
  CHECK(std::abs(g.inradius - 0.4) <= 1e-9);
  CHECK(symmetry_residual(g.body, g.generator, 1000, 2) <= 1e-9);
  // The generator has order 3 and permutes the contacts.
  const Mat g3 = g.generator * g.generator * g.generator;
  CHECK((g3 - Mat::Identity(3, 3)).norm() < 1e-12);
  for (const Vec& p : g.touching) {
    double best = 1e9;
    for (const Vec& q : g.touching) best = std::min(best, (g.generator * p - q).norm());
    CHECK(best < 1e-12);
  }

  SymmetryGroupSpec c4;
  c4.order = 4;
  const GeneratedBody sq = gen_symmetric_polytope(2, 1.0, 0.5, c4, 4, 5);
  const V1Estimate v = intrinsic_v1(view_of(sq.body), sample_directions(2, DirScheme::ProductGrid, 100000, 0));
  CHECK(lens_v1(2, 1.0, 0.5) - v.value > 3.0 * v.sigma());

  CHECK_THROWS_AS(gen_symmetric_polytope(3, 1.0, 0.4, c3, 4, 1), Error);
  SymmetryGroupSpec c1;
  c1.order = 1;
  CHECK_THROWS_AS(gen_symmetric_polytope(3, 1.0, 0.4, c1, 1, 1), Error);
}

TEST_CASE("theorem A campaign") {
  const VerificationReport rep = verify_thm_a(2, 1.0, 0.3, small_config(12));
  CHECK(rep.records.size() == 12);
  CHECK(rep.exit_code() == 0);
  CHECK(rep.count(Status::Fail) == 0);
  for (const auto& r : rep.records) {
    CHECK(r.extremal_value == doctest::Approx(2.0 * std::acos(0.7)).epsilon(1e-12));
    if (r.note == "lens") CHECK(std::abs(r.margin) <= 2.0 * r.std_error + 1e-12);
    if (r.contacts > 2) CHECK(r.margin > 3.0 * r.std_error);
  }
}

TEST_CASE("theorem A verdicts are scale covariant") {
  const VerificationReport a = verify_thm_a(3, 1.0, 0.5, small_config(6));
  const VerificationReport b = verify_thm_a(3, 2.0, 0.25, small_config(6));
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].status == b.records[i].status);
    const double sigma = a.records[i].std_error + 2.0 * b.records[i].std_error;
    CHECK(std::abs(a.records[i].margin - 2.0 * b.records[i].margin) <= 3.0 * sigma + 1e-9);
  }
}

TEST_CASE("theorem B campaign") {
  const VerificationReport rep = verify_thm_b(2, 1.0, 0.5, small_config(8));
  CHECK(rep.exit_code() == 0);
  for (const auto& r : rep.records) {
    if (r.quantity == "V1") CHECK(r.extremal_value == doctest::Approx(std::numbers::pi / 3.0));
    if (r.quantity == "V1" && r.note == "spindle") CHECK(std::abs(r.margin) <= 2.0 * r.std_error + 1e-12);
    if (r.quantity == "circumradius") CHECK(std::abs(r.k_value - 0.5) <= 5e-5);
  }
  CHECK_THROWS_AS(verify_thm_b(2, 1.0, 1.5, small_config(1)), Error);
}

TEST_CASE("theorem C, lemma-1 and AF campaigns") {
  VerifyConfig cfg = small_config(3);
  const VerificationReport c = verify_thm_c(2, 1.0, 0.5, cfg);
  CHECK(c.exit_code() == 0);
  bool area = false;
  for (const auto& r : c.records)
    if (r.quantity == "V2" && r.note == "lens") {
      area = true;
      CHECK(std::abs(r.extremal_value - 1.228370) <= 3.0 * r.std_error);
    }
  CHECK(area);
  CHECK(verify_lemma_1(2, 1.0, 0.5, cfg).exit_code() == 0);
  cfg.j_list = {4};
  CHECK_THROWS_AS(verify_thm_c(2, 1.0, 0.5, cfg), Error);
  VerifyConfig af = small_config(3);
  const VerificationReport a = verify_af(2, 1.0, af);
  CHECK(a.exit_code() == 0);
  CHECK(a.records.front().quantity == "af_analytic");
}

TEST_CASE("duality, Linhart and lemma-m campaigns") {
  const VerificationReport d = verify_duality(3, 1.0, small_config(4));
  CHECK(d.exit_code() == 0);
  CHECK(d.records.size() == 4 * 3 + 20 * 2);
  CHECK(verify_linhart(2, 1.0, 0.4, small_config(4)).exit_code() == 0);
  const VerificationReport m = verify_lemma_m(2, 1.0, 0.3, small_config(3));
  CHECK(m.exit_code() == 0);
  CHECK(m.records.size() > 20);
}

TEST_CASE("solver errors become ERROR records") {
  VerifyConfig cfg = small_config(2);
  cfg.contacts = {1};
  const VerificationReport rep = verify_thm_a(2, 1.0, 0.3, cfg);
  CHECK(rep.count(Status::Error) == 2);
  CHECK(rep.exit_code() == 2);
}

TEST_CASE("reports") {
  const VerificationReport rep = verify_thm_a(2, 1.0, 0.5, small_config(4));
  const auto j = nlohmann::json::parse(report_to_json(rep));
  CHECK(j["theorem"] == "a");
  CHECK(j["records"].size() == 4);
  CHECK(j["summary"]["pass"].get<int>() + j["summary"]["warn"].get<int>() == 4);
  CHECK(j["config"]["trials"] == 4);
  CHECK(j.contains("timing"));
  CHECK_FALSE(nlohmann::json::parse(report_to_json(rep, false)).contains("timing"));

  std::istringstream csv(report_to_csv(rep));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "theorem,trial,seed,n,lambda,param,contacts,quantity,K_value,extremal_value,margin,stderr,pass");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  CHECK(rows == 4);
}

TEST_CASE("campaigns are reproducible") {
  const VerifyConfig cfg = small_config(4);
  CHECK(report_to_json(verify_thm_b(3, 1.0, 0.4, cfg), false) ==
        report_to_json(verify_thm_b(3, 1.0, 0.4, cfg), false));
  VerifyConfig other = cfg;
  other.seed = 6;
  CHECK(report_to_json(verify_thm_b(3, 1.0, 0.4, cfg), false) !=
        report_to_json(verify_thm_b(3, 1.0, 0.4, other), false));
}
