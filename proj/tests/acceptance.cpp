// Acceptance suite: one PASS/FAIL line per criterion.

#include "lambdahull/harness.hpp"
#include "lambdahull/radii.hpp"
#include "lambdahull/sphere_quad.hpp"
#include "lambdahull/steiner_mixed.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>

using namespace lambdahull;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<void(Outcome&)> body;
};

int count_quantity(const VerificationReport& rep, const std::string& q, Status s) {
  int c = 0;
  for (const auto& r : rep.records) c += r.quantity == q && r.status == s;
  return c;
}

double max_value(const VerificationReport& rep, const std::string& q) {
  double m = 0.0;
  for (const auto& r : rep.records)
    if (r.quantity == q) m = std::max(m, std::abs(r.k_value - r.extremal_value));
  return m;
}

std::vector<double> uniform_eps(int nodes) {
  std::vector<double> g;
  for (int k = 1; k <= nodes; ++k) g.push_back(double(k) / nodes);
  return g;
}

void duality(Outcome& out) {
  VerifyConfig cfg;
  cfg.trials = 25;
  cfg.seed = 1;
  double support = 0.0, radii = 0.0;
  int fails = 0, errors = 0, trials = 0;
  for (int n : {2, 3}) {
    const VerificationReport rep = verify_duality(n, 1.0, cfg);
    for (const auto& r : rep.records) {
      if (r.quantity == "support_identity") {
        support = std::max(support, r.k_value);
        ++trials;
      }
      if (r.quantity == "lens_spindle_radii") radii = std::max(radii, std::abs(r.k_value - r.extremal_value));
    }
    fails += rep.count(Status::Fail);
    errors += rep.count(Status::Error);
  }
  out.detail << "polytopes=" << trials << " max|h+h*-1/l|=" << support << " (tol 1e-6)"
             << " max|r(L)+R(S)-1/l|=" << radii << " (tol 5e-6) fail=" << fails << " error=" << errors;
  out.require(trials == 50, "50 polytopes");
  out.require(support <= 1e-6, "support identity");
  out.require(radii <= 5e-6, "lens/spindle radii");
  out.require(fails == 0 && errors == 0, "all records pass");
}

void closed_forms(Outcome& out) {
  const Vec e1 = unit_vec(2, 0), o = zero_vec(2);
  const DirectionRule grid = sample_directions(2, DirScheme::ProductGrid, 200000, 0);
  const ConvexBodyView lens = view_of(make_lens(1.0, e1, o, 0.5));
  const double v1 = intrinsic_v1(lens, grid).value;
  const VolumeEstimate area =
      mc_volume([&](const Vec& x) { return lens.contains(x, 0.0); }, bbox_of(lens), 1000000, 2);
  const double area_ref = 2.0 * (kPi / 3.0 - std::sqrt(3.0) / 4.0);
  const double R = circumradius(lens).radius;
  const double vs = intrinsic_v1(view_of(make_spindle(1.0, e1, o, 0.5)), grid).value;
  out.detail << "V1(L)-2pi/3=" << v1 - 2.0 * kPi / 3.0 << " area=" << area.value << "+-" << area.std_error
             << " (ref " << area_ref << ") R(L)-sqrt(.75)=" << R - std::sqrt(0.75)
             << " V1(S)-pi/3=" << vs - kPi / 3.0;
  out.require(std::abs(v1 - 2.0 * kPi / 3.0) <= 1e-4, "lens V1");
  out.require(std::abs(area.value - area_ref) <= 4.0 * area.std_error, "lens area");
  out.require(std::abs(R - std::sqrt(0.75)) <= 1e-6, "lens circumradius");
  out.require(std::abs(vs - kPi / 3.0) <= 1e-4, "spindle V1");
}

void steiner(Outcome& out) {
  // Common random numbers: every sample is classified at every node, so a
  // budget of 4e6 per node is one shared stream of 4e6 * nodes points.
  const std::vector<double> g2 = uniform_eps(10), g3 = uniform_eps(25);
  const SteinerEstimate disc =
      steiner_intrinsic(euclidean_ball_view(2), g2, 4000000LL * (long long)g2.size(), 31);
  const SteinerEstimate ball =
      steiner_intrinsic(euclidean_ball_view(3), g3, 4000000LL * (long long)g3.size(), 32);
  const double ref[3] = {1.0, kPi, kPi};
  out.detail << "disc";
  for (int j = 0; j < 3; ++j) {
    const double rel = std::abs(disc.intrinsic[j] - ref[j]) / ref[j];
    out.detail << " V" << j << "=" << disc.intrinsic[j] << "+-" << disc.std_error[j];
    out.require(rel <= 0.01, "disc V" + std::to_string(j) + " within 1%");
  }
  const double rel = std::abs(ball.intrinsic[1] - 4.0) / 4.0;
  out.detail << "; 3-ball V1=" << ball.intrinsic[1] << "+-" << ball.std_error[1] << " (rel " << rel << ")";
  out.require(rel <= 0.02, "3-ball V1 within 2%");
}

void theorem_a(Outcome& out) {
  VerifyConfig cfg;
  cfg.seed = 11;
  for (int n : {2, 3})
    for (double r : {0.3, 0.5, 0.8}) {
      const auto t0 = std::chrono::steady_clock::now();
      const VerificationReport rep = verify_thm_a(n, 1.0, r, cfg);
      const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      int strict = 0, multi = 0;
      for (const auto& rec : rep.records)
        if (rec.contacts > 2) {
          ++multi;
          strict += rec.margin > 3.0 * rec.std_error;
        }
      out.detail << " (n=" << n << ",r=" << r << "): fail=" << rep.count(Status::Fail)
                 << " strict=" << strict << "/" << multi << " " << dt << "s;";
      out.require(rep.records.size() == 100, "100 trials");
      out.require(rep.count(Status::Fail) == 0 && rep.count(Status::Error) == 0, "no violations");
      out.require(strict == multi, "strict margins with more than two contacts");
      out.require(dt < 300.0, "runtime per configuration");
    }
}

void theorem_b(Outcome& out) {
  VerifyConfig cfg;
  cfg.seed = 12;
  for (int n : {2, 3})
    for (double r : {0.3, 0.5, 0.8}) {
      const auto t0 = std::chrono::steady_clock::now();
      const VerificationReport rep = verify_thm_b(n, 1.0, 1.0 - r, cfg);
      const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      out.detail << " (n=" << n << ",R=" << 1.0 - r << "): V1 fail=" << count_quantity(rep, "V1", Status::Fail)
                 << " linhart fail=" << count_quantity(rep, "linhart", Status::Fail)
                 << " identity fail=" << count_quantity(rep, "identity", Status::Fail)
                 << " max|dR|=" << max_value(rep, "circumradius") << " " << dt << "s;";
      out.require(rep.records.size() == 400, "100 trials");
      out.require(rep.count(Status::Fail) == 0 && rep.count(Status::Error) == 0, "no violations");
      out.require(dt < 300.0, "runtime per configuration");
    }
}

void theorem_c(Outcome& out) {
  VerifyConfig cfg;
  cfg.trials = 20;
  cfg.seed = 13;
  for (int n : {2, 3}) {
    const VerificationReport rep = verify_thm_c(n, 1.0, 0.5, cfg);
    int ratios = 0, ratio_fail = 0, vj = 0, vj_fail = 0;
    for (const auto& r : rep.records) {
      const bool ratio = r.quantity.rfind("lemma1", 0) == 0;
      (ratio ? ratios : vj)++;
      if (r.status == Status::Fail) (ratio ? ratio_fail : vj_fail)++;
    }
    out.detail << " n=" << n << ": Vj fail=" << vj_fail << "/" << vj << " ratio fail=" << ratio_fail << "/"
               << ratios << " error=" << rep.count(Status::Error) << ";";
    out.require(vj == 20 * n && ratios == 20 * n * (n + 1) / 2, "record counts");
    out.require(rep.count(Status::Fail) == 0 && rep.count(Status::Error) == 0, "no violations");
  }
}

void lemmas(Outcome& out) {
  const std::vector<TrialRecord> prof = profile_records(1.0);
  int prof_fail = 0;
  for (const auto& r : prof) prof_fail += r.status != Status::Pass;
  out.detail << "profile grid fail=" << prof_fail << "/" << prof.size() << ";";
  out.require(prof.size() == 20 && prof_fail == 0, "eval_R sign pattern");
  VerifyConfig cfg;
  cfg.trials = 50;
  cfg.seed = 14;
  for (int n : {2, 3}) {
    const VerificationReport rep = verify_lemma_m(n, 1.0, n == 2 ? 0.3 : 0.5, cfg);
    int facets = 0;
    for (const auto& r : rep.records) facets += r.quantity.rfind("lemma_m", 0) == 0;
    out.detail << " n=" << n << ": facets=" << facets << " fail=" << rep.count(Status::Fail)
               << " unresolved=" << rep.count(Status::Warn) << " error=" << rep.count(Status::Error)
               << " min margin=" << rep.min_margin() << ";";
    out.require(rep.count(Status::Fail) == 0 && rep.count(Status::Error) == 0, "lemma_m margins");
  }
}

void alexandrov_fenchel(Outcome& out) {
  VerifyConfig cfg;
  cfg.trials = 10;
  cfg.seed = 15;
  int triples = 0;
  for (int n : {2, 3}) {
    const VerificationReport rep = verify_af(n, 1.0, cfg);
    for (const auto& r : rep.records) {
      if (r.quantity == "af_residual") ++triples;
      if (r.quantity == "af_analytic")
        out.detail << "analytic residual=" << r.k_value << "+-" << r.std_error << " (ref "
                   << r.extremal_value << ", rel " << std::abs(r.k_value - r.extremal_value) / r.extremal_value
                   << ");";
    }
    out.detail << " n=" << n << ": fail=" << rep.count(Status::Fail) << " error=" << rep.count(Status::Error)
               << " min residual/sigma=";
    double worst = 1e300;
    for (const auto& r : rep.records)
      if (r.quantity == "af_residual") worst = std::min(worst, r.k_value / std::max(r.std_error, 1e-300));
    out.detail << worst << ";";
    out.require(rep.count(Status::Fail) == 0 && rep.count(Status::Error) == 0, "residuals and analytic case");
  }
  out.require(triples == 20, "20 triples");
}

void determinism(Outcome& out) {
  VerifyConfig cfg;
  cfg.trials = 6;
  cfg.seed = 16;
  cfg.volume_samples = 200000;
  cfg.mixed_samples = 20000;
  cfg.lemma_m_samples = 20000;
  const std::vector<std::function<VerificationReport()>> suites{
      [&] { return verify_thm_a(3, 1.0, 0.5, cfg); },
      [&] { return verify_thm_b(2, 1.0, 0.4, cfg); },
      [&] { return verify_thm_c(2, 1.0, 0.5, cfg); },
      [&] { return verify_linhart(3, 1.0, 0.4, cfg); },
      [&] { return verify_duality(2, 1.0, cfg); },
      [&] { return verify_lemma_m(2, 1.0, 0.3, cfg); },
      [&] { return verify_af(2, 1.0, cfg); },
  };
  int identical = 0;
  for (const auto& suite : suites) {
    setenv("LAMBDAHULL_THREADS", "1", 1);
    const VerificationReport a = suite();
    setenv("LAMBDAHULL_THREADS", "3", 1);
    const VerificationReport b = suite();
    unsetenv("LAMBDAHULL_THREADS");
    const bool same = report_to_json(a, false) == report_to_json(b, false) &&
                      report_to_csv(a) == report_to_csv(b);
    identical += same;
    out.require(same, "suite " + a.theorem + " reproducible");
  }
  out.detail << identical << "/" << suites.size() << " suites byte-identical (JSON without timing, CSV; 1 vs 3 threads)";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "duality identities", 60, duality},
      {2, "closed-form oracles", 60, closed_forms},
      {3, "Steiner recovery", 180, steiner},
      {4, "Theorem A campaign", 6 * 300, theorem_a},
      {5, "Theorem B campaign", 6 * 300, theorem_b},
      {6, "Theorem C campaign", 600, theorem_c},
      {7, "lemma mechanism checks", 120, lemmas},
      {8, "Alexandrov-Fenchel spot checks", 300, alexandrov_fenchel},
      {9, "determinism", 600, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > c.limit_seconds) {
      out.pass = false;
      out.detail << " [runtime " << dt << "s over " << c.limit_seconds << "s]";
    }
    failed += !out.pass;
    std::printf("criterion %d %s: %s (%.1fs) %s\n", c.id, c.title, out.pass ? "PASS" : "FAIL", dt,
                out.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
