#include "lambdahull/harness.hpp"
#include "lambdahull/radii.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace lambdahull {
namespace {

using nlohmann::json;

struct Globals {
  int dim = 2;
  double lambda = 1.0;
  std::uint64_t seed = 1;
  long long samples = 0;  // 0: command default
  int trials = 0;
  double tol = 1e-8;
  std::string out;
  std::string format = "json";
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidParam, "cannot write " + g.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

Body read_body(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidParam, "cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return body_from_json(ss.str());
}

SolverConfig solver_of(const Globals& g) {
  SolverConfig cfg;
  cfg.tol = g.tol;
  return cfg;
}

double inradius_of(const Body& body) {
  if (const auto* p = std::get_if<BallPolytope>(&body)) return inradius(*p).radius;
  const auto& b = std::get<RotSymBody>(body);
  const double rho = 1.0 / b.lambda;
  switch (b.kind) {
    case RotKind::Ball:
    case RotKind::Lens: return b.param;
    case RotKind::Spindle: return rho - std::sqrt(rho * rho - b.param * b.param);
  }
  return 0.0;
}

json measure(const ConvexBodyView& view, std::optional<double> r, const Globals& g,
             const std::string& scheme_name) {
  const int n = view.dim;
  DirScheme scheme = dir_scheme_from_string(scheme_name);
  const int count = static_cast<int>(g.samples > 0 ? g.samples : 200000);
  const V1Estimate v1 = intrinsic_v1(view, sample_directions(n, scheme, count, g.seed));
  const CircumResult circ = circumradius(view, solver_of(g));
  json j{{"dim", n},
         {"lambda", view.lambda},
         {"V1", v1.value},
         {"V1_stderr", v1.sigma()},
         {"scheme", to_string(scheme)},
         {"N", count},
         {"seed", g.seed},
         {"R", circ.radius},
         {"R_converged", circ.converged}};
  j["r"] = r ? json(*r) : json(nullptr);
  return j;
}

void emit_report(const Globals& g, const VerificationReport& report) {
  emit(g, g.format == "csv" ? report_to_csv(report) : report_to_json(report));
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Numerical checks of mean-width inequalities for lambda-convex bodies",
               "lambdahull"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--dim", g.dim, "Ambient dimension")->check(CLI::Range(2, 4));
  app.add_option("--lambda", g.lambda, "Curvature bound (ball radius 1/lambda)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Base seed");
  app.add_option("--samples", g.samples, "Sample / direction budget")->check(CLI::PositiveNumber);
  app.add_option("--trials", g.trials, "Trials per campaign")->check(CLI::PositiveNumber);
  app.add_option("--tol", g.tol, "Geometric tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output path (default stdout)");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a body as JSON");
  gen->fallthrough();
  std::string kind = "random";
  double gen_r = 0.5;
  int gen_contacts = 3;
  int gen_order = 3;
  gen->add_option("--kind", kind, "random|symmetric|antipodal|lens|spindle|ball")
      ->check(CLI::IsMember({"random", "symmetric", "antipodal", "lens", "spindle", "ball"}));
  gen->add_option("--inradius,--radius", gen_r, "Inradius (spindle: circumradius)")
      ->check(CLI::PositiveNumber);
  gen->add_option("--contacts", gen_contacts, "Touching points of a random body");
  gen->add_option("--order", gen_order, "Cyclic group order");

  // measure
  auto* meas = app.add_subcommand("measure", "Measure V_1, inradius and circumradius");
  meas->fallthrough();
  std::string body_path;
  std::string scheme = "grid";
  meas->add_option("--body", body_path, "Body JSON")->required();
  meas->add_option("--scheme", scheme, "Direction rule")
      ->check(CLI::IsMember({"uniform", "symmetrized", "grid"}));

  // dual
  auto* dual = app.add_subcommand("dual", "Lambda-dual of a body");
  dual->fallthrough();
  std::string dual_path;
  dual->add_option("--body", dual_path, "Body JSON")->required();

  // verify
  auto* ver = app.add_subcommand("verify", "Run a verification campaign");
  ver->fallthrough();
  std::string theorem;
  std::optional<double> v_r, v_R;
  std::vector<int> j_list, contacts;
  bool mc_v1 = false;
  ver->add_option("--theorem", theorem, "Campaign")
      ->required()
      ->check(CLI::IsMember({"a", "b", "c", "linhart", "duality", "lemma-m", "lemma-1", "af"}));
  ver->add_option("--inradius", v_r, "Inradius r")->check(CLI::PositiveNumber);
  ver->add_option("--radius", v_R, "Circumradius R (theorem b)")->check(CLI::PositiveNumber);
  ver->add_option("--j", j_list, "Intrinsic volume indices (theorem c)");
  ver->add_option("--contacts", contacts, "Contact counts cycled over trials");
  ver->add_flag("--mc-v1", mc_v1, "Symmetrized Monte Carlo instead of the product grid");

  // profile
  auto* prof = app.add_subcommand("profile", "Sign checks of the lens profile remainder");
  prof->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    if (*gen) {
      const int n = g.dim;
      if (kind == "random") {
        emit(g, body_to_json(gen_random_polytope(n, g.lambda, gen_r, gen_contacts, g.seed).body));
      } else if (kind == "symmetric" || kind == "antipodal") {
        SymmetryGroupSpec spec;
        if (kind == "antipodal") spec.kind = SymmetryGroupSpec::Kind::Antipodal;
        spec.order = gen_order;
        const int orbit = kind == "antipodal" ? 2 : gen_order;
        emit(g, body_to_json(gen_symmetric_polytope(n, g.lambda, gen_r, spec, orbit, g.seed).body));
      } else if (kind == "lens") {
        emit(g, body_to_json(make_lens(g.lambda, unit_vec(n, 0), zero_vec(n), gen_r)));
      } else if (kind == "spindle") {
        emit(g, body_to_json(make_spindle(g.lambda, unit_vec(n, 0), zero_vec(n), gen_r)));
      } else {
        emit(g, body_to_json(make_ball(n, g.lambda, zero_vec(n), gen_r)));
      }
      return 0;
    }
    if (*meas) {
      const Body body = read_body(body_path);
      g.dim = dim_of(body);
      std::optional<double> r;
      r = inradius_of(body);
      emit(g, measure(view_of(body, solver_of(g)), r, g, scheme).dump(2));
      return 0;
    }
    if (*dual) {
      const Body body = read_body(dual_path);
      if (const auto* b = std::get_if<RotSymBody>(&body)) {
        emit(g, body_to_json(dual_of(*b)));
        return 0;
      }
      const auto& p = std::get<BallPolytope>(body);
      const double rho = p.ball_radius();
      json j = measure(dual_view(p, solver_of(g)), rho - inradius(p).radius, g, "grid");
      j["kind"] = "dual_of_ball_polytope";
      emit(g, j.dump(2));
      return 0;
    }
    if (*prof) {
      VerificationReport rep;
      rep.theorem = "profile";
      rep.records = profile_records(g.lambda);
      emit_report(g, rep);
      return rep.exit_code();
    }

    VerifyConfig cfg;
    cfg.solver = solver_of(g);
    cfg.seed = g.seed;
    cfg.v1_grid = !mc_v1;
    cfg.contacts = contacts;
    cfg.j_list = j_list;
    if (theorem == "c" || theorem == "lemma-1" || theorem == "af") cfg.trials = 20;
    if (theorem == "duality" || theorem == "lemma-m") cfg.trials = 50;
    if (g.trials > 0) cfg.trials = g.trials;
    if (g.samples > 0) {
      cfg.v1_samples = static_cast<int>(g.samples);
      cfg.volume_samples = g.samples;
      cfg.mixed_samples = g.samples;
      cfg.lemma_m_samples = static_cast<int>(g.samples);
    }
    const double rho = 1.0 / g.lambda;
    const double r = v_r.value_or(0.5 * rho);
    VerificationReport rep;
    if (theorem == "a") rep = verify_thm_a(g.dim, g.lambda, r, cfg);
    else if (theorem == "b") rep = verify_thm_b(g.dim, g.lambda, v_R.value_or(rho - r), cfg);
    else if (theorem == "c") rep = verify_thm_c(g.dim, g.lambda, r, cfg);
    else if (theorem == "linhart") rep = verify_linhart(g.dim, g.lambda, r, cfg);
    else if (theorem == "duality") rep = verify_duality(g.dim, g.lambda, cfg);
    else if (theorem == "lemma-m") rep = verify_lemma_m(g.dim, g.lambda, r, cfg);
    else if (theorem == "lemma-1") rep = verify_lemma_1(g.dim, g.lambda, r, cfg);
    else rep = verify_af(g.dim, g.lambda, cfg);
    emit_report(g, rep);
    return rep.exit_code();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace lambdahull
