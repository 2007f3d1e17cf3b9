// Body generators, inequality verifiers and their reports.

#pragma once

#include "lambdahull/bodies.hpp"
#include "lambdahull/sphere_quad.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lambdahull {

struct GeneratedBody {
  BallPolytope body;
  Vec center;                 // inball centre
  double inradius = 0.0;
  std::vector<Vec> touching;  // contacts with the inball
  Mat generator;              // symmetry rotation (identity for random bodies)
};

// Contacts uniform on sphere(0, r) conditioned on not lying in an open
// hemisphere. For m <= n that event has probability zero, so the last contact
// is placed at the negated positive combination of the others instead.
GeneratedBody gen_random_polytope(int n, double lambda, double r, int contacts,
                                  std::uint64_t seed);

struct SymmetryGroupSpec {
  enum class Kind { Cyclic, Antipodal };
  Kind kind = Kind::Cyclic;
  int order = 3;  // for Cyclic
  Vec axis;       // empty: a seeded random axis
};

// Touching set is one orbit of the group: the antipodal pair along the axis,
// or a regular m-gon on the equator of the axis.
GeneratedBody gen_symmetric_polytope(int n, double lambda, double r,
                                     const SymmetryGroupSpec& group, int orbit_size,
                                     std::uint64_t seed);

// max |h(u) - h(g u)| over `count` seeded directions.
double symmetry_residual(const BallPolytope& body, const Mat& generator, int count,
                         std::uint64_t seed);

// ---------------------------------------------------------------------------

enum class Status { Pass, Warn, Fail, Error };

const char* to_string(Status s);

struct TrialRecord {
  std::string theorem;
  int trial = 0;
  std::uint64_t seed = 0;
  int n = 0;
  double lambda = 0.0;
  double param = 0.0;
  int contacts = 0;
  std::string quantity;
  double k_value = 0.0;
  double extremal_value = 0.0;
  double margin = 0.0;
  double std_error = 0.0;
  Status status = Status::Pass;
  std::string note;
};

struct VerifyConfig {
  SolverConfig solver;
  int trials = 100;
  std::uint64_t seed = 1;
  int v1_samples = 200000;             // directions for V_1
  bool v1_grid = true;                 // product grid when n <= 3
  long long volume_samples = 0;        // Steiner fits; 0: 1e6 (n = 2), 4e6 (n = 3)
  long long mixed_samples = 100000;    // per weight group; the analytic AF case uses 100x
  int lemma_m_samples = 100000;
  std::vector<int> contacts;           // cycled per trial; empty: default set
  std::vector<int> j_list;             // Theorem C; empty: 1..n
};

struct VerificationReport {
  std::string theorem;
  std::vector<TrialRecord> records;
  std::string config;  // JSON echo
  double wall_time = 0.0;

  int count(Status s) const;
  double min_margin() const;
  // 0: all pass (warnings allowed), 1: some inequality fails, 2: solver errors.
  int exit_code() const;
};

VerificationReport verify_thm_a(int n, double lambda, double r, const VerifyConfig& cfg);
VerificationReport verify_thm_b(int n, double lambda, double R, const VerifyConfig& cfg);
VerificationReport verify_thm_c(int n, double lambda, double r, const VerifyConfig& cfg);
VerificationReport verify_linhart(int n, double lambda, double r, const VerifyConfig& cfg);
VerificationReport verify_duality(int n, double lambda, const VerifyConfig& cfg);
VerificationReport verify_lemma_m(int n, double lambda, double r, const VerifyConfig& cfg);
VerificationReport verify_lemma_1(int n, double lambda, double r, const VerifyConfig& cfg);
VerificationReport verify_af(int n, double lambda, const VerifyConfig& cfg);

// Profile records: eval_R on a 100-point grid in (0, pi/2] for 20 (n, r)
// combinations with n in {2, 3}.
std::vector<TrialRecord> profile_records(double lambda);

std::string report_to_json(const VerificationReport& report, bool with_timing = true);
std::string report_to_csv(const VerificationReport& report);

std::string config_to_json(const VerifyConfig& cfg);

// Direction rule used by the verifiers for V_1.
DirectionRule v1_rule(int n, const VerifyConfig& cfg, std::uint64_t seed);

// Command-line entry point; returns the process exit code.
int cli_main(int argc, char** argv);

}  // namespace lambdahull
