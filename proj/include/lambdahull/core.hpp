// Shared numeric types, error codes, deterministic random streams and the
// small parallel-for used by the sampling loops.

#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace lambdahull {

inline constexpr int kMaxDim = 6;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                          kMaxDim, kMaxDim + 1>;
// Small dense systems (Gram matrices of at most n + 1 vectors).
using SmallMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                               kMaxDim + 1, kMaxDim + 1>;
using SmallVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim + 1, 1>;

enum class ErrorCode {
  NonConvergence,
  EmptyBody,
  InvalidParam,
  Unsupported,
  DegenerateSupport,
  HemisphereViolation,
  DegenerateCell,
  IllConditioned,
  EmptyEstimate,
  RejectionExhausted,
  InvalidGroup,
  Usage,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Volume of the unit ball in R^k; kappa(0) = 1.
double kappa(int k);

// (n-1)-dimensional measure of the unit sphere in R^n, n * kappa(n).
inline double sphere_measure(int n) { return n * kappa(n); }

// V_1 of the unit ball in R^n: n kappa_n / kappa_{n-1}.
inline double unit_ball_v1(int n) { return sphere_measure(n) / kappa(n - 1); }

double binomial(int n, int k);

Vec zero_vec(int n);
Vec unit_vec(int n, int i);

// Random rigid motions used by invariance tests and generators.
Mat random_rotation(int n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Counter-based random numbers: (seed, stream, counter) -> 64 random bits.
// Values are identical on every platform and independent of thread layout.

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ (index * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
}

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(derive_seed(seed, stream)) {}

  std::uint64_t next() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal();

  // Uniform on the unit sphere in R^n.
  Vec on_sphere(int n);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// ---------------------------------------------------------------------------

// Worker count: LAMBDAHULL_THREADS if set, else hardware concurrency.
int worker_count();

// Runs body(i) for i in [0, count). Iterations are distributed over workers;
// callers write results into per-index slots so reductions stay ordered.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lambdahull
