// Monte Carlo volumes, Steiner-polynomial fits for intrinsic volumes and
// mixed volumes by fitting the volume polynomial of Minkowski combinations.

#pragma once

#include "lambdahull/bodies.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lambdahull {

// Euclidean ball about the origin as a view (any radius).
ConvexBodyView euclidean_ball_view(int n, double radius = 1.0);

struct BBox {
  Vec lo, hi;
  double volume() const { return (hi - lo).prod(); }
};

// Box from the supports along +-coordinate directions, half-extent widened by
// `margin` (relative) about its midpoint.
BBox bbox_of(const ConvexBodyView& body, double margin = 0.1);

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long long samples = 0;
  long long hits = 0;
  std::uint64_t seed = 0;
};

// bbox volume * hits / N. Throws EmptyEstimate when nothing is hit.
VolumeEstimate mc_volume(const std::function<bool(const Vec&)>& member, const BBox& box,
                         long long samples, std::uint64_t seed);

// Volumes of the nested family {x : classify(x) <= k}, k = 0..levels-1, from
// one sample stream. classify returns the smallest level containing x, or
// `levels` when x lies outside all of them.
struct MultiVolume {
  std::vector<double> value;
  Eigen::MatrixXd covariance;
  long long samples = 0;
};

MultiVolume mc_multi_volume(const std::function<int(const Vec&)>& classify, int levels,
                            const BBox& box, long long samples, std::uint64_t seed);

// ---------------------------------------------------------------------------

struct SteinerEstimate {
  int dim = 0;
  std::vector<double> intrinsic;  // V_0 .. V_n
  std::vector<double> std_error;
  std::vector<double> eps_grid;
  std::vector<double> volumes;    // Vol(K + eps B) per node
  double condition = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
};

std::vector<double> default_eps_grid(int n);

// Least-squares fit of Vol(K + eps B) = sum_j kappa_{n-j} V_j eps^(n-j).
// Requires n <= 4 and at least n + 1 distinct nodes in (0, 1].
SteinerEstimate steiner_intrinsic(const ConvexBodyView& body, const std::vector<double>& eps_grid,
                                  long long samples, std::uint64_t seed,
                                  const SolverConfig& cfg = {});

// ---------------------------------------------------------------------------

struct MixedTerm {
  ConvexBodyView body;
  int multiplicity = 1;
};

struct MixedVolumeEstimate {
  std::vector<std::pair<std::string, int>> tuple;  // canonical (key, multiplicity)
  double value = 0.0;
  double std_error = 0.0;
  double condition = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> weight_grid;
};

// Fitted volume polynomial of t_1 K_1 + ... + t_m K_m (homogeneous of degree n).
struct VolumePolynomial {
  int dim = 0;
  std::vector<std::string> keys;                // canonical body order
  std::vector<int> input_index;                 // canonical slot of each input body
  std::vector<std::vector<int>> exponents;      // one entry per monomial
  std::vector<double> coefficient;
  Eigen::MatrixXd covariance;
  double condition = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> weight_grid;

  // Mixed volume V(K_1[a_1], ..., K_m[a_m]) with its covariance index.
  std::size_t index_of(const std::vector<int>& exponent) const;
  double mixed(const std::vector<int>& exponent) const;
};

std::vector<double> default_weight_grid();

// Bodies with equal keys are merged. n <= 3 and at most 3 distinct bodies.
VolumePolynomial fit_volume_polynomial(const std::vector<ConvexBodyView>& bodies,
                                       const std::vector<double>& weight_grid,
                                       long long samples, std::uint64_t seed,
                                       const SolverConfig& cfg = {});

MixedVolumeEstimate mixed_volume(const std::vector<MixedTerm>& terms,
                                 const std::vector<double>& weight_grid, long long samples,
                                 std::uint64_t seed, const SolverConfig& cfg = {});

struct AfResult {
  double residual = 0.0;
  double sigma = 0.0;
  double v12 = 0.0, v11 = 0.0, v22 = 0.0;
  bool pass() const { return residual >= -3.0 * sigma; }
};

// V(K1,K2,rest)^2 - V(K1,K1,rest) V(K2,K2,rest), one shared fit.
AfResult af_residual(const ConvexBodyView& k1, const ConvexBodyView& k2,
                     const std::vector<ConvexBodyView>& rest, long long samples,
                     std::uint64_t seed, const SolverConfig& cfg = {});

struct RatioResult {
  int s = 0, t = 0;
  double ratio = 0.0;
  double sigma = 0.0;
  bool pass() const { return ratio <= 1.0 + 3.0 * sigma; }
};

// V(K[s-t], L[t], B[n-s]) / V(K[s-t-1], L[t+1], B[n-s]).
RatioResult lemma1_ratio(const VolumePolynomial& fit, int s, int t);
RatioResult lemma1_ratio(const ConvexBodyView& k, const ConvexBodyView& lens, int s, int t,
                         long long samples, std::uint64_t seed, const SolverConfig& cfg = {});

// The polynomial in (K, L, B) with B the unit ball about the origin, from which
// every ratio above is read.
VolumePolynomial lemma1_fit(const ConvexBodyView& k, const ConvexBodyView& lens,
                            long long samples, std::uint64_t seed, const SolverConfig& cfg = {});

}  // namespace lambdahull
