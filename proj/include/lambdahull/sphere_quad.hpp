// Direction rules on the sphere, mean-width quadrature, the lens profile
// functional and spherical Voronoi cells of a touching set.

#pragma once

#include "lambdahull/bodies.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lambdahull {

enum class DirScheme { UniformMC, SymmetrizedMC, ProductGrid };

const char* to_string(DirScheme scheme);
DirScheme dir_scheme_from_string(const std::string& name);

struct DirectionRule {
  int dim = 2;
  DirScheme scheme = DirScheme::SymmetrizedMC;
  int count = 0;  // requested N
  std::uint64_t seed = 0;
  std::vector<Vec> nodes;
  std::vector<double> weights;  // sum to the sphere measure n * kappa_n
};

// Product grid: n = 2 uses N equispaced angles; n = 3 uses Gauss-Legendre in
// cos(theta) with round(sqrt(N/2)) nodes times 2x as many equispaced azimuths.
// Symmetrized: N/2 i.i.d. directions and their antipodes.
DirectionRule sample_directions(int n, DirScheme scheme, int count, std::uint64_t seed);

std::string rule_to_json(const DirectionRule& rule);
DirectionRule rule_from_json(const std::string& text);

struct V1Estimate {
  double value = 0.0;
  double std_error = 0.0;    // Monte Carlo standard error (0 for grids)
  double grid_error = 0.0;   // |Q_N - Q_{N/4}| for grids
  // The figure used for 3-sigma style tests.
  double sigma() const { return std_error > 0.0 ? std_error : grid_error; }
};

// V_1 = (1 / kappa_{n-1}) * sum_i w_i h(u_i).
V1Estimate intrinsic_v1(const ConvexBodyView& body, const DirectionRule& rule);

// Support values at the rule nodes, evaluated in parallel chunks.
std::vector<double> support_values(const ConvexBodyView& body, const DirectionRule& rule);

// ---------------------------------------------------------------------------

// Support profile of the lens with inradius r, as a function of the angle t
// from a touching direction, and its hemisphere average F under the weight
// q(t) = sin(t)^(n-2).
struct RotProfile {
  int dim = 2;
  double lambda = 1.0;
  double r = 0.0;
  double a = 0.0;       // centre offset 1/lambda - r
  double t_star = 0.0;  // switch angle between cap and rim
  double F = 0.0;

  double h(double t) const;
  double q(double t) const;
};

RotProfile lens_profile(int n, double lambda, double r);

// Integral over [0, phi0] of (h(t) - F) q(t).
double eval_R(const RotProfile& profile, double phi0);

// Closed-form V_1 of the lens of inradius r and of the spindle of circumradius R.
double lens_v1(int n, double lambda, double r);
double spindle_v1(int n, double lambda, double R);

// ---------------------------------------------------------------------------

// u belongs to the closed Voronoi cell of touching point i.
bool radial_cell_contains(const Vec& u, std::span<const Vec> touching, const Vec& z,
                          std::size_t i);

struct LemmaMResult {
  double lhs = 0.0;     // average of h_K over the cell of p_i
  double rhs = 0.0;     // hemisphere average of the tangent lens (F)
  double margin = 0.0;  // rhs - lhs
  double std_error = 0.0;
  int cell_nodes = 0;
};

// Supports are measured about the inball centre; throws DegenerateCell when
// fewer than 50 nodes fall in the cell.
LemmaMResult lemma_m_check(const BallPolytope& body, std::size_t i, const DirectionRule& rule,
                           const SolverConfig& cfg = {});

}  // namespace lambdahull
