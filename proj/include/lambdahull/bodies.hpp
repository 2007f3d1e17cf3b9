// Representations of lambda-convex bodies: finite intersections of congruent
// balls, the closed-form ball / lens / spindle, and a type-erased measurement
// view used by every downstream estimator.

#pragma once

#include "lambdahull/core.hpp"
#include "lambdahull/gjk.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace lambdahull {

struct SolverConfig {
  double tol = 1e-8;        // geometric tolerance
  double gap_tol = 1e-7;    // infeasibility threshold for cyclic projection
  int max_iters = 100000;
  int multistarts = 32;     // farthest-point ascent restarts
  double ascent_step_tol = 1e-10;
};

struct Ball {
  Vec center;
  double radius = 0.0;
};

// {y : <normal, y> >= offset}
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

// Intersection of finitely many balls of radius 1/lambda. Immutable; copies
// share the precomputed active-set data.
class BallPolytope {
 public:
  // Intersection of a subset of the spheres: a round sphere of `radius`
  // centred at `origin`, lying in the orthogonal complement of span(basis).
  struct Face {
    std::vector<int> members;
    Vec origin;
    Mat basis;
    double radius = 0.0;
  };

  // Throws EmptyBody when the balls have no common interior point.
  BallPolytope(double lambda, std::vector<Vec> centers);

  int dim() const { return data_->dim; }
  double lambda() const { return data_->lambda; }
  double ball_radius() const { return 1.0 / data_->lambda; }
  const std::vector<Vec>& centers() const { return data_->centers; }
  std::size_t size() const { return data_->centers.size(); }
  const std::vector<Face>& faces() const { return data_->faces; }

  bool contains(const Vec& x, double tol = 1e-8) const;

  // Image under y -> rotation * y + shift.
  BallPolytope transformed(const Mat& rotation, const Vec& shift) const;
  // The polytope with ball `i` removed (a superset). Requires size() >= 2.
  BallPolytope without(std::size_t i) const;

 private:
  struct Data {
    int dim;
    double lambda;
    std::vector<Vec> centers;
    std::vector<Face> faces;
  };
  std::shared_ptr<const Data> data_;
};

struct SupportResult {
  double value = 0.0;
  Vec point;  // maximiser of <u, y> over the body
};

// Exact support value by active-set enumeration over the sphere intersections.
SupportResult support_ballpoly(const BallPolytope& body, const Vec& u,
                               const SolverConfig& cfg = {});

// Independent route: bisection on the level of {<u, y> >= v} with a cyclic
// projection feasibility test. Slow; used to cross-check the exact solver.
SupportResult support_ballpoly_bisection(const BallPolytope& body, const Vec& u,
                                         const SolverConfig& cfg = {});

// Euclidean projection onto the polytope (exact active-set solver).
Vec project(const BallPolytope& body, const Vec& x, const SolverConfig& cfg = {});

// Dykstra's corrected cyclic projections; cross-check for `project`.
Vec project_dykstra(const BallPolytope& body, const Vec& x, const SolverConfig& cfg = {});

double distance(const BallPolytope& body, const Vec& x, const SolverConfig& cfg = {});

// Cyclic projection feasibility for balls (and optional halfspaces). Returns
// nullopt when the sweep displacement stalls above cfg.gap_tol; throws
// NonConvergence when neither convergence nor a stall is reached.
std::optional<Vec> feasibility(std::span<const Ball> balls, const SolverConfig& cfg = {},
                               std::span<const Halfspace> halfspaces = {});

// ---------------------------------------------------------------------------

enum class RotKind { Ball, Lens, Spindle };

const char* to_string(RotKind kind);

// Closed-form rotationally symmetric body. For Ball `param` is the radius,
// for Lens the inradius and for Spindle the circumradius.
struct RotSymBody {
  RotKind kind = RotKind::Ball;
  int dim = 2;
  double lambda = 1.0;
  Vec axis;
  Vec center;
  double param = 1.0;
};

RotSymBody make_ball(int dim, double lambda, const Vec& center, double radius);
// A lens of inradius 1/lambda is returned as a Ball.
RotSymBody make_lens(double lambda, const Vec& axis, const Vec& center, double inradius);
RotSymBody make_spindle(double lambda, const Vec& axis, const Vec& center,
                        double circumradius);

double support_rotsym(const RotSymBody& body, const Vec& u);
Vec support_point_rotsym(const RotSymBody& body, const Vec& u);
bool contains_rotsym(const RotSymBody& body, const Vec& x, double tol = 1e-8);

// Lens, or Ball of radius 1/lambda, as an explicit ball intersection.
// Throws Unsupported otherwise.
BallPolytope to_ballpoly(const RotSymBody& body);

// lambda-dual of a closed form: Lens <-> Spindle, Ball(rho) -> Ball(1/lambda - rho).
RotSymBody dual_of(const RotSymBody& body);

using Body = std::variant<BallPolytope, RotSymBody>;

int dim_of(const Body& body);
double lambda_of(const Body& body);

// ---------------------------------------------------------------------------

// Type-erased body used by the measurement code.
struct ConvexBodyView {
  int dim = 0;
  double lambda = 0.0;  // 0 when the view is not tied to a ball radius
  std::string key;      // canonical descriptor; equal keys mean equal bodies
  std::function<double(const Vec&)> support;
  SupportPointFn support_point;
  std::function<bool(const Vec&, double)> contains;
  std::function<double(const Vec&)> distance;  // Euclidean distance to the body
  std::optional<Ball> ball;  // set when the body is a Euclidean ball
};

ConvexBodyView view_of(const BallPolytope& body, const SolverConfig& cfg = {});
ConvexBodyView view_of(const RotSymBody& body);
ConvexBodyView view_of(const Body& body, const SolverConfig& cfg = {});

struct FarthestResult {
  double distance = 0.0;
  Vec point;
  Vec direction;
};

// max_{y in K} |y - x| by multi-start fixed-point ascent on the sphere.
FarthestResult farthest_distance(const ConvexBodyView& body, const Vec& x,
                                 const SolverConfig& cfg = {});

// Euclidean distance from x to the body (view.distance, else GJK).
double distance_to(const ConvexBodyView& body, const Vec& x, const SolverConfig& cfg = {});

// View of K^lambda from a view of K (lambda taken from `lambda`).
ConvexBodyView dual_view(const ConvexBodyView& body, double lambda,
                         const SolverConfig& cfg = {});
ConvexBodyView dual_view(const BallPolytope& body, const SolverConfig& cfg = {});

double dual_support(const BallPolytope& body, const Vec& u, const SolverConfig& cfg = {});
bool dual_contains(const BallPolytope& body, const Vec& x, const SolverConfig& cfg = {});

struct MinkowskiTerm {
  ConvexBodyView body;
  double weight = 1.0;
};

// Sum of weighted bodies as a view. Euclidean-ball terms are folded into a
// distance threshold.
ConvexBodyView minkowski_view(std::vector<MinkowskiTerm> terms, const SolverConfig& cfg = {});

bool minkowski_contains(std::span<const MinkowskiTerm> terms, const Vec& x,
                        const SolverConfig& cfg = {});

// ---------------------------------------------------------------------------
// Body JSON: {"dim","lambda","kind","centers"|"axis","center","param"}; reals
// are written with 17 significant digits.

std::string body_to_json(const Body& body);
Body body_from_json(const std::string& text);

std::string format_real(double v);

}  // namespace lambdahull
