#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "grouplab/words.hpp"

namespace grouplab {

/// Two nearby ball elements could not be told apart; retry with a smaller
/// radius or a tighter dedup tolerance.
struct AmbiguityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The bilinear form diag(1, 1, -1) preserved by plane isometries.
Eigen::Matrix3d minkowski_form();

/// Max-norm of M^T J M - J.
double form_residual(const Eigen::Matrix3d& m);

/// A linear map preserving the form, with an accumulated error bound.
struct Isometry {
  Eigen::Matrix3d mat = Eigen::Matrix3d::Identity();
  double tol = 0.0;

  double det() const { return mat.determinant(); }
  bool orientation_preserving() const { return det() > 0.0; }
};

/// Checks the form residual against the isometry's own error bound.
bool is_isometry(const Isometry& g, double slack = 1e-9);

/// Product with first-order error propagation.
Isometry compose(const Isometry& a, const Isometry& b);

/// Inverse via the form: M^{-1} = J M^T J.
Isometry inverse(const Isometry& g);

/// Max-norm distance to the identity.
double identity_residual(const Eigen::Matrix3d& m);

/// Least k in [1, max_order] with g^k the identity within tol, else 0.
int element_order(const Isometry& g, int max_order = 16, double tol = 1e-6);

/// Reflection fixing the line J-orthogonal to the (spacelike, unit) normal.
Isometry reflection(const Eigen::Vector3d& normal);

struct TriangleGroupSpec {
  int p = 2;
  int q = 3;
  int r = 7;
};

struct TriangleReflections {
  Isometry a;
  Isometry b;
  Isometry c;
};

/// Reflections a, b, c with ab, bc, ac of orders p, q, r.  Requires integer
/// entries >= 2 and 1/p + 1/q + 1/r < 1.
TriangleReflections build_reflections(const TriangleGroupSpec& spec);

/// Two translations along distinct axes far enough apart to act freely.
std::pair<Isometry, Isometry> free_translation_pair(double length = 3.0);

struct BallVertex {
  Word word;
  Eigen::Matrix3d mat;
  double tol = 0.0;
};

struct BallEdge {
  int from = 0;
  Letter letter = 0;
  int to = 0;
};

/// Breadth-first ball in a Cayley graph, vertices in discovery order with
/// canonical words, vertex 0 the identity.
struct CayleyBall {
  Alphabet labels;
  std::vector<BallVertex> vertices;
  std::vector<BallEdge> edges;
  std::vector<std::vector<int>> step;
  std::vector<std::vector<int>> adjacent;
  int radius = 0;
  double dedup_tol = 1e-6;
};

/// Expands labelled generators out to the given radius, merging vertices
/// whose matrices agree within dedup_tol.
CayleyBall cayley_ball(const std::vector<std::pair<std::string, Isometry>>& gens,
                       int radius, double dedup_tol = 1e-6);

/// Target of one labelled step, or -1 when it leaves the ball.
int ball_step(const CayleyBall& ball, int vertex, Letter l);

/// Vertex reached by walking a word from `from`, or -1 when the path exits.
int ball_trace(const CayleyBall& ball, const Word& w, int from = 0);

/// Vertex whose matrix matches within dedup_tol, or -1.
int ball_find(const CayleyBall& ball, const Eigen::Matrix3d& m);

/// Graph distances from a source set (-1 for unreachable).
std::vector<int> ball_distances(const CayleyBall& ball, const std::vector<int>& sources);

/// Deterministic breadth-first geodesic, endpoints included.
std::vector<int> ball_geodesic(const CayleyBall& ball, int from, int to);

struct TorsionProfile {
  std::map<int, int> orders;
  int beyond = 0;
  int max_order = 16;
};

/// Orders of the orientation-preserving vertices; elements with no power
/// reaching the identity by max_order are counted in `beyond`.
TorsionProfile torsion_profile(const CayleyBall& ball, int max_order = 16,
                               double tol = 1e-6);

struct SlimnessEstimate {
  double delta = 0.0;
  int samples = 0;
  int used = 0;
  int skipped = 0;
  std::uint64_t seed = 0;
};

/// Max-min side distance over seeded random geodesic triangles.  Triples
/// whose sides touch the ball boundary are skipped and counted.
SlimnessEstimate empirical_slimness(const CayleyBall& ball, int samples,
                                    std::uint64_t seed);

struct QuasiFit {
  double lambda = 0.0;
  double c = 0.0;
  int effective_power = 0;
  Word witness;
  int witness_span = 0;
  int witness_distance = 0;
};

/// Fits grid constants lambda in {0.05k}, c in {0.5k} so every subword u of
/// b^m satisfies lambda * |u| - c <= d(endpoints), preferring larger lambda
/// then smaller c.  The power is lowered automatically if the path exits.
QuasiFit quasigeodesic_fit(const CayleyBall& ball, const Word& b, int max_power);

struct AperiodicityResult {
  bool undecided = false;
  bool witness_found = false;
  Word period;
  int start = -1;
  int path_length = 0;
  int lambda_nbhd = 0;
  int t = 0;
  int period_cap = 0;
};

/// Searches for a non-backtracking walk, labelled by a power of a short
/// period and confined to the Lambda-neighbourhood of a geodesic of g, of
/// length at least t times the period.  Finding one is a periodicity
/// witness; exhausting the caps reports aperiodic at this scale only.
AperiodicityResult aperiodicity_scan(const CayleyBall& ball, const Word& g,
                                     int lambda_nbhd, int t, int period_cap = 2);

}  // namespace grouplab
