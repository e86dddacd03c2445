#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wm/multipoly.hpp"
#include "wm/polyhedra.hpp"
#include "wm/rational.hpp"
#include "wm/type_a.hpp"

namespace wm {

/// Cones live in (l, b) coordinates: lambda = sum l_i omega_i, beta = sum b_i omega_i (R^{2k-2}).
/// lb_to_lambda_beta maps them to the zero-sum (lambda, beta) coordinates of R^{2k}.
RatMat lb_to_lambda_beta(int k);
RatMat lambda_beta_to_lb(int k);
/// (lambda, beta) -> (l, b)
RatVec to_lb(const Weight& lambda, const Weight& beta);
/// Primitive ray in zero-sum (lambda, beta) coordinates.
IntVec ray_lambda_beta(int k, const IntVec& lb_ray);
/// Linear action of sigma on the beta block.
RatMat beta_permutation_matrix(int k, const std::vector<int>& sigma);

struct MultComplex {
  int k = 0;
  bool glued = false;
  int bases = 0;
  int restricted_cones = 0;
  ComplexOfCones cells;
  std::vector<MultiPoly> polynomials;  // variables lb_vars(k)
  std::vector<int> orbit;              // orbit index per cell under S_k acting on beta
  int orbit_count = 0;
  bool symmetric = false;  // every image of a cell under the beta action is a cell

  /// Closed cells containing the point (l, b).
  std::vector<int> locate(const RatVec& lb) const;
  nlohmann::json to_json() const;
  static MultComplex from_json(const nlohmann::json& j);
};

/// Distinct nonzero pullbacks of the base cones of E_k to (l, b) space (some are lower-dimensional).
std::vector<Cone> restricted_base_cones(int k, int* bases = nullptr);

/// Raw complex: common refinement of the full-dimensional restricted base cones (k in {2, 3, 4}).
MultComplex restricted_chamber_complex(int k);

/// Multiplicity m_lambda(beta) for integral (l, b); 0 off the lattice.
Int multiplicity_lb(int k, const IntVec& lb);

/// Fit one polynomial per cell on interior lattice points and verify on held-out points.
void assign_polynomials(MultComplex& mc);

/// Orbits of the cells under S_k acting on beta; sets orbit, orbit_count and symmetric.
void compute_orbits(MultComplex& mc);

/// Merge cells with equal polynomials, certifying each union by truncated volume (lambda_1 <= 1).
MultComplex glue_by_polynomial(const MultComplex& mc);

/// Cached builders (directory from WM_CACHE_DIR, default ".wm_cache"); glued implies polynomials.
MultComplex load_or_build(int k, bool glued, bool use_cache = true);

struct LambdaComplex {
  int k = 0;
  ComplexOfCones cells;                // l coordinates
  std::vector<std::vector<int>> present;  // multiplicity-complex cells over each lambda cell
  /// Distinct projected cones, and distinct sets of projected generators (redundant rays kept).
  int distinct_projections = 0;
  int distinct_generator_sets = 0;
  /// Orbits under lambda -> -lambda^rev (l reversed).
  int symmetry_classes = 0;

  nlohmann::json to_json() const;
};

LambdaComplex lambda_complex(const MultComplex& mc);

/// Cross-section of the k = 4 lambda complex through z = 1 after the isometry T_4.
std::string lambda_complex_svg(const LambdaComplex& lc);

struct SliceRegion {
  int cell = -1;
  Polytope region;  // beta coordinates in R^k
  MultiPoly polynomial;  // lb_vars(k) with the l variables fixed
};

/// Full-dimensional cells cut by L(lambda).
std::vector<SliceRegion> slice_for_lambda(const MultComplex& mc, const Weight& lambda);

/// Value of the polynomial of a region at beta.
Rat evaluate_at_beta(const SliceRegion& r, const Weight& lambda, const Weight& beta);

struct DerivedWall {
  IntVec normal;  // primitive, (l, b) coordinates
  bool involves_beta = false;
  /// Permutations tau (one-line, 0-based) with vertex tau(lambda) for generic lambda.
  std::vector<std::vector<int>> vertex_permutations;

  std::vector<RatVec> vertices(const Weight& lambda) const;
};

struct WallDerivation {
  int normal_directions = 0;
  std::vector<DerivedWall> walls;
};

/// Walls of the partitioned permutahedron read off the facets of the glued complex.
WallDerivation derive_walls(const MultComplex& glued);

/// The beta walls of the derivation have the vertex sets of dh_walls(lambda).
bool reproduces_dh_walls(const WallDerivation& wd, const Weight& lambda);

/// m_{t lambda}(t beta) for t = 1..t_max fitted by a polynomial in t of degree <= 2 C(k-1, 2).
MultiPoly scaling_polynomial(const Weight& lambda, const Weight& beta, int t_max);

}  // namespace wm
