#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "wm/kostant.hpp"
#include "wm/mult_complex.hpp"
#include "wm/multipoly.hpp"
#include "wm/rational.hpp"
#include "wm/type_a.hpp"

namespace wm {

/// sum over v in V of delta_v minus sum over w in W of delta_w (0-based indices).
Rat delta_shift(const std::vector<int>& V, const std::vector<int>& W, int k);

/// beta_U = lambda_V + shift, with |U| = |V| <= k/2 (0-based, sorted).
/// When |U| = k/2 the representative with 0 in U is kept (complements give the same hyperplane).
struct AffineHyperplane {
  int k = 0;
  std::vector<int> U;
  std::vector<int> V;
  Rat shift;

  int j() const { return static_cast<int>(U.size()); }
  Rat offset(const Weight& lambda) const;
  /// beta_U - lambda_V - shift
  Rat evaluate(const Weight& lambda, const Weight& beta) const;
  /// gamma_{U,V} = beta_U - lambda_V over lb_vars(k).
  MultiPoly gamma() const;
  /// gamma_{U,V}(lambda): the l variables replaced by the coordinates of lambda.
  MultiPoly gamma_at(const Weight& lambda) const;
  std::string to_string() const;
  nlohmann::json to_json() const;

  bool operator==(const AffineHyperplane& o) const { return U == o.U && V == o.V && shift == o.shift; }
  bool operator<(const AffineHyperplane& o) const;
};

AffineHyperplane make_hyperplane(int k, std::vector<int> U, std::vector<int> V, const std::vector<int>& W);

enum class ArrangementScope {
  /// Union over all psi: every U, V, W.
  AllPsi,
  /// Walls met by sigma(lambda + delta) - (psi(beta) + delta) only: U = psi^{-1}(W).
  SinglePsi,
};

/// Hyperplanes of the Kostant arrangement for lambda, deduplicated and sorted.
std::vector<AffineHyperplane> kostant_arrangement(const Weight& lambda, const std::vector<int>& psi,
                                                  ArrangementScope scope = ArrangementScope::AllPsi);

/// Normals <., theta(omega~_j)> written on simple-root coordinates, sign-normalized.
std::vector<IntVec> kostant_arrangement_normals(int k);

struct NonGenericPoint : DegenerateInput {
  NonGenericPoint(const std::vector<int>& sigma, const std::string& what) : DegenerateInput(what), sigma(sigma) {}
  std::vector<int> sigma;
};

struct TypeVector {
  std::vector<int> psi;
  std::vector<std::vector<int>> sigmas;  // lexicographic order
  std::vector<int> labels;               // KPFInstance labels, 0 outside

  bool operator==(const TypeVector& o) const { return psi == o.psi && labels == o.labels; }
  nlohmann::json to_json() const;
};

/// Labels of sigma(lambda + delta) - (psi(beta) + delta); throws NonGenericPoint on a wall.
TypeVector type_vector(const Weight& lambda, const Weight& beta, const std::vector<int>& psi, const KPFInstance& kpf);

struct PiecewiseValue {
  TypeVector type;
  Rat value;
  /// The same sum with lambda and beta symbolic (lb_vars(k)) for the fixed type.
  MultiPoly polynomial;
};

PiecewiseValue piecewise_multiplicity(const Weight& lambda, const Weight& beta, const std::vector<int>& psi,
                                      const KPFInstance& kpf);

/// Factors gamma -/+ c for c = 1 .. j(k-j)-1 on a region facet lying on the permutahedron boundary.
/// The family vanishing outside the permutahedron is gamma - c on top facets and gamma + c on bottom facets.
struct BoundaryFactorReport {
  int cell = -1;
  AffineHyperplane facet;  // shift 0
  bool top = true;
  std::vector<int> offsets;            // c with gamma + c tested
  std::vector<bool> divides;           // for the region polynomial
  std::vector<bool> lifted_divides;    // for the cell polynomial in (l, b)
  std::vector<bool> opposite_divides;  // the family of the other side, for the record
  MultiPoly polynomial;

  bool ok() const;
  nlohmann::json to_json() const;
};

/// All facets of `region` on the permutahedron boundary. Throws if there are none.
std::vector<BoundaryFactorReport> check_boundary_factors(const MultComplex& glued, const Weight& lambda,
                                                         const SliceRegion& region);
/// Every region of slice_for_lambda with a boundary facet.
std::vector<BoundaryFactorReport> check_boundary_factors(const MultComplex& glued, const Weight& lambda);

struct JumpReport {
  int k = 0;
  int j = 0;
  bool zero = false;
  /// All (s-, s+) with s- + s+ = j(k-j) such that gamma + c divides the jump for -s- < c < s+.
  std::vector<std::pair<int, int>> windows;
  /// The pair read off the wall: s+ = max shift(V, W), s- = -min shift(V, W).
  std::pair<int, int> predicted{0, 0};
  /// Number of consecutive c around 0 with gamma + c dividing the jump.
  int longest_run = 0;
  MultiPoly jump;
  std::string wall;

  bool ok() const { return zero || !windows.empty(); }
  nlohmann::json to_json() const;
};

/// p1 and p2 share the variable list of gamma; `wall` supplies j and the predicted window.
JumpReport check_jump_factors(const MultiPoly& p1, const MultiPoly& p2, const MultiPoly& gamma,
                              const AffineHyperplane& wall);
JumpReport check_jump_factors(const MultiPoly& p1, const MultiPoly& p2, const AffineHyperplane& wall);

struct CellJump {
  int a = -1, b = -1;
  JumpReport report;
};
/// Jumps across every interior facet shared by two cells of the glued complex, in (l, b).
std::vector<CellJump> check_complex_jumps(const MultComplex& glued);

struct RegionJump {
  int a = -1, b = -1;  // indices into slice_for_lambda
  JumpReport report;
};
/// Jumps between adjacent full-dimensional regions of the slice for lambda, with lambda substituted.
std::vector<RegionJump> check_slice_jumps(const MultComplex& glued, const Weight& lambda);

/// The wall beta_U = lambda_V (shift 0) with gamma_{U,V} proportional to the (l, b) normal, if any.
std::optional<AffineHyperplane> wall_for_normal(int k, const IntVec& normal);

}  // namespace wm
