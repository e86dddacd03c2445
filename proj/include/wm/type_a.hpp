#pragma once

#include <string>
#include <vector>

#include "wm/polyhedra.hpp"
#include "wm/rational.hpp"

namespace wm {

/// Root data of sl_k in the coordinates of R^k (sum-zero hyperplane).
struct RootSystem {
  int k = 0;
  std::vector<RatVec> positive_roots;  // e_i - e_j, i < j, lexicographic
  std::vector<RatVec> simple_roots;
  std::vector<RatVec> fundamental_weights;
  RatVec delta;
  std::vector<RatVec> omega_tilde;  // e_1 + ... + e_j
};

RootSystem root_system(int k);

/// Weight of sl_k: k rational coordinates summing to zero.
class Weight {
 public:
  Weight() = default;
  static Weight from_coords(RatVec coords);
  /// gl_k coordinates; the mean is subtracted.
  static Weight from_gl(const RatVec& gl);
  /// l_1..l_{k-1} with respect to the fundamental weights.
  static Weight from_fundamental(const RatVec& l);

  int k() const { return static_cast<int>(coords_.size()); }
  const RatVec& coords() const { return coords_; }
  const Rat& operator[](std::size_t i) const { return coords_[i]; }
  RatVec fundamental() const;
  bool is_dominant() const;
  bool is_regular() const;
  /// Shifted so that the minimum coordinate is 0 (coordinates must differ by integers).
  IntVec gl_normalized() const;
  Weight permuted(const std::vector<int>& sigma) const;

  bool operator==(const Weight& o) const { return coords_ == o.coords_; }
  bool operator<(const Weight& o) const { return coords_ < o.coords_; }
  std::string to_string() const;

 private:
  RatVec coords_;
};

/// No nonzero integer vector c with |c_i| <= bound has c·l = 0 (l = fundamental coordinates).
bool avoids_small_relations(const Weight& lambda, int bound = 3);

/// Distinct coordinate permutations, sorted.
std::vector<Weight> weyl_orbit(const Weight& v);

/// Polytope in R^k (lying in the sum-zero hyperplane).
Polytope permutahedron(const Weight& lambda);

struct FacetHyperplane {
  std::vector<int> subset;  // U, 0-based
  bool top = true;
  RatVec normal;  // indicator of U
  Rat offset;     // beta_U = offset
};

/// Candidate hyperplanes beta_U = lambda_1+..+lambda_j (top) or lambda_{k-j+1}+..+lambda_k (bottom), 1 <= j <= k/2,
/// with top(U) and bottom(complement) identified.
std::vector<FacetHyperplane> facet_hyperplane_candidates(const Weight& lambda);
/// The candidates that support a facet of the permutahedron.
std::vector<FacetHyperplane> permutahedron_facets(const Weight& lambda);

/// conv(W . sigma(lambda)) for a two-block parabolic subgroup W = S_U x S_{U^c}.
struct WallFamily {
  std::vector<int> sigma;   // position i carries lambda[sigma[i]]
  std::vector<int> subset;  // U, 0-based, |U| <= k/2
  RatVec normal;            // indicator of U
  Rat offset;               // sum of lambda over sigma(U)
  Polytope polytope;
  bool boundary = false;
};

std::vector<WallFamily> dh_walls(const Weight& lambda);

struct PermutahedronPartition {
  std::vector<Polytope> regions;
  int count = 0;
};

/// Connected components of the permutahedron minus the interior walls. Requires k <= 4 unless `stretch`.
PermutahedronPartition partition_permutahedron(const Weight& lambda, bool stretch = false);

/// "l1,..,l_{k-1},regions" rows.
std::string region_count_csv(const std::vector<Weight>& lambdas, bool stretch = false);

/// Planar drawing of a k = 3 permutahedron with its walls and regions.
std::string permutahedron_svg(const Weight& lambda);

}  // namespace wm
