#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "json.hpp"

#include "wm/multipoly.hpp"
#include "wm/polyhedra.hpp"
#include "wm/rational.hpp"
#include "wm/type_a.hpp"

namespace wm {

/// Positive roots of A_n in simple-root coordinates, ordered by height and then by first index
/// (alpha_1, .., alpha_n, alpha_1+alpha_2, ..).
RatMat kostant_matrix(int n);

/// Number of ways to write v (simple-root coordinates) as a sum of positive roots of A_n.
Int kostant_pf(int n, const IntVec& v);

/// Memoized evaluator; safe to share between threads.
class KostantCounter {
 public:
  explicit KostantCounter(int n);
  int n() const { return n_; }
  Int operator()(const IntVec& v);
  /// v in R^{n+1} with zero sum; 0 unless v lies in the root lattice.
  Int on_weight(const RatVec& v);

 private:
  Int count(std::size_t col, const IntVec& v);
  int n_;
  std::vector<std::vector<int>> supports_;  // each root is alpha_i + .. + alpha_j
  std::map<std::pair<std::size_t, IntVec>, Int> memo_;
  std::mutex mu_;
};

/// Simple-root coordinates of a zero-sum vector of R^{n+1}; nullopt if not integral.
std::optional<IntVec> simple_root_coords(const RatVec& w);

/// Permutations of {0..k-1} in lexicographic order with their signs.
struct SignedPermutation {
  std::vector<int> perm;
  int sign = 1;
};
std::vector<SignedPermutation> signed_permutations(int k);
/// (sigma x)_{sigma(i)} = x_i
RatVec act(const std::vector<int>& sigma, const RatVec& x);

/// sum over sigma of sign(sigma) K(sigma(lambda + delta) - (beta + delta)).
Int multiplicity_kmf(const Weight& lambda, const Weight& beta);
Int multiplicity_kmf(KostantCounter& kpf, const Weight& lambda, const Weight& beta);

/// Chamber complex of the Kostant partition function with one polynomial per cell (variables v1..vn).
/// Labels: cell i has label i + 1, the exterior has label 0 and the zero polynomial.
struct KPFInstance {
  int n = 0;
  RatMat M;
  std::vector<std::vector<int>> bases;
  ComplexOfCones complex;
  std::vector<MultiPoly> polynomials;

  /// Label of the cell whose interior contains v, 0 outside pos(M), -1 on an interior wall.
  int label(const RatVec& v) const;
  const MultiPoly& polynomial(int label) const;
  nlohmann::json to_json() const;

  MultiPoly zero;
};

/// Requires n <= 3 unless `stretch`.
KPFInstance kpf_chamber_complex(int n, bool stretch = false);

/// K evaluated through the chamber polynomials of kpf_chamber_complex(n); n <= 3.
class PiecewiseKostant {
 public:
  explicit PiecewiseKostant(int n);
  int n() const { return kpf_.n; }
  const KPFInstance& instance() const { return kpf_; }
  Int operator()(const IntVec& v) const;
  Int on_weight(const RatVec& v) const;

 private:
  KPFInstance kpf_;
};

Int multiplicity_kmf(const PiecewiseKostant& kpf, const Weight& lambda, const Weight& beta);

/// Primitive facet normals of the maximal cells, sign-normalized (first nonzero entry positive).
/// A normal a acts on simple-root coordinates, so it is the weight with fundamental coordinates a.
std::vector<IntVec> kpf_wall_normals(const KPFInstance& kpf);

/// Volume analog of K: lattice-normalized volume of {x >= 0 : M x = v}, v in simple-root coordinates.
Rat kostant_volume(int n, const RatVec& v);

/// Duistermaat-Heckman density: alternating sum of kostant_volume(sigma(lambda) - beta).
/// Throws DegenerateInput when beta lies on a wall.
Rat dh_density(const Weight& lambda, const Weight& beta);

}  // namespace wm
