#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "wm/rational.hpp"

namespace wm {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Result of solve_linear: x = particular + span(kernel), or infeasible.
struct LinearSolution {
  bool feasible = false;
  RatVec particular;
  std::vector<RatVec> kernel;
};

LinearSolution solve_linear(const RatMat& a, const RatVec& b);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RatMat& a);

Rat determinant(const RatMat& a);
int rank(const RatMat& a);
std::vector<RatVec> kernel_basis(const RatMat& a);
std::optional<RatMat> inverse(const RatMat& a);

/// Fraction-free determinant of an integer matrix given row-wise.
Int bareiss_determinant(std::vector<IntVec> m);
/// Rank by fraction-free elimination.
int bareiss_rank(std::vector<IntVec> m);

/// Basis of the saturated lattice ker(a) ∩ Z^n, a integral.
std::vector<IntVec> integer_kernel_basis(const std::vector<IntVec>& a, std::size_t n);

/// Column index sets of size rank(a) whose columns are linearly independent (a of full row rank), lexicographic.
std::vector<std::vector<int>> enumerate_bases(const RatMat& a);
/// Full row rank integer matrix whose nonsingular maximal minors are all ±1.
bool is_unimodular(const RatMat& a);

}  // namespace wm
