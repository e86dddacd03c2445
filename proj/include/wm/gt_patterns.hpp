#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wm/polyhedra.hpp"
#include "wm/rational.hpp"
#include "wm/type_a.hpp"

namespace wm {

/// Gelfand-Tsetlin pattern: rows[0] is the top row (length k), rows[m] has length k - m.
struct GTPattern {
  std::vector<IntVec> rows;

  int k() const { return static_cast<int>(rows.size()); }
  bool is_valid() const;
  /// Right-justified triangle, one row per line.
  std::string to_string() const;
  bool operator==(const GTPattern& o) const { return rows == o.rows; }
  bool operator<(const GTPattern& o) const { return rows < o.rows; }
};

/// gl_k representatives of an sl_k pair: both shifted by the same integer so that min(lambda) = 0.
struct GlPair {
  IntVec lambda;
  IntVec beta;
  Rat shift;
};

/// nullopt when lambda - beta is not in the root lattice.
std::optional<GlPair> to_gl_pair(const Weight& lambda, const Weight& beta);

/// All patterns with top row lambda (weakly decreasing integers), in lexicographic order.
std::vector<GTPattern> enumerate_gt_patterns(const IntVec& lambda);

/// beta_m = (sum of row m) - (sum of row m-1), rows counted from the bottom.
IntVec pattern_weight(const GTPattern& p);

/// Number of patterns with top row lambda and weight beta (gl_k coordinates).
Int count_gt(const IntVec& lambda, const IntVec& beta);
Int count_gt(const Weight& lambda, const Weight& beta);

/// Weyl's dimension formula for gl_k.
Int weyl_dimension(const IntVec& lambda);

/// Coordinates are the entries below the top row: row k-1 left to right, then row k-2, ...
Polytope gt_polytope(const IntVec& lambda);
Polytope gt_polytope_slice(const IntVec& lambda, const IntVec& beta);

/// m_lambda(beta) = number of x >= 0 with E x = B (lambda, beta).
/// Columns: s(i,j) = x(i,j) - x(i+1,j+1) for 1 <= j < i <= k-1, then one slack per row.
/// B acts on (lambda_1..lambda_k, beta_1..beta_k) in gl_k coordinates.
struct SPFSystem {
  int k = 0;
  int K = 0;
  int N = 0;
  RatMat E;
  RatMat B;
  std::vector<std::string> column_labels;
  /// Each row is the inequality "upper >= lower" between two diagram entries.
  std::vector<std::string> row_labels;

  RatVec rhs(const IntVec& lambda, const IntVec& beta) const;
  nlohmann::json to_json() const;
};

SPFSystem build_spf_system(int k);

Int multiplicity_spf(const SPFSystem& sys, const IntVec& lambda, const IntVec& beta);
Int multiplicity_spf(const SPFSystem& sys, const Weight& lambda, const Weight& beta);

}  // namespace wm
