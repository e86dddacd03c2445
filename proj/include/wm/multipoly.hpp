#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "wm/rational.hpp"

namespace wm {

using Exponent = std::vector<int>;

/// Graded-lex: lower total degree first, then larger exponent vector first.
struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Multivariate polynomial with rational coefficients over a fixed variable list.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Rat, GradedLex>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars);

  static MultiPoly constant(const std::vector<std::string>& vars, const Rat& c);
  static MultiPoly variable(const std::vector<std::string>& vars, std::size_t i);
  /// c0 + sum coeffs[i] * x_i
  static MultiPoly linear(const std::vector<std::string>& vars, const RatVec& coeffs, const Rat& c0);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }

  void add_term(const Exponent& e, const Rat& c);
  Rat coefficient(const Exponent& e) const;
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int total_degree() const;
  /// Maximum over terms of the summed exponents of the listed variables.
  int degree_in(const std::vector<int>& var_idx) const;

  Rat eval(const RatVec& x) const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const Rat& c) const;
  MultiPoly pow(int n) const;
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }
  bool operator<(const MultiPoly& o) const;

  /// Replace variable i by images[i]; all images share one variable list.
  MultiPoly substitute(const std::vector<MultiPoly>& images) const;
  /// Fix some variables to values, keeping the variable list.
  MultiPoly partial_eval(const std::vector<std::optional<Rat>>& values) const;

  /// Exact quotient by a polynomial of total degree 1, if it divides.
  std::optional<MultiPoly> divide_linear(const MultiPoly& lin) const;

  std::string to_string() const;
  nlohmann::json to_json() const;
  static MultiPoly from_json(const nlohmann::json& j);

 private:
  std::vector<std::string> vars_;
  TermMap terms_;
};

/// Variable names l1..l_{k-1}, b1..b_{k-1}.
std::vector<std::string> lb_vars(int k);
std::vector<std::string> indexed_vars(const std::string& stem, int n);

struct DegreeBounds {
  std::vector<std::vector<int>> groups;
  std::vector<int> group_max;
  int total_max = -1;
};

struct FitError : std::runtime_error {
  enum class Kind { Underdetermined, Inconsistent };
  Kind kind;
  FitError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

struct Sample {
  RatVec point;
  Rat value;
};

/// All exponents in n variables satisfying the bounds, in graded-lex order.
std::vector<Exponent> monomials_within(std::size_t n, const DegreeBounds& bounds);

/// Unique polynomial within bounds matching every sample; throws FitError.
MultiPoly fit_polynomial(const std::vector<std::string>& vars, const std::vector<Sample>& samples,
                         const DegreeBounds& bounds);

}  // namespace wm
