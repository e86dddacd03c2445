#include "wm/gt_patterns.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wm {

namespace {

Int sum_of(const IntVec& v) {
  Int s = 0;
  for (const auto& x : v) s += x;
  return s;
}

void require_decreasing(const IntVec& lambda, const char* who) {
  if (lambda.empty()) throw std::invalid_argument(std::string(who) + ": empty top row");
  for (std::size_t i = 0; i + 1 < lambda.size(); ++i)
    if (lambda[i] < lambda[i + 1]) throw std::invalid_argument(std::string(who) + ": top row must be weakly decreasing");
}

/// All rows interlacing `row` (one shorter); when `target` is set only those with that sum.
void interlacing_rows(const IntVec& row, const std::optional<Int>& target, const std::function<void(const IntVec&)>& emit) {
  const std::size_t n = row.size() - 1;
  IntVec cur(n);
  // remaining sums available from position j on
  IntVec lo_rest(n + 1, Int(0)), hi_rest(n + 1, Int(0));
  for (std::size_t j = n; j-- > 0;) {
    lo_rest[j] = lo_rest[j + 1] + row[j + 1];
    hi_rest[j] = hi_rest[j + 1] + row[j];
  }
  std::function<void(std::size_t, Int)> rec = [&](std::size_t j, Int acc) {
    if (j == n) {
      if (!target || acc == *target) emit(cur);
      return;
    }
    Int lo = row[j + 1], hi = row[j];
    if (target) {
      Int need = *target - acc;
      lo = std::max(lo, Int(need - hi_rest[j + 1]));
      hi = std::min(hi, Int(need - lo_rest[j + 1]));
    }
    for (Int x = lo; x <= hi; ++x) {
      cur[j] = x;
      rec(j + 1, acc + x);
    }
  };
  rec(0, Int(0));
}

long to_long_checked(const Rat& r) {
  if (!is_integral(r) || !r.get_num().fits_slong_p()) throw std::logic_error("expected a small integer");
  return r.get_num().get_si();
}

}  // namespace

bool GTPattern::is_valid() const {
  const int n = k();
  for (int m = 0; m < n; ++m)
    if (static_cast<int>(rows[m].size()) != n - m) return false;
  for (int m = 0; m + 1 < n; ++m)
    for (std::size_t j = 0; j < rows[m + 1].size(); ++j)
      if (rows[m][j] < rows[m + 1][j] || rows[m + 1][j] < rows[m][j + 1]) return false;
  return true;
}

std::string GTPattern::to_string() const {
  std::size_t w = 1;
  for (const auto& r : rows)
    for (const auto& x : r) w = std::max(w, x.get_str().size());
  const std::size_t cell = w + 1;
  std::ostringstream os;
  for (int m = 0; m < k(); ++m) {
    os << std::string(m * cell / 2, ' ');
    for (std::size_t j = 0; j < rows[m].size(); ++j) {
      std::string s = rows[m][j].get_str();
      os << std::string(cell - s.size(), ' ') << s;
    }
    os << '\n';
  }
  return os.str();
}

std::optional<GlPair> to_gl_pair(const Weight& lambda, const Weight& beta) {
  if (lambda.k() != beta.k()) throw std::invalid_argument("to_gl_pair: rank mismatch");
  if (!is_integral(sub(lambda.coords(), beta.coords()))) return std::nullopt;
  Rat shift = -*std::min_element(lambda.coords().begin(), lambda.coords().end());
  GlPair out;
  out.shift = shift;
  for (int i = 0; i < lambda.k(); ++i) {
    Rat a = lambda[i] + shift, b = beta[i] + shift;
    if (!is_integral(a)) throw std::invalid_argument("to_gl_pair: lambda is not an integral weight");
    out.lambda.push_back(a.get_num());
    out.beta.push_back(b.get_num());
  }
  return out;
}

std::vector<GTPattern> enumerate_gt_patterns(const IntVec& lambda) {
  require_decreasing(lambda, "enumerate_gt_patterns");
  std::vector<GTPattern> out;
  std::vector<IntVec> rows{lambda};
  std::function<void()> rec = [&]() {
    if (rows.back().size() == 1) {
      out.push_back(GTPattern{rows});
      return;
    }
    IntVec top = rows.back();
    interlacing_rows(top, std::nullopt, [&](const IntVec& r) {
      rows.push_back(r);
      rec();
      rows.pop_back();
    });
  };
  rec();
  std::sort(out.begin(), out.end());
  return out;
}

IntVec pattern_weight(const GTPattern& p) {
  const int k = p.k();
  IntVec beta(k);
  Int below = 0;
  for (int m = 1; m <= k; ++m) {
    Int s = sum_of(p.rows[k - m]);
    beta[m - 1] = s - below;
    below = s;
  }
  return beta;
}

Int count_gt(const IntVec& lambda, const IntVec& beta) {
  require_decreasing(lambda, "count_gt");
  if (beta.size() != lambda.size()) throw std::invalid_argument("count_gt: size mismatch");
  const std::size_t k = lambda.size();
  IntVec partial(k + 1, Int(0));
  for (std::size_t m = 0; m < k; ++m) partial[m + 1] = partial[m] + beta[m];
  if (partial[k] != sum_of(lambda)) return 0;
  std::map<IntVec, Int> memo;
  std::function<Int(const IntVec&)> count = [&](const IntVec& row) -> Int {
    if (row.size() == 1) return 1;
    auto it = memo.find(row);
    if (it != memo.end()) return it->second;
    Int total = 0;
    interlacing_rows(row, partial[row.size() - 1], [&](const IntVec& r) { total += count(r); });
    memo.emplace(row, total);
    return total;
  };
  return count(lambda);
}

Int count_gt(const Weight& lambda, const Weight& beta) {
  if (!lambda.is_dominant()) throw std::invalid_argument("count_gt: lambda must be dominant");
  auto gl = to_gl_pair(lambda, beta);
  if (!gl) return 0;
  return count_gt(gl->lambda, gl->beta);
}

Int weyl_dimension(const IntVec& lambda) {
  require_decreasing(lambda, "weyl_dimension");
  Rat d = 1;
  const int k = static_cast<int>(lambda.size());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) d *= Rat(lambda[i] - lambda[j] + (j - i)) / Rat(j - i);
  return d.get_num();
}

namespace {

/// Entries below the top row indexed (m, j) with m = 1..k-1 the row index from the top.
struct GTCoordinates {
  int k;
  int dim;
  std::vector<std::vector<int>> index;

  explicit GTCoordinates(int k_) : k(k_), dim(0), index(k_) {
    for (int m = 1; m < k; ++m)
      for (int j = 0; j < k - m; ++j) index[m].push_back(dim++);
  }
};

Polytope gt_polytope_impl(const IntVec& lambda, const IntVec* beta) {
  require_decreasing(lambda, "gt_polytope");
  const int k = static_cast<int>(lambda.size());
  if (k < 2) throw std::invalid_argument("gt_polytope: k must be at least 2");
  GTCoordinates c(k);
  std::vector<Polyhedron::Halfspace> le, eq;
  auto unit = [&](int idx, long s) {
    RatVec v(c.dim, Rat(0));
    v[idx] = s;
    return v;
  };
  for (int m = 1; m < k; ++m)
    for (int j = 0; j < k - m; ++j) {
      int x = c.index[m][j];
      if (m == 1) {
        le.push_back({unit(x, 1), Rat(lambda[j])});
        le.push_back({unit(x, -1), Rat(-lambda[j + 1])});
      } else {
        RatVec a = unit(x, 1);
        a[c.index[m - 1][j]] -= 1;
        le.push_back({a, Rat(0)});
        RatVec b = unit(x, -1);
        b[c.index[m - 1][j + 1]] += 1;
        le.push_back({b, Rat(0)});
      }
    }
  if (beta) {
    if (static_cast<int>(beta->size()) != k) throw std::invalid_argument("gt_polytope_slice: size mismatch");
    std::vector<Int> prefix(k + 1, Int(0));
    for (int m = 0; m < k; ++m) prefix[m + 1] = prefix[m] + (*beta)[m];
    for (int m = 1; m < k; ++m) {
      RatVec a(c.dim, Rat(0));
      for (int idx : c.index[m]) a[idx] = 1;
      eq.push_back({a, Rat(prefix[k - m])});
    }
    if (prefix[k] != sum_of(lambda)) {
      // inconsistent total: empty slice
      RatVec a(c.dim, Rat(0));
      eq.push_back({a, Rat(1)});
    }
  }
  return polytope_from_halfspaces(c.dim, le, eq);
}

}  // namespace

Polytope gt_polytope(const IntVec& lambda) { return gt_polytope_impl(lambda, nullptr); }

Polytope gt_polytope_slice(const IntVec& lambda, const IntVec& beta) { return gt_polytope_impl(lambda, &beta); }

SPFSystem build_spf_system(int k) {
  if (k < 2) throw std::invalid_argument("build_spf_system: k must be at least 2");
  SPFSystem sys;
  sys.k = k;
  sys.K = (k - 1) * (k - 2) / 2;
  sys.N = (k - 1) * (k + 2) / 2;
  const int K = sys.K;
  const int width = K + 2 * k;  // s, lambda, beta
  using Form = std::vector<long>;
  // expr[i][j]: entry lambda^{(i)}_j (1-based) as an affine form
  std::vector<std::vector<Form>> expr(k + 1);
  std::vector<std::vector<std::string>> name(k + 1);
  expr[k].assign(k + 1, Form(width, 0));
  name[k].resize(k + 1);
  for (int j = 1; j <= k; ++j) {
    expr[k][j][K + j - 1] = 1;
    name[k][j] = "lambda" + std::to_string(j);
  }
  int col = 0;
  for (int i = k - 1; i >= 1; --i) {
    expr[i].assign(i + 1, Form(width, 0));
    name[i].resize(i + 1);
    for (int j = 1; j <= i; ++j) name[i][j] = "x(" + std::to_string(i) + "," + std::to_string(j) + ")";
    for (int j = 1; j < i; ++j) {
      expr[i][j] = expr[i + 1][j + 1];
      expr[i][j][col] += 1;
      sys.column_labels.push_back("s(" + std::to_string(i) + "," + std::to_string(j) + ")");
      ++col;
    }
    Form& last = expr[i][i];
    for (int m = 1; m <= i; ++m) last[K + k + m - 1] += 1;
    for (int j = 1; j < i; ++j)
      for (int t = 0; t < width; ++t) last[t] -= expr[i][j][t];
  }
  std::vector<Form> a_rows, b_rows;
  auto add = [&](const Form& upper, const Form& lower, const std::string& label) {
    Form d(width);
    for (int t = 0; t < width; ++t) d[t] = upper[t] - lower[t];
    bool pure = true;
    int ones = 0;
    for (int t = 0; t < width; ++t) {
      if (t < K) {
        if (d[t] == 1) ++ones;
        else if (d[t] != 0) pure = false;
      } else if (d[t] != 0) {
        pure = false;
      }
    }
    if (pure && ones == 1) return;
    Form a(K), b(2 * k);
    for (int t = 0; t < K; ++t) a[t] = -d[t];
    for (int t = 0; t < 2 * k; ++t) b[t] = d[K + t];
    a_rows.push_back(a);
    b_rows.push_back(b);
    sys.row_labels.push_back(label);
  };
  for (int i = k - 1; i >= 1; --i)
    for (int j = 1; j <= i; ++j) {
      add(expr[i][j], expr[i + 1][j + 1], name[i][j] + " >= " + name[i + 1][j + 1]);
      add(expr[i + 1][j], expr[i][j], name[i + 1][j] + " >= " + name[i][j]);
    }
  if (static_cast<int>(a_rows.size()) != sys.N) throw std::logic_error("build_spf_system: unexpected row count");
  sys.E = RatMat(sys.N, K + sys.N);
  sys.B = RatMat(sys.N, 2 * k);
  for (int m = 0; m < sys.N; ++m) {
    for (int t = 0; t < K; ++t) sys.E(m, t) = a_rows[m][t];
    sys.E(m, K + m) = 1;
    for (int t = 0; t < 2 * k; ++t) sys.B(m, t) = b_rows[m][t];
    sys.column_labels.push_back("slack(" + std::to_string(m + 1) + ")");
  }
  return sys;
}

RatVec SPFSystem::rhs(const IntVec& lambda, const IntVec& beta) const {
  if (static_cast<int>(lambda.size()) != k || static_cast<int>(beta.size()) != k)
    throw std::invalid_argument("SPFSystem::rhs: size mismatch");
  RatVec v = to_rat(lambda);
  for (const auto& b : beta) v.push_back(Rat(b));
  return B * v;
}

nlohmann::json SPFSystem::to_json() const {
  auto mat = [](const RatMat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      nlohmann::json r = nlohmann::json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_long_checked(m(i, j)));
      rows.push_back(r);
    }
    return rows;
  };
  return {{"k", k},         {"K", K},
          {"N", N},         {"E", mat(E)},
          {"B", mat(B)},    {"columns", column_labels},
          {"rows", row_labels}};
}

Int multiplicity_spf(const SPFSystem& sys, const IntVec& lambda, const IntVec& beta) {
  require_decreasing(lambda, "multiplicity_spf");
  if (sum_of(lambda) != sum_of(beta)) return 0;
  RatVec b = sys.rhs(lambda, beta);
  if (!is_integral(b)) throw std::logic_error("multiplicity_spf: non-integral right-hand side");
  const int K = sys.K;
  if (K == 0) {
    for (const auto& x : b)
      if (x < 0) return 0;
    return 1;
  }
  // slack columns are determined by s: count s >= 0 with A s <= b
  std::vector<Polyhedron::Halfspace> le;
  for (int t = 0; t < K; ++t) {
    RatVec a(K, Rat(0));
    a[t] = -1;
    le.push_back({a, Rat(0)});
  }
  for (int m = 0; m < sys.N; ++m) {
    RatVec a(K);
    for (int t = 0; t < K; ++t) a[t] = sys.E(m, t);
    le.push_back({a, b[m]});
  }
  auto p = polytope_from_halfspaces(K, le);
  if (p.empty()) return 0;
  return static_cast<long>(lattice_points(p).size());
}

Int multiplicity_spf(const SPFSystem& sys, const Weight& lambda, const Weight& beta) {
  if (!lambda.is_dominant()) throw std::invalid_argument("multiplicity_spf: lambda must be dominant");
  auto gl = to_gl_pair(lambda, beta);
  if (!gl) return 0;
  return multiplicity_spf(sys, gl->lambda, gl->beta);
}

}  // namespace wm
