#include "wm/linalg.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace wm {

std::vector<int> rref(RatMat& a) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && sgn(a(piv, c)) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    Rat inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      Rat f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

LinearSolution solve_linear(const RatMat& a, const RatVec& b) {
  if (a.rows() != b.size()) throw DimensionError("solve_linear: A has " + std::to_string(a.rows()) +
                                                 " rows but b has " + std::to_string(b.size()) + " entries");
  const std::size_t n = a.cols();
  RatMat aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto pivots = rref(aug);
  LinearSolution sol;
  if (!pivots.empty() && pivots.back() == static_cast<int>(n)) return sol;
  sol.feasible = true;
  sol.particular.assign(n, Rat(0));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    is_pivot[static_cast<std::size_t>(pivots[r])] = true;
    sol.particular[static_cast<std::size_t>(pivots[r])] = aug(r, n);
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVec k(n, Rat(0));
    k[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) k[static_cast<std::size_t>(pivots[r])] = -aug(r, f);
    sol.kernel.push_back(std::move(k));
  }
  return sol;
}

std::vector<RatVec> kernel_basis(const RatMat& a) {
  return solve_linear(a, RatVec(a.rows(), Rat(0))).kernel;
}

namespace {

std::vector<IntVec> integer_rows(const RatMat& a) {
  std::vector<IntVec> m(a.rows(), IntVec(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Rat t = a(i, j) * l;
      m[i][j] = t.get_num();
    }
  }
  return m;
}

}  // namespace

Int bareiss_determinant(std::vector<IntVec> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

int bareiss_rank(std::vector<IntVec> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Int t = m[i][j] * m[r][c] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

Rat determinant(const RatMat& a) {
  if (a.rows() != a.cols()) throw DimensionError("determinant of a non-square matrix");
  auto m = integer_rows(a);
  Int det = bareiss_determinant(m);
  Rat scale = 1;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    scale *= Rat(l);
  }
  Rat out(det);
  return out / scale;
}

int rank(const RatMat& a) { return bareiss_rank(integer_rows(a)); }

std::optional<RatMat> inverse(const RatMat& a) {
  if (a.rows() != a.cols()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  RatMat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != static_cast<int>(n - 1)) return std::nullopt;
  RatMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<IntVec> integer_kernel_basis(const std::vector<IntVec>& a, std::size_t n) {
  std::vector<IntVec> m = a;
  // columns of u are tracked as rows of ut for cheap swaps
  std::vector<IntVec> ut(n, IntVec(n, Int(0)));
  for (std::size_t i = 0; i < n; ++i) ut[i][i] = 1;
  auto col_swap = [&](std::size_t p, std::size_t q) {
    for (auto& row : m) std::swap(row[p], row[q]);
    std::swap(ut[p], ut[q]);
  };
  std::size_t p = 0;
  for (std::size_t i = 0; i < m.size() && p < n; ++i) {
    for (std::size_t j = p + 1; j < n; ++j) {
      if (m[i][j] == 0) continue;
      if (m[i][p] == 0) {
        col_swap(p, j);
        continue;
      }
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m[i][p].get_mpz_t(), m[i][j].get_mpz_t());
      Int ap = m[i][p] / g;
      Int bj = m[i][j] / g;
      for (auto& row : m) {
        Int x = row[p], y = row[j];
        row[p] = s * x + t * y;
        row[j] = -bj * x + ap * y;
      }
      for (std::size_t r = 0; r < n; ++r) {
        Int x = ut[p][r], y = ut[j][r];
        ut[p][r] = s * x + t * y;
        ut[j][r] = -bj * x + ap * y;
      }
    }
    if (m[i][p] != 0) ++p;
  }
  return std::vector<IntVec>(ut.begin() + static_cast<long>(p), ut.end());
}

namespace {

std::vector<IntVec> exact_integer_rows(const RatMat& a) {
  std::vector<IntVec> rows(a.rows(), IntVec(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!is_integral(a(i, j))) throw std::invalid_argument("expected an integer matrix");
      rows[i][j] = a(i, j).get_num();
    }
  return rows;
}

template <class F>
void for_each_maximal_minor(const RatMat& a, F&& f) {
  const int d = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  auto rows = exact_integer_rows(a);
  if (d > n) return;
  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<IntVec> m(d, IntVec(d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m[i][j] = rows[i][idx[j]];
    if (!f(idx, bareiss_determinant(m))) return;
    int i = d - 1;
    while (i >= 0 && idx[i] == n - d + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<std::vector<int>> enumerate_bases(const RatMat& a) {
  if (rank(a) != static_cast<int>(a.rows())) throw DimensionError("enumerate_bases: matrix must have full row rank");
  std::vector<std::vector<int>> out;
  for_each_maximal_minor(a, [&](const std::vector<int>& idx, const Int& det) {
    if (det != 0) out.push_back(idx);
    return true;
  });
  return out;
}

bool is_unimodular(const RatMat& a) {
  if (rank(a) != static_cast<int>(a.rows())) return false;
  bool ok = true;
  for_each_maximal_minor(a, [&](const std::vector<int>&, const Int& det) {
    if (det != 0 && abs(det) != 1) ok = false;
    return ok;
  });
  return ok;
}

}  // namespace wm
