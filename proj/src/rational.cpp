#include "wm/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace wm {

Rat make_rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '(' && c != ')') s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    Rat r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

RatVec parse_rat_list(const std::string& text) {
  RatVec out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rat(item));
  return out;
}

std::string to_string(const Rat& r) { return r.get_str(); }

std::string to_string(const RatVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

RatVec to_rat(const IntVec& v) {
  RatVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

RatVec to_rat(const std::vector<long>& v) {
  RatVec out;
  out.reserve(v.size());
  for (long x : v) out.emplace_back(x);
  return out;
}

bool is_integral(const Rat& r) { return r.get_den() == 1; }

bool is_integral(const RatVec& v) {
  for (const auto& x : v)
    if (!is_integral(x)) return false;
  return true;
}

bool is_zero(const RatVec& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVec add(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("add: size mismatch");
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sub: size mismatch");
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVec scale(const RatVec& a, const Rat& s) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

Int content(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) {
    Int ax = abs(x);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ax.get_mpz_t());
  }
  return g;
}

IntVec primitive(const IntVec& v) {
  Int g = content(v);
  IntVec out(v);
  if (g == 0 || g == 1) return out;
  for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

IntVec primitive(const RatVec& v) {
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat t = v[i] * l;
    out[i] = t.get_num();
  }
  return primitive(out);
}

RatMat::RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMat::RatMat(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

RatMat RatMat::identity(std::size_t n) {
  RatMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMat RatMat::from_rows(const std::vector<RatVec>& rows) {
  if (rows.empty()) return RatMat();
  RatMat m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw std::invalid_argument("from_rows: ragged input");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RatMat RatMat::from_cols(const std::vector<RatVec>& cols) { return from_rows(cols).transpose(); }

RatVec RatMat::row(std::size_t i) const {
  return RatVec(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_));
}

RatVec RatMat::col(std::size_t j) const {
  RatVec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

RatMat RatMat::transpose() const {
  RatMat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMat RatMat::select_cols(const std::vector<int>& idx) const {
  RatMat m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, static_cast<std::size_t>(idx[j]));
  return m;
}

RatMat RatMat::select_rows(const std::vector<int>& idx) const {
  RatMat m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(static_cast<std::size_t>(idx[i]), j);
  return m;
}

RatMat RatMat::operator*(const RatMat& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  RatMat m(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) m(i, j) += a * other(k, j);
    }
  return m;
}

RatVec RatMat::operator*(const RatVec& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
  RatVec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

bool RatMat::operator==(const RatMat& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

std::string RatMat::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < rows_; ++i) {
    s += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += " ";
      s += (*this)(i, j).get_str();
    }
    s += "]\n";
  }
  return s;
}

}  // namespace wm
