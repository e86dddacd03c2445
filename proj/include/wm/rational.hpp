#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace wm {

using Int = mpz_class;
using Rat = mpq_class;
using RatVec = std::vector<Rat>;
using IntVec = std::vector<Int>;

Rat make_rat(long num, long den = 1);
Rat parse_rat(const std::string& text);
RatVec parse_rat_list(const std::string& text);
std::string to_string(const Rat& r);
std::string to_string(const RatVec& v);

RatVec to_rat(const IntVec& v);
RatVec to_rat(const std::vector<long>& v);
bool is_integral(const Rat& r);
bool is_integral(const RatVec& v);
bool is_zero(const RatVec& v);

Rat dot(const RatVec& a, const RatVec& b);
RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const RatVec& a, const Rat& s);

/// Smallest positive integer multiple of v with coprime entries (zero stays zero).
IntVec primitive(const RatVec& v);
IntVec primitive(const IntVec& v);
Int content(const IntVec& v);
Int dot(const IntVec& a, const IntVec& b);

/// Dense row-major rational matrix.
class RatMat {
 public:
  RatMat() = default;
  RatMat(std::size_t rows, std::size_t cols);
  RatMat(std::initializer_list<std::initializer_list<long>> rows);
  static RatMat identity(std::size_t n);
  static RatMat from_rows(const std::vector<RatVec>& rows);
  static RatMat from_cols(const std::vector<RatVec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVec row(std::size_t i) const;
  RatVec col(std::size_t j) const;
  RatMat transpose() const;
  RatMat select_cols(const std::vector<int>& idx) const;
  RatMat select_rows(const std::vector<int>& idx) const;
  RatMat operator*(const RatMat& other) const;
  RatVec operator*(const RatVec& v) const;
  bool operator==(const RatMat& other) const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

}  // namespace wm
