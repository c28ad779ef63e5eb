#pragma once

#include "dyndeg/arith.hpp"
#include "dyndeg/errors.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dyndeg {

// Dense row-major matrix over an exact ring (Int or Rat).
template <class T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);
  static Matrix from_rows(const std::vector<std::vector<T>> &rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::vector<T> row(std::size_t i) const;
  std::vector<T> col(std::size_t j) const;

  Matrix transpose() const;
  Matrix pow(unsigned n) const;
  bool operator==(const Matrix &) const = default;

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(const Matrix &a, const Matrix &b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }
  friend std::vector<T> operator*(const Matrix &a, const std::vector<T> &v) {
    if (a.cols_ != v.size()) throw DimensionMismatch("matrix-vector shape mismatch");
    std::vector<T> r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rational(const IntMatrix &m);
std::vector<std::vector<std::string>> to_strings(const IntMatrix &m);
std::vector<std::vector<std::string>> to_strings(const RatMatrix &m);

// Fraction-free (Bareiss) determinant.
Int determinant(const IntMatrix &m);
Rat determinant(const RatMatrix &m);
std::size_t rank(const RatMatrix &m);
// Adjugate; adj(A) * A = det(A) * I.
IntMatrix adjugate(const IntMatrix &m);
RatMatrix inverse(const RatMatrix &m);

// Entrywise comparison a <= b.
bool entrywise_leq(const IntMatrix &a, const IntMatrix &b);
bool is_nonnegative(const IntMatrix &m);
IntMatrix abs_entries(const IntMatrix &m);
Int max_row_sum(const IntMatrix &m);

// p-th compound: matrix of p x p minors, row/column subsets in lex order.
// compound(A, 0) = [1].
IntMatrix compound_matrix(const IntMatrix &a, std::size_t p);
// Lex-ordered p-subsets of {0..n-1}.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t p);

// det(xI - M) by Faddeev-LeVerrier, highest degree first ([1, c1, ..., cn]).
std::vector<Int> char_poly_exact(const IntMatrix &m);
std::vector<Rat> char_poly_exact(const RatMatrix &m);

// Smith normal form: u * a * v = s with u, v unimodular and s diagonal with
// nonnegative entries, each dividing the next.
struct SmithForm {
  IntMatrix s, u, v;
  std::size_t rank = 0;
};
SmithForm smith_normal_form(const IntMatrix &a);

// Column-style Hermite normal form of a full-column-rank basis matrix:
// returns b * w with w unimodular, lower echelon, positive pivots, entries
// left of each pivot reduced into [0, pivot).
IntMatrix column_hermite_form(const IntMatrix &b);

// Basis (as columns) of the saturated integer kernel {x in Z^k : a x = 0}.
IntMatrix integer_kernel(const IntMatrix &a);

// Unique solution x of a x = b for a with full column rank, or nullopt if
// inconsistent.
std::optional<RatMatrix> solve(const RatMatrix &a, const RatMatrix &b);

// ---- template definitions -------------------------------------------------

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto &r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

template <class T> Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>> &rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw DimensionMismatch("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

template <class T> Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <class T> std::vector<T> Matrix<T>::row(std::size_t i) const {
  return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
}

template <class T> std::vector<T> Matrix<T>::col(std::size_t j) const {
  std::vector<T> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

template <class T> Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <class T> Matrix<T> Matrix<T>::pow(unsigned n) const {
  if (!is_square()) throw DimensionMismatch("power of non-square matrix");
  Matrix result = identity(rows_), base = *this;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

} // namespace dyndeg
