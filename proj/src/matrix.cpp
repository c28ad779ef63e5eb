#include "dyndeg/matrix.hpp"

#include <algorithm>
#include <cstdlib>

namespace dyndeg {

RatMatrix to_rational(const IntMatrix &m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

std::vector<std::vector<std::string>> to_strings(const IntMatrix &m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(to_string(m(i, j)));
  return out;
}

std::vector<std::vector<std::string>> to_strings(const RatMatrix &m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(to_string(m(i, j)));
  return out;
}

Int determinant(const IntMatrix &m0) {
  if (!m0.is_square()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = m0.rows();
  if (n == 0) return 1;
  IntMatrix m = m0;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = divexact(Int(m(k, k) * m(i, j) - m(i, k) * m(k, j)), prev);
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

// Row echelon form by Gaussian elimination; returns the pivot columns and
// accumulates the determinant factor of the row operations.
std::vector<std::size_t> echelon(RatMatrix &m, Rat *det_factor = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
      if (det_factor) *det_factor = -*det_factor;
    }
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      const Rat f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

} // namespace

Rat determinant(const RatMatrix &m0) {
  if (!m0.is_square()) throw DimensionMismatch("determinant of non-square matrix");
  RatMatrix m = m0;
  Rat det = 1;
  const auto piv = echelon(m, &det);
  if (piv.size() < m.rows()) return 0;
  for (std::size_t i = 0; i < m.rows(); ++i) det *= m(i, i);
  det.canonicalize();
  return det;
}

std::size_t rank(const RatMatrix &m0) {
  RatMatrix m = m0;
  return echelon(m).size();
}

IntMatrix adjugate(const IntMatrix &m) {
  if (!m.is_square()) throw DimensionMismatch("adjugate of non-square matrix");
  const std::size_t n = m.rows();
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = m(r, c);
        }
        ++mr;
      }
      const Int cof = determinant(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : Int(-cof);
    }
  return adj;
}

RatMatrix inverse(const RatMatrix &m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of non-square matrix");
  auto x = solve(m, RatMatrix::identity(m.rows()));
  if (!x) throw SingularMatrix("matrix is singular");
  return *x;
}

bool entrywise_leq(const IntMatrix &a, const IntMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("shape mismatch");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) > b(i, j)) return false;
  return true;
}

bool is_nonnegative(const IntMatrix &m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) < 0) return false;
  return true;
}

IntMatrix abs_entries(const IntMatrix &m) {
  IntMatrix r = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = abs(m(i, j));
  return r;
}

Int max_row_sum(const IntMatrix &m) {
  Int best = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t p) {
  std::vector<std::vector<std::size_t>> out;
  if (p > n) return out;
  std::vector<std::size_t> cur(p);
  for (std::size_t i = 0; i < p; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = p;
    while (i > 0 && cur[i - 1] == n - p + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < p; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

IntMatrix compound_matrix(const IntMatrix &a, std::size_t p) {
  if (!a.is_square()) throw DimensionMismatch("compound of non-square matrix");
  if (p > a.rows()) throw DimensionMismatch("compound order exceeds matrix size");
  const auto subs = subsets(a.rows(), p);
  IntMatrix c(subs.size(), subs.size());
  for (std::size_t r = 0; r < subs.size(); ++r)
    for (std::size_t s = 0; s < subs.size(); ++s) {
      IntMatrix minor(p, p);
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) minor(i, j) = a(subs[r][i], subs[s][j]);
      c(r, s) = determinant(minor);
    }
  return c;
}

namespace {
template <class T> std::vector<T> faddeev_leverrier(const Matrix<T> &a) {
  if (!a.is_square()) throw DimensionMismatch("characteristic polynomial of non-square matrix");
  const std::size_t n = a.rows();
  // coeffs[i] is the coefficient of x^(n-i).
  std::vector<T> coeffs(n + 1);
  coeffs[0] = 1;
  Matrix<T> m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += coeffs[k - 1];
    const Matrix<T> am = a * m;
    T trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    if constexpr (std::is_same_v<T, Int>) {
      coeffs[k] = -divexact(trace, Int(static_cast<unsigned long>(k)));
    } else {
      coeffs[k] = -trace / T(static_cast<unsigned long>(k));
      coeffs[k].canonicalize();
    }
  }
  return coeffs;
}
} // namespace

std::vector<Int> char_poly_exact(const IntMatrix &m) { return faddeev_leverrier(m); }
std::vector<Rat> char_poly_exact(const RatMatrix &m) { return faddeev_leverrier(m); }

namespace {

void swap_rows(IntMatrix &m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntMatrix &m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row[dst] += f * row[src]
void add_row(IntMatrix &m, std::size_t dst, std::size_t src, const Int &f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}
void add_col(IntMatrix &m, std::size_t dst, std::size_t src, const Int &f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

} // namespace

SmithForm smith_normal_form(const IntMatrix &a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  SmithForm f{a, IntMatrix::identity(rows), IntMatrix::identity(cols), 0};
  IntMatrix &s = f.s;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = t, pj = t;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (s(i, j) != 0 && (!found || abs(s(i, j)) < abs(s(pi, pj)))) {
            found = true;
            pi = i;
            pj = j;
          }
      if (!found) return f;
      swap_rows(s, t, pi);
      swap_rows(f.u, t, pi);
      swap_cols(s, t, pj);
      swap_cols(f.v, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), s(i, t).get_mpz_t(), s(t, t).get_mpz_t());
        add_row(s, i, t, -q);
        add_row(f.u, i, t, -q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), s(t, j).get_mpz_t(), s(t, t).get_mpz_t());
        add_col(s, j, t, -q);
        add_col(f.v, j, t, -q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: pull in any entry the pivot does not divide.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < rows && divides_all; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!divisible(s(i, j), s(t, t))) {
            add_row(s, t, i, 1);
            add_row(f.u, t, i, 1);
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (s(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) s(t, j) = -s(t, j);
      for (std::size_t j = 0; j < rows; ++j) f.u(t, j) = -f.u(t, j);
    }
    ++f.rank;
  }
  return f;
}

IntMatrix column_hermite_form(const IntMatrix &b) {
  IntMatrix h = b;
  const std::size_t rows = h.rows(), cols = h.cols();
  std::size_t c = 0;
  for (std::size_t i = 0; i < rows && c < cols; ++i) {
    // Euclid on row i across columns c..cols-1.
    for (;;) {
      std::size_t best = cols;
      for (std::size_t j = c; j < cols; ++j)
        if (h(i, j) != 0 && (best == cols || abs(h(i, j)) < abs(h(i, best)))) best = j;
      if (best == cols) break;
      swap_cols(h, c, best);
      bool done = true;
      for (std::size_t j = c + 1; j < cols; ++j) {
        if (h(i, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, c).get_mpz_t());
        add_col(h, j, c, -q);
        if (h(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (h(i, c) == 0) continue;
    if (h(i, c) < 0)
      for (std::size_t r = 0; r < rows; ++r) h(r, c) = -h(r, c);
    for (std::size_t j = 0; j < c; ++j) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, c).get_mpz_t());
      if (q != 0) add_col(h, j, c, -q);
    }
    ++c;
  }
  if (c < cols) throw DimensionMismatch("basis matrix does not have full column rank");
  return h;
}

IntMatrix integer_kernel(const IntMatrix &a) {
  const SmithForm f = smith_normal_form(a);
  const std::size_t k = a.cols();
  IntMatrix basis(k, k - f.rank);
  for (std::size_t j = f.rank; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) basis(i, j - f.rank) = f.v(i, j);
  if (basis.cols() == 0) return basis;
  return column_hermite_form(basis);
}

std::optional<RatMatrix> solve(const RatMatrix &a, const RatMatrix &b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("solve: row count mismatch");
  const std::size_t n = a.cols(), m = b.cols();
  RatMatrix aug(a.rows(), n + m);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < m; ++j) aug(i, n + j) = b(i, j);
  }
  const auto piv = echelon(aug);
  std::size_t rank_a = 0;
  for (std::size_t c : piv)
    if (c < n) ++rank_a;
  if (rank_a < n) throw SingularMatrix("solve: coefficient matrix lacks full column rank");
  if (piv.size() > rank_a) return std::nullopt;
  RatMatrix x(n, m);
  for (std::size_t col = 0; col < m; ++col)
    for (std::size_t r = n; r-- > 0;) {
      Rat v = aug(r, n + col);
      for (std::size_t j = r + 1; j < n; ++j) v -= aug(r, j) * x(j, col);
      x(r, col) = v / aug(r, r);
      x(r, col).canonicalize();
    }
  return x;
}

} // namespace dyndeg
