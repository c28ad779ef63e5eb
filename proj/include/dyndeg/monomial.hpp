#pragma once

#include "dyndeg/polycore.hpp"
#include "dyndeg/roots.hpp"

#include <vector>

namespace dyndeg {

// x -> x^A on the torus: row i holds the exponents of coordinate i, so
// f_A o f_B = f_{AB}.
class MonomialMap {
public:
  explicit MonomialMap(IntMatrix a);
  const IntMatrix &matrix() const { return a_; }
  std::size_t dim() const { return a_.rows(); }
  const Int &det() const { return det_; }

private:
  IntMatrix a_;
  Int det_;
};

enum class ToricModel { Projective, ProductP1 };

// lambda_0..lambda_k; lambda_0 = 1 and lambda_k = |det A| exactly.
std::vector<Interval> monomial_dynamical_degrees(const MonomialMap &m, double eps = 1e-12);

// Projective model: affine coordinates u_j = x_j / x_k, cleared by the
// minimal monomial. (P^1)^k model: u_j = x_j1 / x_j0 in factor j.
RationalMap monomial_to_rational_map(const MonomialMap &m, ToricModel model);

// P A = B P with P of full row rank l.
struct MonomialSemiConjugacy {
  IntMatrix A, P, B;
  MonomialSemiConjugacy(IntMatrix a, IntMatrix p, IntMatrix b);
  std::size_t base_dim() const { return P.rows(); }
  std::size_t fiber_dim() const { return A.rows() - P.rows(); }
};

struct KernelRestriction {
  IntMatrix basis;      // k x (k-l), columns span the saturated kernel of P
  IntMatrix restricted; // A' with A * basis = basis * A'
};

KernelRestriction kernel_restriction(const MonomialSemiConjugacy &sc);

// lambda_p(f|pi) for p = 0..k-l.
std::vector<Interval> monomial_relative_degrees(const MonomialSemiConjugacy &sc,
                                                double eps = 1e-12);

struct ProductFormulaRow {
  std::size_t p;
  Interval lhs;        // lambda_p(f)
  Interval rhs;        // max_j lambda_j(g) lambda_{p-j}(f|pi)
  std::size_t argmax;  // j attaining the max midpoint
  double residual;     // gap between the intervals, 0 when they overlap
  bool pass;
};

struct ProductFormulaReport {
  std::vector<ProductFormulaRow> rows;
  bool pass = true;
};

// lambda_f has k+1 entries, lambda_g l+1, lambda_rel k-l+1. A row passes
// when the interval gap is <= tol.
ProductFormulaReport compare_product_formula(const std::vector<Interval> &lambda_f,
                                             const std::vector<Interval> &lambda_g,
                                             const std::vector<Interval> &lambda_rel,
                                             double tol = 0.0);

ProductFormulaReport product_formula_check(const MonomialSemiConjugacy &sc, double eps = 1e-12);

} // namespace dyndeg
