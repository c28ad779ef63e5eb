#pragma once

#include "dyndeg/arith.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dyndeg {

using Exponent = std::vector<std::uint32_t>;

struct Term {
  Exponent exp;
  Int coef;
  bool operator==(const Term &) const = default;
};

// Lexicographic comparison, x0 > x1 > ... ; returns true when a precedes b
// in descending order.
bool lex_greater(const Exponent &a, const Exponent &b);

// Sparse multivariate polynomial over Z in a fixed number of variables.
// Terms are kept sorted in descending lex order with no zero coefficients,
// so equality of values is equality of term vectors.
class MPoly {
public:
  MPoly() = default;
  explicit MPoly(std::size_t nvars) : nvars_(nvars) {}

  static MPoly constant(std::size_t nvars, const Int &c);
  static MPoly variable(std::size_t nvars, std::size_t index);
  static MPoly monomial(Exponent exp, const Int &c);
  // Sorts and merges; zero coefficients are dropped.
  static MPoly from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term> &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  const Term &leading() const { return terms_.front(); }

  std::uint32_t degree(std::size_t var) const;
  std::uint64_t total_degree() const;
  bool involves(std::size_t var) const { return degree(var) > 0; }
  std::size_t max_coef_bits() const;

  // Nonnegative gcd of the coefficients (0 for the zero polynomial).
  Int content() const;
  // Divided by its content, sign chosen so the leading coefficient is > 0.
  MPoly primitive() const;
  // Componentwise minimum exponent over all terms (the monomial content).
  Exponent min_exponents() const;

  MPoly operator-() const;
  MPoly &operator+=(const MPoly &o);
  MPoly &operator-=(const MPoly &o);
  MPoly &operator*=(const Int &c);
  friend MPoly operator+(MPoly a, const MPoly &b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly &b) { return a -= b; }
  friend MPoly operator*(const MPoly &a, const MPoly &b);
  friend MPoly operator*(MPoly a, const Int &c) { return a *= c; }
  bool operator==(const MPoly &o) const = default;

  MPoly pow(unsigned e) const;
  MPoly divexact(const Int &c) const;
  MPoly divexact_monomial(const Exponent &m) const;
  MPoly mul_monomial(const Exponent &m) const;
  // Quotient when `divisor` divides exactly over Z, nullopt otherwise.
  std::optional<MPoly> divide(const MPoly &divisor) const;
  bool divides(const MPoly &dividend) const {
    return dividend.divide(*this).has_value();
  }

  MPoly derivative(std::size_t var) const;
  // Replaces variable `var` by a constant; `var` no longer occurs.
  MPoly substitute(std::size_t var, const Int &value) const;
  // Polynomial composition: variable i is replaced by images[i]; all images
  // share one variable count, which becomes the result's.
  MPoly compose(std::span<const MPoly> images) const;
  // Same variables renamed: variable i goes to slot index_map[i] of a ring
  // with `nvars` variables.
  MPoly embed(std::size_t nvars, std::span<const std::size_t> index_map) const;

  Int evaluate(std::span<const Int> point) const;
  Rat evaluate(std::span<const Rat> point) const;
  std::uint64_t evaluate_mod(std::span<const std::uint64_t> point,
                             std::uint64_t p) const;

  // coefficients_in(v)[i] is the coefficient of v^i (an MPoly free of v).
  std::vector<MPoly> coefficients_in(std::size_t var) const;
  static MPoly from_coefficients(std::size_t nvars, std::size_t var,
                                 std::span<const MPoly> coeffs);

private:
  void normalize();

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

// Greatest common divisor over Z; primitive part has a positive leading
// coefficient and the integer part is the gcd of the contents.
MPoly gcd(const MPoly &a, const MPoly &b);
// GCD of a family, zero polynomials ignored.
MPoly gcd(std::span<const MPoly> polys);

// True when the family provably has no common factor of positive degree.
// Restricts every polynomial to a pseudo-random line modulo a large prime;
// a common factor of positive degree survives on any line where the first
// nonzero input's top-degree part does not vanish at the direction.
bool certify_no_common_factor(std::span<const MPoly> polys);

// Sylvester resultant with respect to `var`, using formal degrees when
// given (coefficients above the true degree are zero).
MPoly resultant(const MPoly &a, const MPoly &b, std::size_t var,
                std::optional<std::uint32_t> formal_deg_a = std::nullopt,
                std::optional<std::uint32_t> formal_deg_b = std::nullopt);

// Bareiss fraction-free determinant of a square matrix of polynomials.
MPoly determinant(std::vector<std::vector<MPoly>> m, std::size_t nvars);

} // namespace dyndeg
