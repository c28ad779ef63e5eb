#pragma once

#include "dyndeg/matrix.hpp"
#include "dyndeg/mpoly.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dyndeg {

// A product of projective spaces P^{k_1} x ... x P^{k_r}. Variables are laid
// out block by block: x0..x{k1}, then y0.., z0.., u0.., v0.., w0...
class AmbientSpace {
public:
  explicit AmbientSpace(std::vector<unsigned> factors);
  static AmbientSpace projective(unsigned k) { return AmbientSpace({k}); }

  const std::vector<unsigned> &factors() const { return factors_; }
  std::size_t num_factors() const { return factors_.size(); }
  unsigned total_dim() const { return total_dim_; }
  std::size_t num_vars() const { return num_vars_; }
  std::size_t block_offset(std::size_t block) const { return offsets_.at(block); }
  std::size_t block_size(std::size_t block) const { return factors_.at(block) + 1; }
  std::size_t block_of(std::size_t var) const;

  std::string variable_name(std::size_t var) const;
  std::optional<std::size_t> find_variable(std::string_view name) const;
  // Labels h1..hr of the hyperplane pullbacks spanning N^1.
  std::vector<std::string> hyperplane_classes() const;
  std::string to_string() const;

  bool operator==(const AmbientSpace &o) const { return factors_ == o.factors_; }

private:
  std::vector<unsigned> factors_;
  std::vector<std::size_t> offsets_;
  unsigned total_dim_ = 0;
  std::size_t num_vars_ = 0;
};

using MultiDegree = std::vector<std::uint64_t>;

// Per-block degrees of a multihomogeneous polynomial; all zeros for the zero
// polynomial. Throws HomogeneityError otherwise.
MultiDegree multidegree_of(const MPoly &p, const AmbientSpace &space);

// Canonical text: descending block-graded lex order, explicit '*', '^' for
// powers, " + " / " - " between terms, "0" for the zero polynomial.
std::string format_polynomial(const MPoly &p, const AmbientSpace &space);

// Parses an expression and checks multihomogeneity, keeping the exact
// integer coefficients (map components need their relative scale).
MPoly parse_expression(std::string_view text, const AmbientSpace &space);

// A multihomogeneous polynomial stored primitive (content 1, positive
// leading coefficient) unless zero.
class Polynomial {
public:
  explicit Polynomial(AmbientSpace space);
  Polynomial(AmbientSpace space, const MPoly &poly);

  const AmbientSpace &space() const { return space_; }
  const MPoly &mpoly() const { return poly_; }
  const MultiDegree &multidegree() const { return multidegree_; }
  bool is_zero() const { return poly_.is_zero(); }
  std::string to_string() const { return format_polynomial(poly_, space_); }
  bool operator==(const Polynomial &o) const = default;

private:
  AmbientSpace space_;
  MPoly poly_;
  MultiDegree multidegree_;
};

Polynomial parse_polynomial(std::string_view text, const AmbientSpace &space);
Polynomial poly_mul(const Polynomial &a, const Polynomial &b);
Polynomial poly_gcd(const Polynomial &a, const Polynomial &b);

// A rational map source -> target: one tuple of k_i + 1 polynomials in the
// source variables for each target factor; all members of a tuple share one
// multidegree, not all are zero.
class RationalMap {
public:
  using Tuple = std::vector<MPoly>;

  RationalMap(AmbientSpace source, AmbientSpace target, std::vector<Tuple> tuples,
              bool reduced = false);
  static RationalMap identity(const AmbientSpace &space);
  static RationalMap parse(const AmbientSpace &source, const AmbientSpace &target,
                           const std::vector<std::vector<std::string>> &components);
  // Linear self-map given one integer (k_i+1)x(k_i+1) matrix per factor.
  static RationalMap linear(const AmbientSpace &space, const std::vector<IntMatrix> &blocks);

  const AmbientSpace &source() const { return source_; }
  const AmbientSpace &target() const { return target_; }
  const std::vector<Tuple> &tuples() const { return tuples_; }
  const Tuple &tuple(std::size_t i) const { return tuples_.at(i); }
  // Rows: target factors; columns: source blocks.
  const IntMatrix &multidegree() const { return multidegree_; }
  bool reduced() const { return reduced_; }
  bool is_self_map() const { return source_ == target_; }

  std::size_t term_count() const;
  std::size_t max_coef_bits() const;
  std::vector<std::vector<std::string>> to_strings() const;
  std::string to_string() const;

  // Term-identical representation.
  bool operator==(const RationalMap &o) const;
  // Same map of projective spaces: tuples agree up to a nonzero scalar.
  bool projectively_equal(const RationalMap &o) const;

private:
  AmbientSpace source_, target_;
  std::vector<Tuple> tuples_;
  IntMatrix multidegree_;
  bool reduced_ = false;
};

// f o g, unreduced. Requires g.target() == f.source().
RationalMap compose(const RationalMap &f, const RationalMap &g);

struct Reduction {
  RationalMap map;
  // Common factor removed from each tuple (the constant 1 when none).
  std::vector<MPoly> removed;
  bool removed_nontrivial() const;
};
Reduction reduce_with_factors(const RationalMap &f);
RationalMap reduce_map(const RationalMap &f);

// Dominance via the Jacobian of the dehomogenized map at random integer
// points of height <= 10^4; at least three points before answering false,
// and a full symbolic determinant when the dimension is at most 3.
bool is_dominant(const RationalMap &f, unsigned trials = 3, std::uint64_t seed = 1);

// Number of preimages of a generic point for dominant self-maps of P^1, P^2
// and P^1 x P^1.
std::uint64_t topological_degree(const RationalMap &f, std::uint64_t seed = 1);

} // namespace dyndeg
