#pragma once

#include "dyndeg/polycore.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dyndeg {

struct ResourceCaps {
  std::size_t max_terms = 1'000'000;
  std::size_t max_coeff_bits = 10'000;
};

// Multidegree matrices D_0..D_N of the reduced iterates of a self-map.
struct DegreeSequence {
  AmbientSpace space{std::vector<unsigned>{1}};
  std::string map_id;
  std::vector<IntMatrix> entries;   // entries[0] = identity
  std::vector<IntMatrix> unreduced; // multidegree before reduction at each step
  std::vector<bool> reduced;
  // Common factors removed when forming f o f^{n-1}, one per target factor.
  std::vector<std::vector<MPoly>> removed;
  std::vector<std::size_t> term_counts;
  // Set when a resource cap stopped the iteration; entries stop before it.
  std::optional<std::size_t> truncated_at;
  std::string truncation_reason;

  std::size_t n_max() const { return entries.empty() ? 0 : entries.size() - 1; }
  bool truncated() const { return truncated_at.has_value(); }
  // Scalar surrogate d_n: the max row sum of D_n.
  Int surrogate(std::size_t n) const { return max_row_sum(entries.at(n)); }
};

DegreeSequence iterate_degrees(const RationalMap &f, unsigned n_max, const ResourceCaps &caps = {});

// Pairs (n, m) with D_{n+m} not <= D_n D_m entrywise.
std::vector<std::pair<std::size_t, std::size_t>> submultiplicativity_violations(
    const DegreeSequence &seq);

struct UpperBound {
  std::size_t n;
  std::string kind; // "row_sum": (C d_n)^{1/n}; "spectral": rho(D_n)^{1/n}
  Int base;         // C d_n for row sums
  Interval value;
};

struct Lambda1Report {
  std::vector<UpperBound> upper_bounds;
  Interval best_estimate;
  Int submult_constant;
  bool certified = false;
  std::vector<double> ratios; // d_{n+1} / d_n
};

Lambda1Report lambda_estimate(const DegreeSequence &seq, const Int &C, double rel_tol = 1e-2);
// Same rule for a scalar sequence d_0..d_N.
Lambda1Report lambda_from_scalars(const std::vector<Int> &d, const Int &C, double rel_tol = 1e-2);

// k deg_X^k, or 1 when submultiplicativity is exact.
Int bound_constant(unsigned k, const Int &deg_X, bool exact = false);

struct StabilityVerdict {
  std::size_t horizon = 0; // largest n with D_m = D_1^m for all m <= n
  std::optional<std::size_t> instability_at;
  std::vector<MPoly> removed_factor;
  std::string verdict;
};

StabilityVerdict stability_check(const DegreeSequence &seq);

// reduce(L o f o L^{-1}) with one invertible rational matrix per factor.
RationalMap conjugate_map(const RationalMap &f, const std::vector<RatMatrix> &L);

} // namespace dyndeg
