#pragma once

#include "dyndeg/degseq.hpp"
#include "dyndeg/monomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dyndeg {

// f on X = P^{k_1} x ... x P^{k_r} over g on the first `split` factors Y,
// with pi the coordinate projection X -> Y.
struct SemiConjugacy {
  RationalMap f;
  RationalMap pi;
  RationalMap g;
  std::size_t split = 0;
  bool witnessed = false;

  const AmbientSpace &base() const { return g.source(); }
  AmbientSpace fiber() const;
  unsigned base_dim() const { return base().total_dim(); }
  unsigned fiber_dim() const { return f.source().total_dim() - base_dim(); }
};

SemiConjugacy build_semiconjugacy(const RationalMap &f, std::size_t split);

// deg(Y) l 1^l for the supported product bases.
Int relative_bound_constant(const SemiConjugacy &sc);

struct RelativeDegreeReport {
  std::size_t p = 0;
  std::vector<Int> entries; // deg_p(f^n | pi), n = 0..N
  Lambda1Report lambda;     // lambda.best_estimate encloses lambda_p(f|pi)
  Int submult_constant;
  std::vector<std::vector<Int>> fiber_samples;    // the agreeing base points
  std::vector<std::vector<Int>> rejected_samples; // degenerate or outvoted
  std::optional<std::size_t> truncated_at;
  std::string truncation_reason;

  // Pairs (n, m) with deg_p(f^{n+m}|pi) > C deg_p(f^n|pi) deg_p(f^m|pi).
  std::vector<std::pair<std::size_t, std::size_t>> submultiplicativity_violations() const;
};

// Fiber degrees over one base point (integer coordinates of the Y variables).
// nullopt when the point is degenerate for some n <= n_max.
std::optional<std::vector<Int>> fiber_degrees(const SemiConjugacy &sc, std::size_t p,
                                              unsigned n_max,
                                              const std::vector<Int> &base_point,
                                              const ResourceCaps &caps = {});

// Random base point with nonzero coordinates of height <= 10^4.
std::vector<Int> random_base_point(const SemiConjugacy &sc, std::uint64_t seed);

RelativeDegreeReport relative_degree_sequence(const SemiConjugacy &sc, std::size_t p,
                                              unsigned n_max, std::uint64_t seed = 1,
                                              const ResourceCaps &caps = {});

// lambda_p(f|pi) for p = 0..k-l.
std::vector<Interval> relative_lambdas(const SemiConjugacy &sc, unsigned n_max,
                                       std::uint64_t seed = 1, const ResourceCaps &caps = {});

ProductFormulaReport product_formula_verify(const SemiConjugacy &sc,
                                            const std::vector<Interval> &lambdas_f,
                                            const std::vector<Interval> &lambdas_g,
                                            const std::vector<Interval> &lambdas_rel,
                                            double tol = 0.0);

enum class FibrationVerdict { Consistent, ContradictsFibration };
std::string to_string(FibrationVerdict v);

// lambda_2 >= lambda_1 up to tol, as intervals.
FibrationVerdict primitivity_verdict(const Interval &lambda1, const Interval &lambda2,
                                     double tol = 0.0);
// lambdas = lambda_0..lambda_2 of f; needs a surface fibered over a curve.
FibrationVerdict surface_primitivity_probe(const SemiConjugacy &sc,
                                           const std::vector<Interval> &lambdas,
                                           double tol = 0.0);

} // namespace dyndeg
