#include "dyndeg/relative.hpp"

#include <algorithm>
#include <random>

namespace dyndeg {
namespace {

constexpr unsigned kMaxDraws = 12;
constexpr unsigned kMaxConsecutiveDegenerate = 3;

// Drops the trailing variables of a polynomial known not to involve them.
MPoly truncate_vars(const MPoly &p, std::size_t nvars) {
  std::vector<Term> terms;
  for (const Term &t : p.terms()) terms.push_back({Exponent(t.exp.begin(), t.exp.begin() + nvars), t.coef});
  return MPoly::from_terms(nvars, std::move(terms));
}

// Drops the leading `skip` variables, which must no longer occur.
MPoly drop_leading_vars(const MPoly &p, std::size_t skip) {
  std::vector<Term> terms;
  for (const Term &t : p.terms()) terms.push_back({Exponent(t.exp.begin() + skip, t.exp.end()), t.coef});
  return MPoly::from_terms(p.nvars() - skip, std::move(terms));
}

bool involves_from(const MPoly &p, std::size_t first_var) {
  for (const Term &t : p.terms())
    for (std::size_t v = first_var; v < t.exp.size(); ++v)
      if (t.exp[v] != 0) return true;
  return false;
}

RationalMap projection(const AmbientSpace &X, const AmbientSpace &Y) {
  std::vector<RationalMap::Tuple> tuples;
  for (std::size_t b = 0; b < Y.num_factors(); ++b) {
    RationalMap::Tuple t;
    for (std::size_t j = 0; j < Y.block_size(b); ++j)
      t.push_back(MPoly::variable(X.num_vars(), Y.block_offset(b) + j));
    tuples.push_back(std::move(t));
  }
  return RationalMap(X, Y, std::move(tuples), true);
}

struct Iterates {
  std::vector<RationalMap> maps; // maps[n-1] = reduce(f^n)
  std::optional<std::size_t> truncated_at;
  std::string reason;
};

Iterates reduced_iterates(const RationalMap &f, unsigned n_max, const ResourceCaps &caps) {
  Iterates it;
  const RationalMap base = reduce_map(f);
  it.maps.push_back(base);
  for (unsigned n = 2; n <= n_max; ++n) {
    std::optional<RationalMap> composed;
    try {
      composed = compose(base, it.maps.back());
      if (composed->term_count() > caps.max_terms)
        it.reason = "term count " + std::to_string(composed->term_count()) + " exceeds cap";
      else if (composed->max_coef_bits() > caps.max_coeff_bits)
        it.reason = "coefficient size " + std::to_string(composed->max_coef_bits()) +
                    " bits exceeds cap";
    } catch (const ResourceLimit &e) {
      it.reason = e.what();
    }
    if (!it.reason.empty()) {
      it.truncated_at = n;
      break;
    }
    it.maps.push_back(reduce_map(*composed));
  }
  return it;
}

void check_codim(const SemiConjugacy &sc, std::size_t p) {
  if (!sc.witnessed) throw ValidationError("semi-conjugacy is not witnessed");
  if (p > sc.fiber_dim())
    throw ValidationError("codimension " + std::to_string(p) + " exceeds fiber dimension " +
                          std::to_string(sc.fiber_dim()));
  const AmbientSpace F = sc.fiber();
  const bool top = p == sc.fiber_dim();
  const bool supported =
      p <= 1 || (top && F.factors() == std::vector<unsigned>{2});
  if (!supported)
    throw Unsupported("relative degree p=" + std::to_string(p) + " over fiber " + F.to_string());
}

// Fiber degree of one reduced iterate over a base point; nullopt if degenerate.
std::optional<Int> fiber_degree(const SemiConjugacy &sc, std::size_t p, const RationalMap &fn,
                                const std::vector<Int> &point) {
  if (p == 0) return Int(1);
  const AmbientSpace F = sc.fiber();
  const std::size_t nb = sc.base().num_vars();
  std::vector<RationalMap::Tuple> tuples;
  for (std::size_t i = sc.split; i < fn.tuples().size(); ++i) {
    RationalMap::Tuple t;
    bool all_zero = true;
    for (const MPoly &c : fn.tuple(i)) {
      MPoly q = c;
      for (std::size_t v = 0; v < nb; ++v) q = q.substitute(v, point[v]);
      q = drop_leading_vars(q, nb);
      all_zero = all_zero && q.is_zero();
      t.push_back(std::move(q));
    }
    if (all_zero) return std::nullopt;
    tuples.push_back(std::move(t));
  }
  const RationalMap fiber_map = reduce_map(RationalMap(F, F, std::move(tuples)));
  if (!is_dominant(fiber_map)) return std::nullopt;
  if (p == 1) return max_row_sum(fiber_map.multidegree());
  return Int(static_cast<unsigned long>(topological_degree(fiber_map)));
}

std::optional<std::vector<Int>> degrees_over(const SemiConjugacy &sc, std::size_t p,
                                             const Iterates &it, const std::vector<Int> &point) {
  std::vector<Int> d{Int(1)};
  for (const RationalMap &fn : it.maps) {
    const auto deg = fiber_degree(sc, p, fn, point);
    if (!deg) return std::nullopt;
    d.push_back(*deg);
  }
  return d;
}

std::vector<Int> draw_point(std::size_t n, std::mt19937_64 &rng) {
  std::uniform_int_distribution<long> dist(-10000, 10000);
  std::vector<Int> pt;
  while (pt.size() < n) {
    const long v = dist(rng);
    if (v != 0) pt.emplace_back(v);
  }
  return pt;
}

} // namespace

AmbientSpace SemiConjugacy::fiber() const {
  const auto &fs = f.source().factors();
  return AmbientSpace(std::vector<unsigned>(fs.begin() + static_cast<std::ptrdiff_t>(split), fs.end()));
}

SemiConjugacy build_semiconjugacy(const RationalMap &f, std::size_t split) {
  if (!f.is_self_map()) throw SpaceMismatch("semi-conjugacy needs a self-map");
  const AmbientSpace &X = f.source();
  if (split < 1 || split >= X.num_factors())
    throw ValidationError("split must leave at least one base and one fiber factor");
  const auto &fs = X.factors();
  const AmbientSpace Y(std::vector<unsigned>(fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(split)));
  const std::size_t nb = Y.num_vars();

  std::vector<RationalMap::Tuple> gt;
  for (std::size_t i = 0; i < split; ++i) {
    RationalMap::Tuple t;
    for (const MPoly &c : f.tuple(i)) {
      if (involves_from(c, nb))
        throw NotTriangular("base component " + std::to_string(i + 1) +
                            " involves fiber variables");
      t.push_back(truncate_vars(c, nb));
    }
    gt.push_back(std::move(t));
  }
  SemiConjugacy sc{reduce_map(f), projection(X, Y), reduce_map(RationalMap(Y, Y, std::move(gt))),
                   split, false};
  const RationalMap lhs = reduce_map(compose(sc.pi, sc.f));
  const RationalMap rhs = reduce_map(compose(sc.g, sc.pi));
  if (!lhs.projectively_equal(rhs)) throw WitnessFailed("pi o f differs from g o pi");
  sc.witnessed = true;
  return sc;
}

Int relative_bound_constant(const SemiConjugacy &sc) {
  const unsigned l = sc.base_dim();
  Int deg;
  mpz_fac_ui(deg.get_mpz_t(), l);
  for (unsigned k : sc.base().factors()) {
    Int kf;
    mpz_fac_ui(kf.get_mpz_t(), k);
    deg /= kf;
  }
  return deg * l;
}

std::vector<std::pair<std::size_t, std::size_t>>
RelativeDegreeReport::submultiplicativity_violations() const {
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  const std::size_t N = entries.empty() ? 0 : entries.size() - 1;
  for (std::size_t n = 0; n <= N; ++n)
    for (std::size_t m = 0; n + m <= N; ++m)
      if (entries[n + m] > submult_constant * entries[n] * entries[m]) bad.emplace_back(n, m);
  return bad;
}

std::optional<std::vector<Int>> fiber_degrees(const SemiConjugacy &sc, std::size_t p,
                                              unsigned n_max,
                                              const std::vector<Int> &base_point,
                                              const ResourceCaps &caps) {
  check_codim(sc, p);
  if (base_point.size() != sc.base().num_vars())
    throw DimensionMismatch("base point needs one coordinate per base variable");
  return degrees_over(sc, p, reduced_iterates(sc.f, n_max, caps), base_point);
}

std::vector<Int> random_base_point(const SemiConjugacy &sc, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return draw_point(sc.base().num_vars(), rng);
}

RelativeDegreeReport relative_degree_sequence(const SemiConjugacy &sc, std::size_t p,
                                              unsigned n_max, std::uint64_t seed,
                                              const ResourceCaps &caps) {
  check_codim(sc, p);
  if (n_max < 1) throw ValidationError("n_max must be at least 1");
  RelativeDegreeReport rep;
  rep.p = p;
  rep.submult_constant = relative_bound_constant(sc);
  const Iterates it = reduced_iterates(sc.f, n_max, caps);
  rep.truncated_at = it.truncated_at;
  rep.truncation_reason = it.reason;

  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::vector<Int>, std::vector<Int>>> good;
  unsigned consecutive_bad = 0;
  for (unsigned draw = 0;; ++draw) {
    if (draw == kMaxDraws)
      throw DegenerateFibers("no two of " + std::to_string(kMaxDraws) +
                             " base points gave the same fiber degrees");
    std::vector<Int> pt = draw_point(sc.base().num_vars(), rng);
    const auto d = degrees_over(sc, p, it, pt);
    if (!d) {
      rep.rejected_samples.push_back(std::move(pt));
      if (++consecutive_bad == kMaxConsecutiveDegenerate)
        throw DegenerateFibers(std::to_string(kMaxConsecutiveDegenerate) +
                               " consecutive base points were degenerate");
      continue;
    }
    consecutive_bad = 0;
    auto match = std::find_if(good.begin(), good.end(), [&](const auto &g) { return g.second == *d; });
    if (match != good.end()) {
      for (auto &g : good)
        if (&g != &*match) rep.rejected_samples.push_back(g.first);
      rep.fiber_samples = {match->first, std::move(pt)};
      rep.entries = *d;
      break;
    }
    good.emplace_back(std::move(pt), *d);
  }
  if (p == 0) {
    rep.lambda.submult_constant = rep.submult_constant;
    rep.lambda.certified = true;
    rep.lambda.best_estimate = Interval::point(1.0);
  } else {
    rep.lambda = lambda_from_scalars(rep.entries, rep.submult_constant);
  }
  return rep;
}

std::vector<Interval> relative_lambdas(const SemiConjugacy &sc, unsigned n_max,
                                       std::uint64_t seed, const ResourceCaps &caps) {
  std::vector<Interval> out;
  for (std::size_t p = 0; p <= sc.fiber_dim(); ++p)
    out.push_back(relative_degree_sequence(sc, p, n_max, seed, caps).lambda.best_estimate);
  return out;
}

ProductFormulaReport product_formula_verify(const SemiConjugacy &sc,
                                            const std::vector<Interval> &lambdas_f,
                                            const std::vector<Interval> &lambdas_g,
                                            const std::vector<Interval> &lambdas_rel,
                                            double tol) {
  if (lambdas_f.size() != sc.f.source().total_dim() + 1 ||
      lambdas_g.size() != sc.base_dim() + 1 || lambdas_rel.size() != sc.fiber_dim() + 1)
    throw DimensionMismatch("product formula: need k+1, l+1 and k-l+1 degrees");
  return compare_product_formula(lambdas_f, lambdas_g, lambdas_rel, tol);
}

std::string to_string(FibrationVerdict v) {
  return v == FibrationVerdict::Consistent ? "CONSISTENT" : "CONTRADICTS_FIBRATION";
}

FibrationVerdict primitivity_verdict(const Interval &lambda1, const Interval &lambda2, double tol) {
  return lambda2.hi + tol < lambda1.lo ? FibrationVerdict::ContradictsFibration
                                       : FibrationVerdict::Consistent;
}

FibrationVerdict surface_primitivity_probe(const SemiConjugacy &sc,
                                           const std::vector<Interval> &lambdas, double tol) {
  if (sc.f.source().total_dim() != 2 || sc.fiber_dim() != 1)
    throw ShapeMismatch("primitivity probe needs a surface fibered over a curve");
  if (lambdas.size() != 3) throw ShapeMismatch("primitivity probe needs lambda_0..lambda_2");
  return primitivity_verdict(lambdas[1], lambdas[2], tol);
}

} // namespace dyndeg
