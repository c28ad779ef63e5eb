#include "dyndeg/degseq.hpp"

#include "dyndeg/roots.hpp"

#include <algorithm>
#include <cmath>

namespace dyndeg {
namespace {

constexpr double kSpectralEps = 1e-12;

std::optional<std::string> over_caps(const RationalMap &m, const ResourceCaps &caps) {
  if (m.term_count() > caps.max_terms)
    return "term count " + std::to_string(m.term_count()) + " exceeds cap " +
           std::to_string(caps.max_terms);
  if (m.max_coef_bits() > caps.max_coeff_bits)
    return "coefficient size " + std::to_string(m.max_coef_bits()) + " bits exceeds cap " +
           std::to_string(caps.max_coeff_bits);
  return std::nullopt;
}

} // namespace

DegreeSequence iterate_degrees(const RationalMap &f, unsigned n_max, const ResourceCaps &caps) {
  if (!f.is_self_map()) throw SpaceMismatch("degree sequences need a self-map");
  if (n_max < 1) throw ValidationError("n_max must be at least 1");
  if (!is_dominant(f)) throw ValidationError("map is not dominant");

  DegreeSequence seq;
  seq.space = f.source();
  const std::size_t r = seq.space.num_factors();
  seq.entries.push_back(IntMatrix::identity(r));
  seq.unreduced.push_back(IntMatrix::identity(r));
  seq.reduced.push_back(true);
  seq.removed.emplace_back();
  seq.term_counts.push_back(0);

  const Reduction first = reduce_with_factors(f);
  const RationalMap base = first.map;
  seq.map_id = base.to_string();
  seq.entries.push_back(base.multidegree());
  seq.unreduced.push_back(f.multidegree());
  seq.reduced.push_back(true);
  seq.removed.push_back(first.removed);
  seq.term_counts.push_back(base.term_count());

  RationalMap cur = base;
  for (unsigned n = 2; n <= n_max; ++n) {
    std::optional<std::string> why;
    std::optional<RationalMap> composed;
    try {
      composed = compose(base, cur);
      why = over_caps(*composed, caps);
    } catch (const ResourceLimit &e) {
      why = e.what();
    }
    if (why) {
      seq.truncated_at = n;
      seq.truncation_reason = *why;
      break;
    }
    Reduction red = reduce_with_factors(*composed);
    seq.unreduced.push_back(composed->multidegree());
    seq.entries.push_back(red.map.multidegree());
    seq.reduced.push_back(true);
    seq.removed.push_back(std::move(red.removed));
    seq.term_counts.push_back(red.map.term_count());
    cur = std::move(red.map);
  }
  return seq;
}

std::vector<std::pair<std::size_t, std::size_t>> submultiplicativity_violations(
    const DegreeSequence &seq) {
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  const std::size_t N = seq.n_max();
  for (std::size_t n = 0; n <= N; ++n)
    for (std::size_t m = 0; n + m <= N; ++m)
      if (!entrywise_leq(seq.entries[n + m], seq.entries[n] * seq.entries[m]))
        bad.emplace_back(n, m);
  return bad;
}

namespace {

Lambda1Report estimate(const std::vector<Int> &d, const std::vector<IntMatrix> *matrices,
                       const Int &C, double rel_tol) {
  if (d.size() < 2) throw EmptySequence("degree sequence has no iterates");
  if (C < 1) throw ValidationError("submultiplicativity constant must be >= 1");
  Lambda1Report rep;
  rep.submult_constant = C;
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n < d.size(); ++n) {
    UpperBound b{n, "row_sum", C * d[n], {}};
    b.value = nth_root(b.base, static_cast<unsigned>(n));
    hi = std::min(hi, b.value.hi);
    rep.upper_bounds.push_back(std::move(b));
    if (matrices) {
      const Interval rho = spectral_radius_certified((*matrices)[n], kSpectralEps);
      UpperBound s{n, "spectral", Int(0), nth_root(rho, static_cast<unsigned>(n))};
      hi = std::min(hi, s.value.hi);
      rep.upper_bounds.push_back(std::move(s));
    }
  }
  for (std::size_t n = 1; n + 1 < d.size(); ++n) rep.ratios.push_back(Rat(d[n + 1], d[n]).get_d());
  if (rep.ratios.size() >= 3) {
    const std::size_t k = rep.ratios.size();
    const double a = rep.ratios[k - 3], b = rep.ratios[k - 2], c = rep.ratios[k - 1];
    const double top = std::max({a, b, c}), bottom = std::min({a, b, c});
    rep.certified = top - bottom <= rel_tol * top;
  }
  hi = std::max(hi, 1.0);
  double lo = 1.0;
  if (rep.certified) lo = std::clamp(rep.ratios.back(), 1.0, hi);
  rep.best_estimate = {lo, hi};
  return rep;
}

} // namespace

Lambda1Report lambda_estimate(const DegreeSequence &seq, const Int &C, double rel_tol) {
  std::vector<Int> d;
  for (std::size_t n = 0; n < seq.entries.size(); ++n) d.push_back(seq.surrogate(n));
  const bool square_data = seq.space.num_factors() > 1;
  return estimate(d, square_data ? &seq.entries : nullptr, C, rel_tol);
}

Lambda1Report lambda_from_scalars(const std::vector<Int> &d, const Int &C, double rel_tol) {
  return estimate(d, nullptr, C, rel_tol);
}

Int bound_constant(unsigned k, const Int &deg_X, bool exact) {
  if (exact) return 1;
  if (k < 1 || deg_X < 1) throw ValidationError("bound_constant needs k >= 1 and deg_X >= 1");
  return Int(k) * pow(deg_X, k);
}

StabilityVerdict stability_check(const DegreeSequence &seq) {
  if (seq.entries.size() < 2) throw EmptySequence("stability check needs at least one iterate");
  StabilityVerdict v;
  const IntMatrix &D1 = seq.entries[1];
  IntMatrix power = D1;
  v.horizon = 1;
  for (std::size_t n = 2; n <= seq.n_max(); ++n) {
    power = power * D1;
    if (!(seq.entries[n] == power)) break;
    v.horizon = n;
  }
  for (std::size_t n = 2; n <= seq.n_max(); ++n) {
    const auto &rm = seq.removed[n];
    if (std::any_of(rm.begin(), rm.end(), [](const MPoly &p) { return !p.is_constant(); })) {
      v.instability_at = n;
      v.removed_factor = rm;
      break;
    }
  }
  v.verdict = v.instability_at ? "instability witnessed at n=" + std::to_string(*v.instability_at)
                               : "stable up to horizon " + std::to_string(v.horizon);
  return v;
}

RationalMap conjugate_map(const RationalMap &f, const std::vector<RatMatrix> &L) {
  if (!f.is_self_map()) throw SpaceMismatch("conjugation needs a self-map");
  if (L.size() != f.source().num_factors())
    throw DimensionMismatch("one conjugating matrix per factor is required");
  std::vector<IntMatrix> fwd, inv;
  for (const RatMatrix &m : L) {
    Int den = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) den = lcm(den, m(i, j).get_den());
    IntMatrix mi(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const Rat scaled = m(i, j) * den;
        mi(i, j) = scaled.get_num();
      }
    if (!mi.is_square() || determinant(mi) == 0)
      throw SingularMatrix("conjugating matrix is singular");
    inv.push_back(adjugate(mi));
    fwd.push_back(std::move(mi));
  }
  const RationalMap l = RationalMap::linear(f.source(), fwd);
  const RationalMap linv = RationalMap::linear(f.source(), inv);
  return reduce_map(compose(l, compose(f, linv)));
}

} // namespace dyndeg
