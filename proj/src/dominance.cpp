#include "dyndeg/polycore.hpp"

namespace dyndeg {
namespace {

constexpr std::int64_t kPointHeight = 10000;

// Source coordinates other than the first of each block (the affine chart).
std::vector<std::size_t> chart_variables(const AmbientSpace &s) {
  std::vector<std::size_t> vars;
  for (std::size_t b = 0; b < s.num_factors(); ++b)
    for (std::size_t k = 1; k < s.block_size(b); ++k) vars.push_back(s.block_offset(b) + k);
  return vars;
}

struct Jacobian {
  std::vector<std::vector<MPoly>> d; // d[comp][l] = d(comp)/d(chart var l)
};

} // namespace

bool is_dominant(const RationalMap &f, unsigned trials, std::uint64_t seed) {
  const AmbientSpace &src = f.source();
  const AmbientSpace &tgt = f.target();
  if (tgt.total_dim() > src.total_dim()) return false;
  const auto vars = chart_variables(src);

  std::vector<MPoly> comps;
  for (const auto &t : f.tuples())
    for (const MPoly &p : t) comps.push_back(p);
  std::vector<std::vector<MPoly>> deriv(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (std::size_t v : vars) deriv[c].push_back(comps[c].derivative(v));

  Rng rng(seed);
  const unsigned need = std::max(trials, 3u);
  unsigned zero_results = 0;
  for (unsigned attempt = 0; zero_results < need && attempt < 20 * need; ++attempt) {
    std::vector<Int> point(src.num_vars(), Int(0));
    for (std::size_t b = 0; b < src.num_factors(); ++b) point[src.block_offset(b)] = 1;
    for (std::size_t v : vars) point[v] = rng.uniform_int(-kPointHeight, kPointHeight);

    std::vector<Int> val(comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) val[c] = comps[c].evaluate(point);

    RatMatrix rows(tgt.total_dim(), vars.size());
    std::size_t r = 0, base = 0;
    bool indeterminate = false;
    for (std::size_t i = 0; i < tgt.num_factors(); ++i) {
      const std::size_t n = tgt.block_size(i);
      std::size_t ci = n;
      for (std::size_t m = 0; m < n; ++m)
        if (val[base + m] != 0) {
          ci = m;
          break;
        }
      if (ci == n) {
        indeterminate = true;
        break;
      }
      for (std::size_t m = 0; m < n; ++m) {
        if (m == ci) continue;
        for (std::size_t l = 0; l < vars.size(); ++l) {
          const Int a = val[base + ci] * deriv[base + m][l].evaluate(point) -
                        val[base + m] * deriv[base + ci][l].evaluate(point);
          rows(r, l) = Rat(a);
        }
        ++r;
      }
      base += n;
    }
    if (indeterminate) continue;
    if (rank(rows) == tgt.total_dim()) return true;
    ++zero_results;
  }

  if (src.total_dim() != tgt.total_dim() || src.total_dim() > 3) return false;

  // Symbolic determinant of the same matrix, chart x_{j,0} = 1.
  std::vector<MPoly> chart_comps;
  for (const MPoly &p : comps) {
    MPoly q = p;
    for (std::size_t b = 0; b < src.num_factors(); ++b) q = q.substitute(src.block_offset(b), 1);
    chart_comps.push_back(std::move(q));
  }
  std::vector<std::vector<MPoly>> m;
  std::size_t base = 0;
  for (std::size_t i = 0; i < tgt.num_factors(); ++i) {
    const std::size_t n = tgt.block_size(i);
    std::size_t ci = 0;
    while (chart_comps[base + ci].is_zero()) ++ci;
    for (std::size_t mm = 0; mm < n; ++mm) {
      if (mm == ci) continue;
      std::vector<MPoly> row;
      for (std::size_t v : vars)
        row.push_back(chart_comps[base + ci] * chart_comps[base + mm].derivative(v) -
                      chart_comps[base + mm] * chart_comps[base + ci].derivative(v));
      m.push_back(std::move(row));
    }
    base += n;
  }
  return !determinant(std::move(m), src.num_vars()).is_zero();
}

namespace {

IntMatrix random_invertible(std::size_t n, Rng &rng) {
  for (;;) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform_int(-5, 5);
    if (determinant(m) != 0) return m;
  }
}

std::uint64_t univariate_degree(const MPoly &p, std::size_t var) { return p.degree(var); }

// Number of distinct roots of r not shared with s; both univariate in `var`.
std::uint64_t fresh_roots(const MPoly &r, const MPoly &s, std::size_t var) {
  return univariate_degree(r, var) - univariate_degree(gcd(r, s), var);
}

// One resultant per target point; nullopt when the chart or formal degree
// assumption fails for this linear change.
std::optional<std::uint64_t> count_p2(const RationalMap &h, Rng &rng) {
  const auto &F = h.tuple(0);
  const std::uint32_t d = static_cast<std::uint32_t>(h.multidegree()(0, 0).get_ui());
  std::vector<MPoly> res;
  for (int k = 0; k < 3; ++k) {
    const Int c0 = rng.nonzero(50), c1 = rng.nonzero(50), c2 = rng.nonzero(50);
    MPoly g1 = (F[1] * c0 - F[0] * c1).substitute(0, 1);
    MPoly g2 = (F[2] * c0 - F[0] * c2).substitute(0, 1);
    if (g1.degree(2) != d || g2.degree(2) != d) return std::nullopt;
    MPoly r = resultant(g1, g2, 2, d, d);
    if (r.is_zero()) return std::nullopt;
    res.push_back(std::move(r));
  }
  const auto e1 = fresh_roots(res[0], res[1], 1);
  const auto e2 = fresh_roots(res[0], res[2], 1);
  if (e1 != e2) return std::nullopt;
  return e1;
}

std::optional<std::uint64_t> count_p1p1(const RationalMap &h, Rng &rng) {
  const auto &A = h.tuple(0);
  const auto &B = h.tuple(1);
  const IntMatrix &D = h.multidegree();
  const auto da = static_cast<std::uint32_t>(D(0, 1).get_ui());
  const auto db = static_cast<std::uint32_t>(D(1, 1).get_ui());
  std::vector<MPoly> res;
  for (int k = 0; k < 3; ++k) {
    const Int a0 = rng.nonzero(50), a1 = rng.nonzero(50);
    const Int b0 = rng.nonzero(50), b1 = rng.nonzero(50);
    MPoly g1 = (A[1] * a0 - A[0] * a1).substitute(0, 1).substitute(2, 1);
    MPoly g2 = (B[1] * b0 - B[0] * b1).substitute(0, 1).substitute(2, 1);
    if (g1.degree(3) != da || g2.degree(3) != db) return std::nullopt;
    MPoly r = resultant(g1, g2, 3, da, db);
    if (r.is_zero()) return std::nullopt;
    res.push_back(std::move(r));
  }
  const auto e1 = fresh_roots(res[0], res[1], 1);
  const auto e2 = fresh_roots(res[0], res[2], 1);
  if (e1 != e2) return std::nullopt;
  return e1;
}

} // namespace

std::uint64_t topological_degree(const RationalMap &f, std::uint64_t seed) {
  if (!f.is_self_map()) throw Unsupported("topological degree needs a self-map");
  const auto &factors = f.source().factors();
  const bool p1 = factors == std::vector<unsigned>{1};
  const bool p2 = factors == std::vector<unsigned>{2};
  const bool p1p1 = factors == std::vector<unsigned>{1, 1};
  if (!p1 && !p2 && !p1p1)
    throw Unsupported("topological degree is implemented for P^1, P^2 and P^1 x P^1 only");
  if (!is_dominant(f, 3, seed)) throw ZeroMap("map is not dominant");
  if (p1) return reduce_map(f).multidegree()(0, 0).get_ui();

  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::vector<IntMatrix> blocks;
    for (unsigned k : factors) blocks.push_back(random_invertible(k + 1, rng));
    const RationalMap h = reduce_map(compose(f, RationalMap::linear(f.source(), blocks)));
    const auto e = p2 ? count_p2(h, rng) : count_p1p1(h, rng);
    if (e) return *e;
  }
  throw NonConvergence("topological degree: no generic linear change found");
}

} // namespace dyndeg
