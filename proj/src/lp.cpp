#include "dyndeg/lp.hpp"

namespace dyndeg {
namespace {

// Dense tableau: rows 0..m-1 constraints, last column the right-hand side.
struct Tableau {
  std::size_t m, n; // constraints, structural + artificial columns
  std::vector<std::vector<Rat>> t;
  std::vector<std::size_t> basis;

  void pivot(std::size_t r, std::size_t c) {
    const Rat p = t[r][c];
    for (Rat &x : t[r]) x /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || t[i][c] == 0) continue;
      const Rat f = t[i][c];
      for (std::size_t j = 0; j <= n; ++j) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Bland's rule on reduced costs of `cost` restricted to `allowed` columns.
  // Returns false when unbounded.
  bool optimize(const std::vector<Rat> &cost, std::size_t allowed) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < allowed && !enter; ++j) {
        Rat red = cost[j];
        for (std::size_t i = 0; i < m; ++i) red -= cost[basis[i]] * t[i][j];
        if (red < 0) enter = j;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rat best;
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][*enter] <= 0) continue;
        const Rat ratio = t[i][n] / t[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }
};

} // namespace

LpResult solve_lp(const RatMatrix &A_in, const std::vector<Rat> &b_in,
                  const std::vector<Rat> &c_in) {
  const std::size_t m = A_in.rows(), n = A_in.cols();
  if (b_in.size() != m || c_in.size() != n) throw DimensionMismatch("LP data shape mismatch");
  // Hand-built fractions such as Rat(45, 3) are not reduced by GMP.
  RatMatrix A = A_in;
  std::vector<Rat> b = b_in, c = c_in;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j).canonicalize();
  for (Rat &x : b) x.canonicalize();
  for (Rat &x : c) x.canonicalize();
  LpResult res;

  Tableau tab{m, n + m, std::vector<std::vector<Rat>>(m, std::vector<Rat>(n + m + 1)),
              std::vector<std::size_t>(m)};
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = flip ? Rat(-A(i, j)) : A(i, j);
    tab.t[i][n + i] = 1;
    tab.t[i][n + m] = flip ? Rat(-b[i]) : b[i];
    tab.basis[i] = n + i;
  }

  // Phase 1: minimize the sum of artificials.
  std::vector<Rat> phase1(n + m, Rat(0));
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1;
  tab.optimize(phase1, n + m);
  Rat infeas = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis[i] >= n) infeas += tab.t[i][n + m];
  if (infeas != 0) {
    res.status = LpStatus::Infeasible;
    return res;
  }
  // Drive artificials out; rows that cannot pivot are redundant.
  std::vector<bool> redundant(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n && !col; ++j)
      if (tab.t[i][j] != 0) col = j;
    if (col)
      tab.pivot(i, *col);
    else
      redundant[i] = true;
  }

  // Phase 2 over structural columns only; redundant rows stay inert.
  std::vector<Rat> cost(n + m, Rat(0));
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  if (!tab.optimize(cost, n)) {
    res.status = LpStatus::Unbounded;
    return res;
  }

  res.status = LpStatus::Optimal;
  res.x.assign(n, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.t[i][n + m];
  res.value = 0;
  for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];

  // Dual from the final basis: B^T y = c_B on the non-redundant rows.
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < m; ++i)
    if (!redundant[i]) rows.push_back(i);
  res.dual.assign(m, Rat(0));
  if (!rows.empty()) {
    RatMatrix bt(rows.size(), rows.size());
    RatMatrix cb(rows.size(), 1);
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (redundant[i]) continue;
      const std::size_t col = tab.basis[i];
      for (std::size_t r = 0; r < rows.size(); ++r) bt(k, r) = A(rows[r], col);
      cb(k, 0) = c[col];
      ++k;
    }
    const auto y = solve(bt, cb);
    if (!y) throw std::logic_error("internal: singular LP basis");
    for (std::size_t r = 0; r < rows.size(); ++r) res.dual[rows[r]] = (*y)(r, 0);
  }
  return res;
}

bool certifies_optimum(const RatMatrix &A, const std::vector<Rat> &b, const std::vector<Rat> &c,
                       const LpResult &r) {
  if (r.status != LpStatus::Optimal) return false;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < A.cols(); ++j) s += A(i, j) * r.x[j];
    if (s != b[i]) return false;
  }
  for (const Rat &x : r.x)
    if (x < 0) return false;
  Rat dual_value = 0;
  for (std::size_t i = 0; i < A.rows(); ++i) dual_value += b[i] * r.dual[i];
  for (std::size_t j = 0; j < A.cols(); ++j) {
    Rat s = 0;
    for (std::size_t i = 0; i < A.rows(); ++i) s += A(i, j) * r.dual[i];
    if (s > c[j]) return false;
  }
  return dual_value == r.value;
}

std::optional<std::vector<Rat>> cone_membership(const std::vector<std::vector<Rat>> &generators,
                                                const std::vector<Rat> &v) {
  RatMatrix A(v.size(), generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j) {
    if (generators[j].size() != v.size()) throw DimensionMismatch("generator length mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) A(i, j) = generators[j][i];
  }
  const LpResult r = solve_lp(A, v, std::vector<Rat>(generators.size(), Rat(0)));
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return r.x;
}

} // namespace dyndeg
