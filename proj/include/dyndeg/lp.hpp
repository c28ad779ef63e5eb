#pragma once

#include "dyndeg/matrix.hpp"

#include <vector>

namespace dyndeg {

enum class LpStatus { Optimal, Infeasible, Unbounded };

// min c.x subject to A x = b, x >= 0, solved by two-phase simplex over Q
// with Bland's rule. At optimum `dual` satisfies A^T y <= c and b.y = value.
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rat> x;
  std::vector<Rat> dual;
  Rat value;
};

LpResult solve_lp(const RatMatrix &A, const std::vector<Rat> &b, const std::vector<Rat> &c);

// Exact optimality check of a returned primal/dual pair; inputs canonical.
bool certifies_optimum(const RatMatrix &A, const std::vector<Rat> &b, const std::vector<Rat> &c,
                       const LpResult &r);

// Nonnegative combination of the generators equal to v, if one exists.
std::optional<std::vector<Rat>> cone_membership(const std::vector<std::vector<Rat>> &generators,
                                                const std::vector<Rat> &v);

} // namespace dyndeg
