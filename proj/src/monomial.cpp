#include "dyndeg/monomial.hpp"

#include <algorithm>

namespace dyndeg {

MonomialMap::MonomialMap(IntMatrix a) : a_(std::move(a)) {
  if (!a_.is_square() || a_.rows() == 0)
    throw DimensionMismatch("monomial map needs a nonempty square matrix");
  if (a_.rows() > 8) throw Unsupported("monomial maps of dimension > 8 are not supported");
  det_ = determinant(a_);
  if (det_ == 0) throw SingularMatrix("monomial map is not dominant: det A = 0");
}

std::vector<Interval> monomial_dynamical_degrees(const MonomialMap &m, double eps) {
  const std::size_t k = m.dim();
  std::vector<Interval> out{Interval::point(1.0)};
  for (std::size_t p = 1; p < k; ++p)
    out.push_back(spectral_radius_certified(compound_matrix(m.matrix(), p), eps));
  out.push_back(Interval::of(Int(abs(m.det()))));
  return out;
}

RationalMap monomial_to_rational_map(const MonomialMap &m, ToricModel model) {
  const IntMatrix &A = m.matrix();
  const std::size_t k = m.dim();
  if (model == ToricModel::Projective) {
    const AmbientSpace space = AmbientSpace::projective(static_cast<unsigned>(k));
    std::vector<std::vector<Int>> e(k + 1, std::vector<Int>(k + 1, Int(0)));
    for (std::size_t i = 0; i < k; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < k; ++j) {
        e[i][j] = A(i, j);
        s += A(i, j);
      }
      e[i][k] = -s;
    }
    std::vector<Int> clear(k + 1, Int(0));
    for (std::size_t v = 0; v <= k; ++v)
      for (std::size_t i = 0; i <= k; ++i) clear[v] = std::max(clear[v], Int(-e[i][v]));
    RationalMap::Tuple t;
    for (std::size_t i = 0; i <= k; ++i) {
      Exponent x(k + 1);
      for (std::size_t v = 0; v <= k; ++v) {
        const Int d = e[i][v] + clear[v];
        if (!d.fits_uint_p() || d > Int(1u << 30)) throw ResourceLimit("exponent too large");
        x[v] = static_cast<std::uint32_t>(d.get_ui());
      }
      t.push_back(MPoly::monomial(std::move(x), 1));
    }
    return RationalMap(space, space, {std::move(t)}, true);
  }

  const AmbientSpace space(std::vector<unsigned>(k, 1u));
  std::vector<RationalMap::Tuple> tuples;
  for (std::size_t i = 0; i < k; ++i) {
    Exponent first(2 * k, 0), second(2 * k, 0);
    for (std::size_t j = 0; j < k; ++j) {
      const Int &a = A(i, j);
      if (!(abs(a) <= Int(1u << 30))) throw ResourceLimit("exponent too large");
      const auto mag = static_cast<std::uint32_t>(Int(abs(a)).get_ui());
      if (a > 0) {
        first[2 * j] = mag;      // x_j0^{a+}
        second[2 * j + 1] = mag; // x_j1^{a+}
      } else if (a < 0) {
        first[2 * j + 1] = mag;  // x_j1^{a-}
        second[2 * j] = mag;     // x_j0^{a-}
      }
    }
    tuples.push_back({MPoly::monomial(first, 1), MPoly::monomial(second, 1)});
  }
  return RationalMap(space, space, std::move(tuples), true);
}

MonomialSemiConjugacy::MonomialSemiConjugacy(IntMatrix a, IntMatrix p, IntMatrix b)
    : A(std::move(a)), P(std::move(p)), B(std::move(b)) {
  if (!A.is_square() || !B.is_square() || P.cols() != A.rows() || P.rows() != B.rows())
    throw DimensionMismatch("semi-conjugacy shapes must be A: k x k, P: l x k, B: l x l");
  if (P.rows() == 0 || P.rows() > A.rows())
    throw DimensionMismatch("semi-conjugacy needs 1 <= l <= k");
  if (determinant(A) == 0) throw SingularMatrix("det A = 0");
  if (!(P * A == B * P)) throw NotInvariant("P A != B P");
  if (smith_normal_form(P).rank != P.rows()) throw ValidationError("P must have full row rank");
}

KernelRestriction kernel_restriction(const MonomialSemiConjugacy &sc) {
  KernelRestriction out;
  out.basis = integer_kernel(sc.P);
  if (out.basis.cols() == 0) {
    out.restricted = IntMatrix(0, 0);
    return out;
  }
  const auto x = solve(to_rational(out.basis), to_rational(sc.A * out.basis));
  if (!x) throw NotInvariant("A does not preserve ker P");
  out.restricted = IntMatrix(x->rows(), x->cols());
  for (std::size_t i = 0; i < x->rows(); ++i)
    for (std::size_t j = 0; j < x->cols(); ++j) {
      if ((*x)(i, j).get_den() != 1) throw NotInvariant("restriction of A to ker P is not integral");
      out.restricted(i, j) = (*x)(i, j).get_num();
    }
  return out;
}

std::vector<Interval> monomial_relative_degrees(const MonomialSemiConjugacy &sc, double eps) {
  const KernelRestriction kr = kernel_restriction(sc);
  if (kr.restricted.rows() == 0) return {Interval::point(1.0)};
  return monomial_dynamical_degrees(MonomialMap(kr.restricted), eps);
}

ProductFormulaReport compare_product_formula(const std::vector<Interval> &lambda_f,
                                             const std::vector<Interval> &lambda_g,
                                             const std::vector<Interval> &lambda_rel,
                                             double tol) {
  if (lambda_f.empty() || lambda_g.empty() || lambda_g.size() > lambda_f.size())
    throw DimensionMismatch("product formula: need k+1, l+1 and k-l+1 degrees");
  const std::size_t k = lambda_f.size() - 1;
  const std::size_t l = lambda_g.size() - 1;
  if (lambda_rel.size() != k - l + 1)
    throw DimensionMismatch("product formula: need k+1, l+1 and k-l+1 degrees");
  ProductFormulaReport rep;
  for (std::size_t p = 0; p <= k; ++p) {
    ProductFormulaRow row{p, lambda_f[p], {}, 0, 0.0, false};
    bool first = true;
    for (std::size_t j = 0; j <= l; ++j) {
      if (p < j || p - j > k - l) continue;
      const Interval term = lambda_g[j] * lambda_rel[p - j];
      if (first || term.mid() > row.rhs.mid()) row.argmax = j;
      row.rhs = first ? term : max(row.rhs, term);
      first = false;
    }
    row.residual = distance(row.lhs, row.rhs);
    row.pass = row.residual <= tol;
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

ProductFormulaReport product_formula_check(const MonomialSemiConjugacy &sc, double eps) {
  return compare_product_formula(monomial_dynamical_degrees(MonomialMap(sc.A), eps),
                                 monomial_dynamical_degrees(MonomialMap(sc.B), eps),
                                 monomial_relative_degrees(sc, eps));
}

} // namespace dyndeg
