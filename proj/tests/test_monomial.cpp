#include "doctest.h"

#include "dyndeg/degseq.hpp"
#include "dyndeg/monomial.hpp"

#include <cmath>

using namespace dyndeg;

namespace {

IntMatrix random_matrix(Rng &rng, std::size_t n, long bound) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform_int(-bound, bound);
  return m;
}

IntMatrix random_invertible(Rng &rng, std::size_t n, long bound) {
  for (;;) {
    IntMatrix m = random_matrix(rng, n, bound);
    if (determinant(m) != 0) return m;
  }
}

} // namespace

TEST_CASE("compound matrix") {
  const IntMatrix a{{2, 1}, {1, 1}};
  CHECK(compound_matrix(a, 1) == a);
  CHECK(compound_matrix(a, 2) == IntMatrix{{1}});
  CHECK(compound_matrix(IntMatrix{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}, 2) ==
        IntMatrix{{6, 0, 0}, {0, 10, 0}, {0, 0, 15}});
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 3;
    const IntMatrix x = random_matrix(rng, n, 5), y = random_matrix(rng, n, 5);
    for (std::size_t p = 0; p <= n; ++p)
      CHECK(compound_matrix(x * y, p) == compound_matrix(x, p) * compound_matrix(y, p));
  }
}

TEST_CASE("dynamical degrees of monomial maps") {
  auto l = monomial_dynamical_degrees(MonomialMap(IntMatrix{{2, 0}, {0, 2}}));
  CHECK(l.size() == 3);
  CHECK(l[0] == Interval::point(1.0));
  CHECK(l[1].contains(2.0));
  CHECK(l[2] == Interval::point(4.0));
  l = monomial_dynamical_degrees(MonomialMap(IntMatrix{{2, 1}, {1, 1}}));
  CHECK(l[1].contains((3 + std::sqrt(5.0)) / 2));
  CHECK(l[2] == Interval::point(1.0));
  l = monomial_dynamical_degrees(MonomialMap(IntMatrix{{1, 1}, {1, 0}}));
  CHECK(l[1].contains((1 + std::sqrt(5.0)) / 2));
  CHECK_THROWS_AS(MonomialMap(IntMatrix{{1, 2}, {2, 4}}), SingularMatrix);
}

TEST_CASE("log-concavity and lower bounds on random matrices") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 4;
    const MonomialMap m(random_invertible(rng, n, 4));
    const auto l = monomial_dynamical_degrees(m);
    for (std::size_t p = 0; p <= n; ++p) CHECK(l[p].hi >= 1.0 - 1e-9);
    for (std::size_t p = 1; p < n; ++p)
      CHECK((l[p] * l[p]).hi >= (l[p - 1] * l[p + 1]).lo - 1e-9);
  }
}

TEST_CASE("rational map models") {
  const AmbientSpace P2 = AmbientSpace::projective(2);
  CHECK(monomial_to_rational_map(MonomialMap(IntMatrix{{2, 0}, {0, 2}}), ToricModel::Projective) ==
        RationalMap::parse(P2, P2, {{"x0^2", "x1^2", "x2^2"}}));
  CHECK(monomial_to_rational_map(MonomialMap(IntMatrix{{1, -1}, {0, 1}}), ToricModel::Projective) ==
        RationalMap::parse(P2, P2, {{"x0*x2", "x1^2", "x1*x2"}}));
  const RationalMap cat =
      monomial_to_rational_map(MonomialMap(IntMatrix{{2, 1}, {1, 1}}), ToricModel::ProductP1);
  CHECK(cat.multidegree() == IntMatrix{{2, 1}, {1, 1}});
  CHECK(reduce_map(cat) == cat);
  const RationalMap neg =
      monomial_to_rational_map(MonomialMap(IntMatrix{{1, -2}, {0, 1}}), ToricModel::ProductP1);
  CHECK(neg.multidegree() == IntMatrix{{1, 2}, {0, 1}});
}

TEST_CASE("composition of models matches matrix product") {
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    const IntMatrix a = random_invertible(rng, 2, 2), b = random_invertible(rng, 2, 2);
    const RationalMap fa = monomial_to_rational_map(MonomialMap(a), ToricModel::ProductP1);
    const RationalMap fb = monomial_to_rational_map(MonomialMap(b), ToricModel::ProductP1);
    CHECK(reduce_map(compose(fa, fb)) ==
          monomial_to_rational_map(MonomialMap(a * b), ToricModel::ProductP1));
  }
}

TEST_CASE("kernel restriction") {
  MonomialSemiConjugacy sc(IntMatrix{{2, 0}, {1, 3}}, IntMatrix{{1, 0}}, IntMatrix{{2}});
  KernelRestriction kr = kernel_restriction(sc);
  CHECK(kr.basis == IntMatrix{{0}, {1}});
  CHECK(kr.restricted == IntMatrix{{3}});

  MonomialSemiConjugacy d3(IntMatrix{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}},
                           IntMatrix{{1, 0, 0}, {0, 1, 0}}, IntMatrix{{2, 0}, {0, 3}});
  CHECK(kernel_restriction(d3).restricted == IntMatrix{{5}});

  Rng rng(9);
  for (int t = 0; t < 10; ++t) {
    const IntMatrix top = random_invertible(rng, 2, 3), bottom = random_invertible(rng, 2, 3);
    IntMatrix A(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        A(i, j) = top(i, j);
        A(i + 2, j + 2) = bottom(i, j);
        A(i + 2, j) = rng.uniform_int(-3, 3);
      }
    const IntMatrix P{{1, 0, 0, 0}, {0, 1, 0, 0}};
    const MonomialSemiConjugacy s(A, P, top);
    const KernelRestriction k = kernel_restriction(s);
    CHECK(A * k.basis == k.basis * k.restricted);
    CHECK(k.restricted == bottom);
  }
  CHECK_THROWS_AS(MonomialSemiConjugacy(IntMatrix{{2, 1}, {0, 3}}, IntMatrix{{0, 1}},
                                        IntMatrix{{2}}),
                  NotInvariant);
}

TEST_CASE("relative degrees and product formula") {
  MonomialSemiConjugacy a(IntMatrix{{2, 0}, {1, 3}}, IntMatrix{{1, 0}}, IntMatrix{{2}});
  auto rel = monomial_relative_degrees(a);
  CHECK(rel.size() == 2);
  CHECK(rel[1].contains(3.0));
  const ProductFormulaReport rep = product_formula_check(a);
  CHECK(rep.pass);
  CHECK(rep.rows[1].lhs.contains(3.0));

  MonomialSemiConjugacy d(IntMatrix{{2, 0}, {0, 3}}, IntMatrix{{1, 0}}, IntMatrix{{2}});
  const ProductFormulaReport dr = product_formula_check(d);
  CHECK(dr.pass);
  CHECK(dr.rows[2].lhs.contains(6.0));

  MonomialSemiConjugacy id(IntMatrix::identity(3), IntMatrix{{1, 1, 0}}, IntMatrix{{1}});
  for (const auto &x : monomial_relative_degrees(id)) CHECK(x.contains(1.0));
  CHECK(product_formula_check(id).pass);

  MonomialSemiConjugacy t(IntMatrix{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}, IntMatrix{{1, 0, 0}},
                          IntMatrix{{2}});
  const ProductFormulaReport tr = product_formula_check(t);
  CHECK(tr.pass);
  CHECK(tr.rows[3].lhs.contains(30.0));
  CHECK(monomial_relative_degrees(t)[2].contains(15.0));
}

TEST_CASE("symbolic iteration matches matrix powers") {
  Rng rng(1);
  int done = 0;
  while (done < 4) {
    IntMatrix a(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) a(i, j) = rng.uniform_int(0, 3);
    if (determinant(a) == 0) continue;
    ++done;
    const auto seq =
        iterate_degrees(monomial_to_rational_map(MonomialMap(a), ToricModel::ProductP1), 6);
    for (unsigned n = 0; n <= 6; ++n) CHECK(seq.entries[n] == a.pow(n));
  }
}
