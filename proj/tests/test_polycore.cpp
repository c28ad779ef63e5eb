#include "doctest.h"

#include "dyndeg/polycore.hpp"

#include <map>

using namespace dyndeg;

namespace {

const AmbientSpace P1 = AmbientSpace::projective(1);
const AmbientSpace P2 = AmbientSpace::projective(2);
const AmbientSpace P1P1({1, 1});

MPoly P(const std::string &s, const AmbientSpace &sp = P2) { return parse_expression(s, sp); }

RationalMap cremona() {
  return RationalMap::parse(P2, P2, {{"x1*x2", "x0*x2", "x0*x1"}});
}

// Naive double loop into an ordered map.
MPoly naive_product(const MPoly &a, const MPoly &b) {
  std::map<Exponent, Int> acc;
  for (const Term &s : a.terms())
    for (const Term &t : b.terms()) {
      Exponent e(s.exp.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = s.exp[i] + t.exp[i];
      acc[e] += s.coef * t.coef;
    }
  std::vector<Term> terms;
  for (auto &[e, c] : acc) terms.push_back({e, c});
  return MPoly::from_terms(a.nvars(), std::move(terms));
}

MPoly random_homogeneous(Rng &rng, std::size_t nvars, unsigned deg, unsigned nterms) {
  std::vector<Term> terms;
  for (unsigned k = 0; k < nterms; ++k) {
    Exponent e(nvars, 0);
    for (unsigned d = 0; d < deg; ++d) ++e[static_cast<std::size_t>(rng.uniform(0, nvars - 1))];
    terms.push_back({e, rng.uniform_int(-9, 9)});
  }
  return MPoly::from_terms(nvars, std::move(terms));
}

} // namespace

TEST_CASE("parse and print") {
  const Polynomial p = parse_polynomial("x0^2 - x1*x2", P2);
  CHECK(p.multidegree() == MultiDegree{2});
  CHECK(p.to_string() == "x0^2 - x1*x2");
  CHECK(parse_polynomial("0", P2).is_zero());
  CHECK(parse_polynomial("-(x1 + x0)*3", P2).to_string() == "x0 + x1");
  CHECK(format_polynomial(P("-2*x1*x0 + 4*x2^2"), P2) == "-2*x0*x1 + 4*x2^2");
  CHECK(format_polynomial(parse_expression("x0*y1 - x1*y0", P1P1), P1P1) == "x0*y1 - x1*y0");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_polynomial("x0 + x1^2", P2), HomogeneityError);
  CHECK_THROWS_AS(parse_polynomial("x0 + x3", P2), UnknownVariable);
  CHECK_THROWS_AS(parse_polynomial("y0", P2), UnknownVariable);
  CHECK_THROWS_AS(parse_polynomial("x0 +* x1", P2), SyntaxError);
  CHECK_THROWS_AS(parse_polynomial("(x0", P2), SyntaxError);
  CHECK_THROWS_AS(parse_polynomial("", P2), SyntaxError);
  try {
    parse_polynomial("x0 + x7", P2);
    FAIL("no throw");
  } catch (const UnknownVariable &e) {
    CHECK(e.column() == 6u);
  }
  try {
    parse_polynomial("x0 * ) ", P2);
    FAIL("no throw");
  } catch (const SyntaxError &e) {
    CHECK(e.column() == 6u);
  }
}

TEST_CASE("poly_mul") {
  CHECK(poly_mul(parse_polynomial("x0+x1", P2), parse_polynomial("x0-x1", P2)) ==
        parse_polynomial("x0^2-x1^2", P2));
  Rng rng(11);
  const Polynomial one = parse_polynomial("1", P2);
  for (int i = 0; i < 20; ++i) {
    const Polynomial p(P2, random_homogeneous(rng, 3, 1 + i % 4, 5));
    if (p.is_zero()) continue;
    CHECK(poly_mul(one, p) == p);
  }
  for (int i = 0; i < 30; ++i) {
    const MPoly a = random_homogeneous(rng, 3, 1 + i % 6, 8);
    const MPoly b = random_homogeneous(rng, 3, 1 + (i * 5) % 6, 8);
    const MPoly c = random_homogeneous(rng, 3, 2, 4);
    CHECK(a * b == naive_product(a, b));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
  }
  CHECK_THROWS_AS(poly_mul(parse_polynomial("x0", P1), parse_polynomial("x0", P2)),
                  SpaceMismatch);
}

TEST_CASE("poly_gcd") {
  CHECK(poly_gcd(parse_polynomial("x0^2*x1", P2), parse_polynomial("x0*x1^2", P2)) ==
        parse_polynomial("x0*x1", P2));
  CHECK(poly_gcd(parse_polynomial("x0^3 + x1*x2^2", P2), parse_polynomial("1", P2)) ==
        parse_polynomial("1", P2));
  const Polynomial a = parse_polynomial("(x0+x1)^2*x2", P2);
  const Polynomial b = parse_polynomial("(x0+x1)*x1", P2);
  const Polynomial g = poly_gcd(a, b);
  CHECK(g == parse_polynomial("x0+x1", P2));
  CHECK(a.mpoly().divide(g.mpoly()).has_value());
  CHECK(b.mpoly().divide(g.mpoly()).has_value());

  // Planted common factors.
  Rng rng(5);
  for (int i = 0; i < 25; ++i) {
    const MPoly c = random_homogeneous(rng, 3, 1 + i % 3, 3);
    const MPoly a1 = random_homogeneous(rng, 3, 2 + i % 3, 4);
    const MPoly b1 = random_homogeneous(rng, 3, 1 + i % 4, 4);
    if (c.is_zero() || a1.is_zero() || b1.is_zero()) continue;
    const MPoly ga = gcd(a1 * c, b1 * c);
    CHECK((a1 * c).divide(ga).has_value());
    CHECK((b1 * c).divide(ga).has_value());
    CHECK(ga.divide(c.primitive()).has_value());
  }
}

TEST_CASE("resultant and determinant") {
  // Res_x(x - a, x - b) = b - a in Z[a, b] encoded as vars (x, a, b).
  const MPoly x = MPoly::variable(3, 0), a = MPoly::variable(3, 1), b = MPoly::variable(3, 2);
  const MPoly r = resultant(x - a, x - b, 0);
  CHECK((r == b - a || r == a - b));
  std::vector<std::vector<MPoly>> m = {{a, b}, {b, a}};
  CHECK(determinant(m, 3) == a * a - b * b);
}

TEST_CASE("compose and reduce") {
  const RationalMap s = cremona();
  const RationalMap s2 = compose(s, s);
  CHECK(s2.to_strings() == std::vector<std::vector<std::string>>{
                               {"x0^2*x1*x2", "x0*x1^2*x2", "x0*x1*x2^2"}});
  CHECK(s2.multidegree() == IntMatrix{{4}});
  const Reduction red = reduce_with_factors(s2);
  CHECK(red.map == RationalMap::identity(P2));
  CHECK(red.removed_nontrivial());
  CHECK(format_polynomial(red.removed[0], P2) == "x0*x1*x2");
  CHECK(reduce_map(red.map) == red.map);
  CHECK(reduce_map(s) == s);

  const RationalMap id = RationalMap::identity(P2);
  CHECK(reduce_map(compose(id, s)) == s);

  const RationalMap sq = RationalMap::parse(P1, P1, {{"x0^2", "x1^2"}});
  CHECK(compose(sq, sq).to_strings() == std::vector<std::vector<std::string>>{{"x0^4", "x1^4"}});

  const RationalMap common =
      RationalMap::parse(P1, P1, {{"x0*(x0^2 + x1^2)", "x0*(x0*x1 - 2*x1^2)"}});
  CHECK(reduce_map(common).to_strings() ==
        std::vector<std::vector<std::string>>{{"x0^2 + x1^2", "x0*x1 - 2*x1^2"}});

  const RationalMap nonmono = RationalMap::parse(
      P2, P2, {{"(x0+x1)*x0^2", "(x0+x1)*(x1^2 - x2^2)", "(x0+x1)*(x0*x2)"}});
  CHECK(reduce_map(nonmono).multidegree() == IntMatrix{{2}});
  CHECK(reduce_map(reduce_map(nonmono)) == reduce_map(nonmono));
}

TEST_CASE("multidegree of composition is the matrix product") {
  const RationalMap f = RationalMap::parse(P1P1, P1P1,
                                           {{"x0^2*y0", "x1^2*y1"}, {"x0*y0", "x1*y1"}});
  const RationalMap g = RationalMap::parse(P1P1, P1P1,
                                           {{"x0*y0^2", "x1*y1^2"}, {"x0", "x1"}});
  CHECK(compose(f, g).multidegree() == f.multidegree() * g.multidegree());
  CHECK(compose(g, f).multidegree() == g.multidegree() * f.multidegree());
  CHECK_THROWS_AS(compose(f, cremona()), SpaceMismatch);
}

TEST_CASE("constructor invariants") {
  CHECK_THROWS_AS(RationalMap::parse(P2, P2, {{"x0", "x1^2", "x2"}}), HomogeneityError);
  CHECK_THROWS_AS(RationalMap::parse(P2, P2, {{"0", "0", "0"}}), ZeroMap);
  CHECK_THROWS_AS(RationalMap::parse(P2, P2, {{"x0", "x1"}}), SpaceMismatch);
}

TEST_CASE("projective equality") {
  const RationalMap a = RationalMap::parse(P1, P1, {{"2*x0", "2*x1"}});
  const RationalMap b = RationalMap::parse(P1, P1, {{"-x0", "-x1"}});
  CHECK(a.projectively_equal(b));
  CHECK_FALSE(a == b);
}

TEST_CASE("dominance") {
  CHECK(is_dominant(RationalMap::identity(P2)));
  CHECK_FALSE(is_dominant(RationalMap::parse(P2, P2, {{"x0", "x1", "x0 + x1"}})));
  CHECK(is_dominant(cremona()));
  CHECK_FALSE(is_dominant(RationalMap::parse(P1P1, P1P1, {{"x0", "x1"}, {"x0", "x1"}})));
  CHECK(is_dominant(RationalMap::parse(P1P1, P1P1, {{"x0^2", "x1^2"}, {"x0*y0", "x1*y1"}})));
}

TEST_CASE("topological degree") {
  CHECK(topological_degree(RationalMap::parse(P1, P1, {{"x0^3 + x1^3", "x0*x1^2"}})) == 3);
  CHECK(topological_degree(RationalMap::parse(P2, P2, {{"x0^2", "x1^2", "x2^2"}})) == 4);
  CHECK(topological_degree(cremona()) == 1);
  CHECK(topological_degree(RationalMap::identity(P2)) == 1);
  CHECK(topological_degree(RationalMap::parse(
            P1P1, P1P1, {{"x0^2", "x1^2"}, {"x0*y0^2", "x1*y1^2"}})) == 4);
  CHECK(topological_degree(RationalMap::parse(
            P1P1, P1P1, {{"x0^2", "x1^2"}, {"x0*y0", "x1*y1"}})) == 2);
}
