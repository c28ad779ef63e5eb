#include "doctest.h"

#include "dyndeg/relative.hpp"

using namespace dyndeg;

namespace {

const AmbientSpace P1P1({1, 1});

RationalMap skew(const std::string &a, const std::string &b, const std::string &c,
                 const std::string &d) {
  return RationalMap::parse(P1P1, P1P1, {{a, b}, {c, d}});
}

std::vector<long> small(const std::vector<Int> &v) {
  std::vector<long> out;
  for (const Int &x : v) out.push_back(x.get_si());
  return out;
}

} // namespace

TEST_CASE("build_semiconjugacy") {
  const auto sc = build_semiconjugacy(skew("x0^2", "x1^2", "x0*y0", "x1*y1"), 1);
  CHECK(sc.witnessed);
  CHECK(sc.g.to_string() == "[x0^2 : x1^2]");
  CHECK(sc.base_dim() == 1);
  CHECK(sc.fiber_dim() == 1);

  const auto id = build_semiconjugacy(RationalMap::identity(P1P1), 1);
  CHECK(id.g == RationalMap::identity(AmbientSpace::projective(1)));

  CHECK_THROWS_AS(build_semiconjugacy(skew("x0*y0", "x1*y0", "y0", "y1"), 1), NotTriangular);
  CHECK_THROWS_AS(build_semiconjugacy(RationalMap::identity(P1P1), 2), ValidationError);
}

TEST_CASE("relative degree examples") {
  const auto s1 = build_semiconjugacy(skew("x0^2", "x1^2", "x0*y0", "x1*y1"), 1);
  const auto r1 = relative_degree_sequence(s1, 1, 6);
  CHECK(small(r1.entries) == std::vector<long>{1, 1, 1, 1, 1, 1, 1});
  CHECK(r1.lambda.best_estimate.contains(1.0));
  CHECK(r1.fiber_samples.size() == 2);

  const auto s2 = build_semiconjugacy(skew("x0", "x1", "y0^2", "y1^2"), 1);
  const auto r2 = relative_degree_sequence(s2, 1, 6);
  CHECK(small(r2.entries) == std::vector<long>{1, 2, 4, 8, 16, 32, 64});
  CHECK(r2.lambda.best_estimate.lo == doctest::Approx(2.0));
  CHECK(r2.lambda.best_estimate.hi == doctest::Approx(2.0));

  const auto s3 = build_semiconjugacy(skew("x0^2", "x1^2", "x0*y0^2", "x1*y1^2"), 1);
  const auto r3 = relative_degree_sequence(s3, 1, 6);
  CHECK(small(r3.entries) == std::vector<long>{1, 2, 4, 8, 16, 32, 64});
  CHECK(r3.submultiplicativity_violations().empty());

  const auto r0 = relative_degree_sequence(s3, 0, 4);
  CHECK(r0.lambda.best_estimate.lo == 1.0);
  CHECK(r0.lambda.best_estimate.hi == 1.0);
  CHECK_THROWS_AS(relative_degree_sequence(s3, 2, 4), ValidationError);
}

TEST_CASE("fiber degrees agree across base points") {
  const auto sc = build_semiconjugacy(skew("x0^2", "x1^2", "x0*y0^2 + x1*y1^2", "x1*y0*y1"), 1);
  const auto a = fiber_degrees(sc, 1, 5, random_base_point(sc, 11));
  const auto b = fiber_degrees(sc, 1, 5, random_base_point(sc, 12));
  REQUIRE(a);
  REQUIRE(b);
  CHECK(*a == *b);
  // Over x1 = 0 the fiber map collapses to a constant.
  CHECK_FALSE(fiber_degrees(sc, 1, 3, {Int(1), Int(0)}));
}

TEST_CASE("degenerate fibers are reported") {
  // Fiber map [x0*y0 : x0*y0] is constant on every fiber.
  const auto sc = build_semiconjugacy(skew("x0", "x1", "y0", "y0"), 1);
  CHECK_THROWS_AS(relative_degree_sequence(sc, 1, 3), DegenerateFibers);
}

TEST_CASE("threefold fibers") {
  const AmbientSpace X({1, 1, 1});
  const auto f = RationalMap::parse(X, X, {{"x0^2", "x1^2"}, {"y0^3", "y1^3"}, {"z0^5", "z1^5"}});
  const auto sc = build_semiconjugacy(f, 1);
  CHECK(sc.fiber_dim() == 2);
  const auto r1 = relative_degree_sequence(sc, 1, 5);
  CHECK(small(r1.entries) == std::vector<long>{1, 5, 25, 125, 625, 3125});
  CHECK(r1.lambda.best_estimate.contains(5.0));
  CHECK_THROWS_AS(relative_degree_sequence(sc, 2, 3), Unsupported);
  const std::vector<Interval> lf{Interval::point(1), Interval::point(5), Interval::point(15),
                                 Interval::point(30)};
  const std::vector<Interval> lg{Interval::point(1), Interval::point(2)};
  const std::vector<Interval> lrel{Interval::point(1), Interval::point(5), Interval::point(15)};
  CHECK(product_formula_verify(sc, lf, lg, lrel).pass);
  CHECK_THROWS_AS(product_formula_verify(sc, lf, lg, {Interval::point(1)}), DimensionMismatch);
  CHECK(relative_bound_constant(sc) == 1);
}

TEST_CASE("projective plane fibers") {
  const AmbientSpace X({1, 2});
  const auto f = RationalMap::parse(X, X, {{"x0^2", "x1^2"}, {"x0*y0^2", "x1*y1^2", "x0*y2^2"}});
  const auto sc = build_semiconjugacy(f, 1);
  const auto lam = relative_lambdas(sc, 3);
  REQUIRE(lam.size() == 3);
  CHECK(lam[1].contains(2.0));
  CHECK(lam[2].hi >= 4.0);
  const auto top = relative_degree_sequence(sc, 2, 3);
  CHECK(small(top.entries) == std::vector<long>{1, 4, 16, 64});
}

TEST_CASE("surface primitivity probe") {
  const auto sc = build_semiconjugacy(skew("x0^2", "x1^2", "x0*y0^2", "x1*y1^2"), 1);
  const auto pt = [](double x) { return Interval::point(x); };
  CHECK(surface_primitivity_probe(sc, {pt(1), pt(2), pt(4)}) == FibrationVerdict::Consistent);
  CHECK(surface_primitivity_probe(sc, {pt(1), pt(2), pt(1)}) ==
        FibrationVerdict::ContradictsFibration);
  CHECK(surface_primitivity_probe(sc, {pt(1), pt(1), pt(1)}) == FibrationVerdict::Consistent);
  CHECK(to_string(FibrationVerdict::ContradictsFibration) == "CONTRADICTS_FIBRATION");

  const AmbientSpace X({1, 1, 1});
  const auto three = build_semiconjugacy(RationalMap::identity(X), 1);
  CHECK_THROWS_AS(surface_primitivity_probe(three, {pt(1), pt(1), pt(1)}), ShapeMismatch);
}
