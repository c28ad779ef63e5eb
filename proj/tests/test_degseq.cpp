#include "doctest.h"

#include "dyndeg/degseq.hpp"
#include "dyndeg/monomial.hpp"

#include <cmath>

using namespace dyndeg;

namespace {

const AmbientSpace P2 = AmbientSpace::projective(2);

RationalMap cremona() { return RationalMap::parse(P2, P2, {{"x1*x2", "x0*x2", "x0*x1"}}); }
RationalMap squares() { return RationalMap::parse(P2, P2, {{"x0^2", "x1^2", "x2^2"}}); }

std::vector<long> scalars(const DegreeSequence &s) {
  std::vector<long> out;
  for (const auto &d : s.entries) out.push_back(d(0, 0).get_si());
  return out;
}

} // namespace

TEST_CASE("iterate_degrees examples") {
  CHECK(scalars(iterate_degrees(RationalMap::identity(P2), 5)) ==
        std::vector<long>{1, 1, 1, 1, 1, 1});
  CHECK(scalars(iterate_degrees(cremona(), 5)) == std::vector<long>{1, 2, 1, 2, 1, 2});
  CHECK(scalars(iterate_degrees(squares(), 4)) == std::vector<long>{1, 2, 4, 8, 16});
  CHECK_THROWS_AS(iterate_degrees(RationalMap::parse(P2, P2, {{"x0", "x1", "x0 + x1"}}), 3),
                  ValidationError);
}

TEST_CASE("resource caps truncate") {
  ResourceCaps caps;
  caps.max_terms = 40;
  const RationalMap f = RationalMap::parse(P2, P2, {{"x0^2 + x1*x2", "x1^2 - x0*x2", "x2^2"}});
  const DegreeSequence s = iterate_degrees(f, 8, caps);
  CHECK(s.truncated());
  CHECK(s.n_max() + 1 == *s.truncated_at);
  CHECK(s.n_max() >= 1);
}

TEST_CASE("lambda_estimate") {
  const DegreeSequence sq = iterate_degrees(squares(), 6);
  const Lambda1Report r = lambda_estimate(sq, 1);
  CHECK(r.certified);
  CHECK(r.best_estimate.lo == 2.0);
  CHECK(r.best_estimate.hi == 2.0);

  const Lambda1Report c = lambda_estimate(iterate_degrees(cremona(), 6), 1);
  CHECK(c.best_estimate.hi == 1.0);
  CHECK(c.best_estimate.lo == 1.0);
  CHECK_FALSE(c.certified);

  const MonomialMap fib(IntMatrix{{1, 1}, {1, 0}});
  const DegreeSequence fs =
      iterate_degrees(monomial_to_rational_map(fib, ToricModel::ProductP1), 12);
  const Lambda1Report fr = lambda_estimate(fs, 1);
  const double golden = (1 + std::sqrt(5.0)) / 2;
  CHECK(std::fabs(fr.best_estimate.hi - golden) < 1e-2);
  CHECK(fr.best_estimate.lo <= golden);

  DegreeSequence empty;
  CHECK_THROWS_AS(lambda_estimate(empty, 1), EmptySequence);
}

TEST_CASE("upper bounds are upper bounds") {
  const DegreeSequence s = iterate_degrees(squares(), 6);
  const Lambda1Report r = lambda_estimate(s, 1);
  double record = 1e300;
  for (const auto &b : r.upper_bounds) {
    CHECK(b.value.hi >= r.best_estimate.lo);
    record = std::min(record, b.value.hi);
  }
  CHECK(record == r.best_estimate.hi);
}

TEST_CASE("bound_constant") {
  CHECK(bound_constant(3, 1) == 3);
  CHECK(bound_constant(1, 1) == 1);
  CHECK(bound_constant(2, 3) == 18);
  CHECK(bound_constant(4, 7, true) == 1);
}

TEST_CASE("stability_check") {
  const StabilityVerdict sq = stability_check(iterate_degrees(squares(), 5));
  CHECK_FALSE(sq.instability_at);
  CHECK(sq.horizon == 5);

  const StabilityVerdict cr = stability_check(iterate_degrees(cremona(), 5));
  REQUIRE(cr.instability_at);
  CHECK(*cr.instability_at == 2);
  CHECK(format_polynomial(cr.removed_factor[0], P2) == "x0*x1*x2");
  CHECK(cr.horizon == 1);

  const MonomialMap cat(IntMatrix{{2, 1}, {1, 1}});
  const DegreeSequence cs = iterate_degrees(monomial_to_rational_map(cat, ToricModel::ProductP1), 5);
  const StabilityVerdict cv = stability_check(cs);
  CHECK(cv.horizon == 5);
  CHECK_FALSE(cv.instability_at);
  for (unsigned n = 0; n <= 5; ++n) CHECK(cs.entries[n] == cat.matrix().pow(n));
}

TEST_CASE("submultiplicativity") {
  for (const auto &f : {cremona(), squares()})
    CHECK(submultiplicativity_violations(iterate_degrees(f, 6)).empty());
  const MonomialMap m(IntMatrix{{1, -1}, {0, 1}});
  const auto s = iterate_degrees(monomial_to_rational_map(m, ToricModel::Projective), 6);
  CHECK(submultiplicativity_violations(s).empty());
}

TEST_CASE("conjugate_map") {
  const RatMatrix id = RatMatrix::identity(3);
  CHECK(conjugate_map(cremona(), {id}) == cremona());
  const RatMatrix L = to_rational(IntMatrix{{1, 2, 0}, {0, 1, -1}, {3, 0, 1}});
  const RationalMap g = conjugate_map(cremona(), {L});
  CHECK(scalars(iterate_degrees(g, 5)) == std::vector<long>{1, 2, 1, 2, 1, 2});
  const RatMatrix diag = to_rational(IntMatrix{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}});
  const RationalMap h = conjugate_map(squares(), {diag});
  CHECK(scalars(iterate_degrees(h, 4)) == std::vector<long>{1, 2, 4, 8, 16});
  CHECK_FALSE(h == squares());
  CHECK_THROWS_AS(conjugate_map(cremona(), {RatMatrix(3, 3)}), SingularMatrix);
}
