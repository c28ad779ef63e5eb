#include "doctest.h"

#include "dyndeg/cyclelat.hpp"

using namespace dyndeg;

namespace {

RatVector vec(std::initializer_list<long> v) {
  RatVector out;
  for (long x : v) out.emplace_back(x);
  return out;
}

std::vector<Int> ints(std::initializer_list<long> v) {
  std::vector<Int> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

} // namespace

TEST_CASE("exact LP") {
  // min x + y, x + 2y = 4, x - y = 1 -> x = 2, y = 1.
  const RatMatrix A = to_rational(IntMatrix{{1, 2}, {1, -1}});
  const LpResult r = solve_lp(A, vec({4, 1}), vec({1, 1}));
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == 3);
  CHECK(certifies_optimum(A, vec({4, 1}), vec({1, 1}), r));
  CHECK(solve_lp(to_rational(IntMatrix{{1, 1}}), vec({-1}), vec({0, 0})).status ==
        LpStatus::Infeasible);
  CHECK(solve_lp(to_rational(IntMatrix{{1, -1}}), vec({0}), vec({-1, 0})).status ==
        LpStatus::Unbounded);
  // Redundant equality rows.
  const RatMatrix R = to_rational(IntMatrix{{1, 1, 0}, {2, 2, 0}, {0, 1, 1}});
  const LpResult rr = solve_lp(R, vec({2, 4, 3}), vec({1, 2, 3}));
  REQUIRE(rr.status == LpStatus::Optimal);
  CHECK(certifies_optimum(R, vec({2, 4, 3}), vec({1, 2, 3}), rr));
}

TEST_CASE("intersect") {
  const CycleLattice p2 = projective_lattice(2, 1);
  CHECK(intersect(p2, vec({1}), vec({1})) == 1);
  const CycleLattice b3 = blowup_lattice(3);
  CHECK(intersect(b3, vec({0, 1, 0, 0}), vec({0, 1, 0, 0})) == -1);
  CHECK(intersect(b3, vec({0, 1, 0, 0}), vec({0, 0, 1, 0})) == 0);
  CHECK(intersect(b3, vec({1, 0, 0, 0}), vec({0, 0, 0, 1})) == 0);
  CHECK(intersect(b3, vec({2, -1, -1, -1}), vec({2, -1, -1, -1})) == 1);
  CHECK_THROWS_AS(intersect(b3, vec({1, 0}), vec({1, 0, 0, 0})), DimensionMismatch);
}

TEST_CASE("norm_one") {
  const CycleLattice b1 = blowup_lattice(1);
  CHECK(norm_one(b1, vec({1, -1})).value == 1);
  CHECK(norm_one(b1, vec({0, 0})).value == 0);
  for (const RatVector &g : b1.effective_generators) CHECK(norm_one(b1, g).value == b1.degree(g));
  // E1 - (H - E1): the difference of two generators.
  const NormOneResult d = norm_one(b1, vec({-1, 2}));
  CHECK(d.value == 2);
  RatVector diff(2);
  for (int i = 0; i < 2; ++i) diff[i] = d.v1[i] - d.v2[i];
  CHECK(diff == vec({-1, 2}));
  CHECK(d.value == b1.degree(d.v1) + b1.degree(d.v2));

  CycleLattice thin = projective_lattice(2, 1);
  thin.labels = {"a", "b"};
  thin.pairing = to_rational(IntMatrix{{1, 0}, {0, 1}});
  thin.degree_vector = vec({1, 1});
  thin.effective_generators = {vec({1, 0})};
  CHECK_THROWS_AS(norm_one(thin, vec({0, 1})), Infeasible);
}

TEST_CASE("norm axioms on random vectors") {
  const CycleLattice b1 = blowup_lattice(1);
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    const RatVector v = {Rat(rng.uniform_int(-9, 9)), Rat(rng.uniform_int(-9, 9))};
    const RatVector w = {Rat(rng.uniform_int(-9, 9)), Rat(rng.uniform_int(-9, 9))};
    Rat s(rng.uniform_int(-5, 5), 3);
    s.canonicalize();
    RatVector sv = v, vw = v;
    for (int i = 0; i < 2; ++i) {
      sv[i] *= s;
      vw[i] += w[i];
    }
    CHECK(norm_one(b1, sv).value == abs(s) * norm_one(b1, v).value);
    CHECK(norm_one(b1, vw).value <= norm_one(b1, v).value + norm_one(b1, w).value);
  }
}

TEST_CASE("hodge signature") {
  CHECK(hodge_signature(to_rational(IntMatrix{{1}})) == Inertia{1, 0, 0});
  CHECK(hodge_signature(to_rational(
            IntMatrix{{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}})) ==
        Inertia{1, 3, 0});
  CHECK(hodge_signature(RatMatrix(3, 3)) == Inertia{0, 0, 3});
  CHECK(hodge_signature(to_rational(IntMatrix{{0, 1}, {1, 0}})) == Inertia{1, 1, 0});
  for (unsigned m = 0; m <= 5; ++m)
    CHECK(hodge_signature(blowup_lattice(m).pairing) == Inertia{1, m, 0});

  // Congruence by random unimodular matrices keeps the inertia.
  Rng rng(23);
  const RatMatrix form = blowup_lattice(4).pairing;
  for (int t = 0; t < 10; ++t) {
    IntMatrix u = IntMatrix::identity(5);
    for (int s = 0; s < 6; ++s) {
      const auto i = static_cast<std::size_t>(rng.uniform(0, 4));
      const auto j = static_cast<std::size_t>(rng.uniform(0, 4));
      if (i == j) continue;
      const Int c = rng.uniform_int(-2, 2);
      for (std::size_t k = 0; k < 5; ++k) u(i, k) += c * u(j, k);
    }
    const RatMatrix uq = to_rational(u);
    CHECK(hodge_signature(uq.transpose() * form * uq) == Inertia{1, 4, 0});
  }
  CHECK_THROWS_AS(hodge_signature(to_rational(IntMatrix{{1, 2}, {0, 1}})), ValidationError);
}

TEST_CASE("lattice actions") {
  const PullbackAction cr = cremona_blowup_action();
  const RatMatrix &M = cr.at(1);
  CHECK(M * M == RatMatrix::identity(4));
  // sigma^* preserves the pairing.
  const RatMatrix Q = blowup_lattice(3).pairing;
  CHECK(M.transpose() * Q * M == Q);
  CHECK(spectral_data(cr, 1).radius.contains(1.0));

  const PullbackAction cox = coxeter_e10_action();
  IntMatrix ci(11, 11);
  for (std::size_t i = 0; i < 11; ++i)
    for (std::size_t j = 0; j < 11; ++j) ci(i, j) = cox.at(1)(i, j).get_num();
  // (x - 1) times Lehmer's polynomial.
  const auto cp = char_poly_exact(ci);
  const auto lehmer = ints({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
  std::vector<Int> prod(12, Int(0));
  for (std::size_t i = 0; i < lehmer.size(); ++i) {
    prod[i] += lehmer[i];
    prod[i + 1] -= lehmer[i];
  }
  CHECK(cp == prod);
  const Interval r1 = spectral_data(cox, 1).radius;
  CHECK(r1.lo >= 1.17627);
  CHECK(r1.hi <= 1.17629);
}

TEST_CASE("simplicity_check") {
  PullbackAction d;
  d.by_codim[1] = to_rational(IntMatrix{{2, 0}, {0, 1}});
  CHECK(simplicity_check(d, Interval::point(1.0)).verdict == Verdict::Pass);

  CHECK(simplicity_check(cremona_blowup_action(), Interval::point(1.0)).verdict ==
        Verdict::HypothesisNotMet);

  const SimplicityResult lehmer = simplicity_check(coxeter_e10_action(), Interval::point(1.0));
  CHECK(lehmer.verdict == Verdict::Pass);
  CHECK(lehmer.simple);
  CHECK(lehmer.max_other.hi <= 1.0 + 1e-9);

  PullbackAction dbl;
  dbl.by_codim[1] = to_rational(IntMatrix{{3, 0}, {0, 3}});
  CHECK(simplicity_check(dbl, Interval::point(1.0)).verdict == Verdict::Fail);
}

TEST_CASE("cone preservation") {
  PullbackAction a;
  a.by_codim[1] = to_rational(IntMatrix{{2}});
  a.by_codim[2] = to_rational(IntMatrix{{4}});
  const ConeCheckResult r = cone_preservation_r1r2_check(a, projective_lattice(2, 2));
  CHECK(r.verdict == Verdict::Pass);
  CHECK_FALSE(r.simplicity);

  PullbackAction cat;
  cat.by_codim[1] = to_rational(IntMatrix{{2, 1}, {1, 1}});
  cat.by_codim[2] = to_rational(IntMatrix{{1}});
  const ConeCheckResult c = cone_preservation_r1r2_check(cat, projective_lattice(2, 2));
  CHECK(c.verdict == Verdict::Pass);
  REQUIRE(c.simplicity);
  CHECK(c.simplicity->verdict == Verdict::Pass);
  CHECK((c.r1 * c.r1).lo > 6.85);

  PullbackAction bad;
  bad.by_codim[1] = to_rational(IntMatrix{{1}});
  bad.by_codim[2] = to_rational(IntMatrix{{-1}});
  CHECK_THROWS_AS(cone_preservation_r1r2_check(bad, projective_lattice(2, 2)), ConeNotPreserved);
}
