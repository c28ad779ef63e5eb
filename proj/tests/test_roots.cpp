#include "doctest.h"

#include "dyndeg/roots.hpp"

#include <cmath>

using namespace dyndeg;

namespace {

std::vector<Int> ints(std::initializer_list<long> v) {
  std::vector<Int> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

} // namespace

TEST_CASE("char poly") {
  CHECK(char_poly_exact(IntMatrix::identity(3)) == ints({1, -3, 3, -1}));
  CHECK(char_poly_exact(IntMatrix{{2, 1}, {1, 1}}) == ints({1, -3, 1}));
  // Companion matrix of x^3 - 2.
  CHECK(char_poly_exact(IntMatrix{{0, 0, 2}, {1, 0, 0}, {0, 1, 0}}) == ints({1, 0, 0, -2}));
}

TEST_CASE("spectral radius examples") {
  const double eps = 1e-12;
  const Interval id = spectral_radius_certified(IntMatrix::identity(3), eps);
  CHECK(id.contains(1.0));
  CHECK(id.width() <= eps);
  const Interval rot = spectral_radius_certified(IntMatrix{{0, -1}, {1, 0}}, eps);
  CHECK(rot.contains(1.0));
  const Interval cat = spectral_radius_certified(IntMatrix{{2, 1}, {1, 1}}, eps);
  CHECK(cat.contains((3 + std::sqrt(5.0)) / 2));
  CHECK(cat.width() <= eps);
  CHECK_THROWS_AS(spectral_radius_certified(IntMatrix{{1, 2}}, eps), DimensionMismatch);
}

TEST_CASE("multiplicities and zero roots") {
  // x^2 (x - 2)^3 (x^2 + 1)
  const auto roots = isolate_roots(ints({1, -6, 13, -14, 12, -8, 0, 0}), 1e-12);
  unsigned total = 0;
  bool found_two = false;
  for (const auto &r : roots) {
    total += r.multiplicity;
    if (r.modulus.contains(2.0)) {
      CHECK(r.multiplicity == 3);
      CHECK(r.real);
      found_two = true;
    }
  }
  CHECK(total == 7);
  CHECK(found_two);
  const auto rep = spectral_report(ints({1, -6, 13, -14, 12, -8, 0, 0}), 1e-12);
  REQUIRE(rep.root_moduli.size() == 7);
  CHECK(rep.radius.contains(2.0));
  CHECK(rep.root_moduli.back().hi == 0.0);
}

TEST_CASE("Lehmer polynomial") {
  const auto rep = spectral_report(ints({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1}), 1e-12);
  CHECK(rep.radius.lo > 1.1762808182);
  CHECK(rep.radius.hi < 1.1762808183);
  unsigned outside = 0;
  for (const auto &m : rep.root_moduli)
    if (m.lo > 1.0 + 1e-9) ++outside;
  CHECK(outside == 1);
}

TEST_CASE("product of moduli matches the constant term") {
  Rng rng(3);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 4;
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform_int(-4, 4);
    const Int det = determinant(m);
    const auto rep = spectral_report(m, 1e-12);
    Interval prod = Interval::point(1.0);
    for (const auto &x : rep.root_moduli) prod = prod * x;
    const Interval d = Interval::of(Int(abs(det)));
    CHECK(prod.lo <= d.hi + 1e-6 * (1 + d.hi));
    CHECK(prod.hi >= d.lo - 1e-6 * (1 + d.hi));
    // Radius of the transpose agrees.
    CHECK(spectral_report(m.transpose(), 1e-12).radius.overlaps(rep.radius));
  }
}

TEST_CASE("clustered roots") {
  // (x - 1)(x - 1 - 1/1000)(x + 1/3) scaled to integers.
  const auto roots = isolate_roots(ints({3000, -5003, 1002, 1001}), 1e-13);
  CHECK(roots.size() == 3);
  for (const auto &r : roots) CHECK(r.real);
}
