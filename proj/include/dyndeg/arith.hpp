#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace dyndeg {

using Int = mpz_class;
using Rat = mpq_class;

inline std::size_t bit_length(const Int &a) {
  return a == 0 ? 0 : mpz_sizeinbase(a.get_mpz_t(), 2);
}

inline Int gcd(const Int &a, const Int &b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int &a, const Int &b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Int pow(const Int &a, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
  return r;
}

// Exact quotient; the caller guarantees divisibility.
inline Int divexact(const Int &a, const Int &b) {
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline bool divisible(const Int &a, const Int &b) {
  return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0;
}

// Residue in [0, m).
inline std::uint64_t mod_u64(const Int &a, std::uint64_t m) {
  return mpz_fdiv_ui(a.get_mpz_t(), m);
}

// Closed floating interval [lo, hi]. Arithmetic rounds outward by one ulp
// after each round-to-nearest operation, so results always enclose the exact
// value of the operation on the enclosed reals.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double x) { return {x, x}; }
  // Tightest double enclosure of an exact rational / integer.
  static Interval of(const Rat &q);
  static Interval of(const Int &z) { return of(Rat(z)); }

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool overlaps(const Interval &o) const { return lo <= o.hi && o.lo <= hi; }
  bool operator==(const Interval &) const = default;
};

Interval operator+(const Interval &a, const Interval &b);
Interval operator-(const Interval &a, const Interval &b);
Interval operator*(const Interval &a, const Interval &b);
Interval max(const Interval &a, const Interval &b);
Interval sqrt(const Interval &a);
// Gap between two intervals; zero when they overlap.
double distance(const Interval &a, const Interval &b);
// Enclosure of value^(1/n) for an exact nonnegative value.
Interval nth_root(const Int &value, unsigned n);
Interval nth_root(const Interval &value, unsigned n);

// Directed conversions of exact rationals.
double round_down(const Rat &q);
double round_up(const Rat &q);
// sqrt of a nonnegative rational, rounded down / up.
double sqrt_down(const Rat &q);
double sqrt_up(const Rat &q);

std::string to_string(const Int &a);
std::string to_string(const Rat &q);
Rat parse_rational(const std::string &text);

// Seeded generator whose output is identical on every platform: only raw
// mt19937_64 words are consumed, no implementation-defined distributions.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  Int uniform_int(std::int64_t lo, std::int64_t hi) {
    return Int(static_cast<long>(uniform(lo, hi)));
  }
  // Nonzero integer in [-bound, bound].
  std::int64_t nonzero(std::int64_t bound);

private:
  std::mt19937_64 engine_;
};

} // namespace dyndeg
