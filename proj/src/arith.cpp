#include "dyndeg/arith.hpp"
#include "dyndeg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mpfr.h>

namespace dyndeg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr mpfr_prec_t kPrec = 256;

double down(double x) { return std::nextafter(x, -kInf); }
double up(double x) { return std::nextafter(x, kInf); }

class Mpfr {
public:
  explicit Mpfr(mpfr_prec_t prec = kPrec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr &) = delete;
  Mpfr &operator=(const Mpfr &) = delete;
  mpfr_ptr get() { return v_; }

private:
  mpfr_t v_;
};

// Rounded-to-nearest result plus the sign of its error, so each bound can be
// widened only when the floating result is inexact.
struct Rounded {
  double value;
  int err_sign; // sign of (exact - value)
};

Rounded sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, (err > 0) - (err < 0)};
}

Rounded product(double a, double b) {
  const double p = a * b;
  const double err = std::fma(a, b, -p);
  return {p, (err > 0) - (err < 0)};
}

double lower(Rounded r) { return r.err_sign < 0 ? down(r.value) : r.value; }
double upper(Rounded r) { return r.err_sign > 0 ? up(r.value) : r.value; }

} // namespace

Interval operator+(const Interval &a, const Interval &b) {
  return {lower(sum(a.lo, b.lo)), upper(sum(a.hi, b.hi))};
}

Interval operator-(const Interval &a, const Interval &b) {
  return {lower(sum(a.lo, -b.hi)), upper(sum(a.hi, -b.lo))};
}

Interval operator*(const Interval &a, const Interval &b) {
  const Rounded p[] = {product(a.lo, b.lo), product(a.lo, b.hi),
                       product(a.hi, b.lo), product(a.hi, b.hi)};
  Interval r{kInf, -kInf};
  for (const Rounded &x : p) {
    r.lo = std::min(r.lo, lower(x));
    r.hi = std::max(r.hi, upper(x));
  }
  return r;
}

Interval max(const Interval &a, const Interval &b) {
  return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval sqrt(const Interval &a) {
  Interval r{std::sqrt(std::max(a.lo, 0.0)), std::sqrt(std::max(a.hi, 0.0))};
  // sqrt is correctly rounded; widen unless exact.
  if (std::fma(r.lo, r.lo, -std::max(a.lo, 0.0)) != 0.0) r.lo = down(r.lo);
  if (std::fma(r.hi, r.hi, -std::max(a.hi, 0.0)) != 0.0) r.hi = up(r.hi);
  return {std::max(r.lo, 0.0), r.hi};
}

double distance(const Interval &a, const Interval &b) {
  return std::max({0.0, a.lo - b.hi, b.lo - a.hi});
}

namespace {
double rootn_dir(mpfr_ptr x, unsigned n, mpfr_rnd_t rnd) {
  Mpfr r;
  mpfr_rootn_ui(r.get(), x, n, rnd);
  return mpfr_get_d(r.get(), rnd);
}
} // namespace

Interval nth_root(const Int &value, unsigned n) {
  if (n == 0) throw DimensionMismatch("nth_root: n must be positive");
  if (value < 0) throw DimensionMismatch("nth_root: negative radicand");
  // Enough precision to hold the radicand exactly, so the directed roots
  // below are correctly rounded.
  Mpfr x(std::max<mpfr_prec_t>(kPrec, bit_length(value) + 1));
  mpfr_set_z(x.get(), value.get_mpz_t(), MPFR_RNDN);
  return {rootn_dir(x.get(), n, MPFR_RNDD), rootn_dir(x.get(), n, MPFR_RNDU)};
}

Interval nth_root(const Interval &value, unsigned n) {
  if (n == 0) throw DimensionMismatch("nth_root: n must be positive");
  Mpfr lo, hi;
  mpfr_set_d(lo.get(), std::max(value.lo, 0.0), MPFR_RNDD);
  mpfr_set_d(hi.get(), std::max(value.hi, 0.0), MPFR_RNDU);
  return {rootn_dir(lo.get(), n, MPFR_RNDD), rootn_dir(hi.get(), n, MPFR_RNDU)};
}

namespace {
double rat_dir(const Rat &q, mpfr_rnd_t rnd) {
  Mpfr x;
  mpfr_set_q(x.get(), q.get_mpq_t(), rnd);
  return mpfr_get_d(x.get(), rnd);
}
double sqrt_dir(const Rat &q, mpfr_rnd_t rnd) {
  if (q < 0) throw DimensionMismatch("sqrt of negative rational");
  Mpfr x, r;
  mpfr_set_q(x.get(), q.get_mpq_t(), rnd);
  mpfr_sqrt(r.get(), x.get(), rnd);
  return mpfr_get_d(r.get(), rnd);
}
} // namespace

double round_down(const Rat &q) { return rat_dir(q, MPFR_RNDD); }
double round_up(const Rat &q) { return rat_dir(q, MPFR_RNDU); }
double sqrt_down(const Rat &q) { return sqrt_dir(q, MPFR_RNDD); }
double sqrt_up(const Rat &q) { return sqrt_dir(q, MPFR_RNDU); }

Interval Interval::of(const Rat &q) { return {round_down(q), round_up(q)}; }

std::string to_string(const Int &a) { return a.get_str(); }

std::string to_string(const Rat &q) {
  Rat c = q;
  c.canonicalize();
  return c.get_str();
}

Rat parse_rational(const std::string &text) {
  Rat q;
  std::string t = text;
  t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
  if (t.empty() || q.set_str(t, 10) != 0 || q.get_den() == 0)
    throw ParseError("not a rational number: '" + text + "'");
  q.canonicalize();
  return q;
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) std::swap(lo, hi);
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

std::int64_t Rng::nonzero(std::int64_t bound) {
  std::int64_t x = 0;
  while (x == 0) x = uniform(-bound, bound);
  return x;
}

} // namespace dyndeg
