#include "dyndeg/roots.hpp"

#include "dyndeg/mpoly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace dyndeg {
namespace {

constexpr unsigned kStepBudget = 10000;

struct Gauss {
  Rat re, im;
};

Gauss operator+(const Gauss &a, const Gauss &b) { return {a.re + b.re, a.im + b.im}; }
Gauss operator-(const Gauss &a, const Gauss &b) { return {a.re - b.re, a.im - b.im}; }
Gauss operator*(const Gauss &a, const Gauss &b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Rat norm(const Gauss &a) { return a.re * a.re + a.im * a.im; }
Gauss operator/(const Gauss &a, const Gauss &b) {
  const Rat n = norm(b);
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
bool is_zero(const Gauss &a) { return a.re == 0 && a.im == 0; }

// Coarse log2 of a positive rational.
long log2_approx(const Rat &q) {
  return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
}

// Truncation toward zero onto the grid 2^-bits; odd under negation, so
// conjugate-symmetric sets stay symmetric.
Rat truncate(const Rat &x, unsigned long bits) {
  Int scaled = x.get_num() << bits;
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den_mpz_t());
  Rat r(q, Int(1) << bits);
  r.canonicalize();
  return r;
}

Rat from_long_double(long double x) {
  if (x == 0) return 0;
  int e = 0;
  const long double m = std::frexp(x, &e); // |m| in [0.5, 1)
  const long double scaled = std::ldexp(std::fabs(m), 64);
  const auto mant = static_cast<unsigned long long>(scaled);
  Int num;
  mpz_import(num.get_mpz_t(), 1, 1, sizeof(mant), 0, 0, &mant);
  if (m < 0) num = -num;
  Rat r;
  const long shift = static_cast<long>(e) - 64;
  if (shift >= 0)
    r = Rat(num << static_cast<unsigned long>(shift));
  else
    r = Rat(num, Int(1) << static_cast<unsigned long>(-shift));
  r.canonicalize();
  return r;
}

long double to_long_double(const Int &a) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, a.get_mpz_t());
  return std::ldexp(static_cast<long double>(m), static_cast<int>(e));
}

using Cld = std::complex<long double>;

std::vector<Cld> aberth(const std::vector<Int> &q) {
  const std::size_t n = q.size() - 1;
  std::vector<long double> a(q.size());
  const long double lead = to_long_double(q[0]);
  for (std::size_t i = 0; i <= n; ++i) a[i] = to_long_double(q[i]) / lead;

  long double bound = 0;
  for (std::size_t i = 1; i <= n; ++i)
    bound = std::max(bound, std::pow(std::fabs(a[i]), 1.0L / static_cast<long double>(i)));
  const long double r0 = std::max(2 * bound, 1e-3L);
  std::vector<Cld> z(n);
  const long double two_pi = 6.283185307179586476925286766559L;
  for (std::size_t k = 0; k < n; ++k)
    z[k] = std::polar(r0, two_pi * static_cast<long double>(k) / static_cast<long double>(n) + 0.4L);

  for (int iter = 0; iter < 2000; ++iter) {
    bool done = true;
    for (std::size_t j = 0; j < n; ++j) {
      Cld p = a[0], dp = 0;
      for (std::size_t i = 1; i <= n; ++i) {
        dp = dp * z[j] + p;
        p = p * z[j] + a[i];
      }
      if (p == Cld(0)) continue;
      const Cld ratio = p / dp;
      Cld s = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) s += Cld(1) / (z[j] - z[k]);
      const Cld w = ratio / (Cld(1) - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[j] -= w;
      if (std::abs(w) > 1e-18L * (1 + std::abs(z[j]))) done = false;
    }
    if (done) break;
  }
  return z;
}

// Makes the approximation set closed under conjugation: a point whose
// mirror image is nearest to itself goes onto the real axis, the others are
// paired with their nearest mirror partner.
void snap_conjugates(std::vector<Cld> &z) {
  const std::size_t n = z.size();
  std::vector<bool> done(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    if (done[j]) continue;
    const Cld mirror = std::conj(z[j]);
    std::size_t best = n;
    long double best_d = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j || done[k]) continue;
      const long double d = std::abs(z[k] - mirror);
      if (best == n || d < best_d) {
        best = k;
        best_d = d;
      }
    }
    if (best == n || 2 * std::fabs(z[j].imag()) <= best_d) {
      z[j] = Cld(z[j].real(), 0);
      done[j] = true;
    } else {
      const Cld avg = 0.5L * (z[j] + std::conj(z[best]));
      z[j] = avg;
      z[best] = std::conj(avg);
      done[j] = done[best] = true;
    }
  }
}

Gauss eval(const std::vector<Int> &q, const Gauss &z) {
  Gauss acc{Rat(q[0]), 0};
  for (std::size_t i = 1; i < q.size(); ++i) acc = acc * z + Gauss{Rat(q[i]), 0};
  return acc;
}

Interval modulus_of(const Gauss &c, double radius) {
  const Rat n2 = norm(c);
  Interval m = Interval{sqrt_down(n2), sqrt_up(n2)} + Interval{-radius, radius};
  m.lo = std::max(m.lo, 0.0);
  return m;
}

std::optional<std::vector<RootEnclosure>> refine(const std::vector<Int> &q,
                                                 std::vector<Cld> approx, double eps,
                                                 bool symmetric, unsigned &steps) {
  const std::size_t n = q.size() - 1;
  if (symmetric) snap_conjugates(approx);
  std::vector<Gauss> z(n);
  for (std::size_t j = 0; j < n; ++j)
    z[j] = {from_long_double(approx[j].real()), from_long_double(approx[j].imag())};
  unsigned long bits = 64;

  const Rat lc(q[0]);
  while (steps < kStepBudget) {
    ++steps;
    // Separate coincident points.
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (is_zero(z[j] - z[k])) z[k].re += Rat(Int(static_cast<unsigned long>(k)), Int(1) << bits);

    std::vector<Gauss> w(n);
    for (std::size_t j = 0; j < n; ++j) {
      Gauss den{lc, 0};
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) den = den * (z[j] - z[k]);
      w[j] = eval(q, z[j]) / den;
    }

    std::vector<Gauss> centers(n);
    std::vector<double> radii(n);
    long worst = -100000;
    bool narrow = true;
    for (std::size_t j = 0; j < n; ++j) {
      centers[j] = z[j] - w[j];
      const Rat nw = norm(w[j]);
      const Interval absw{sqrt_down(nw), sqrt_up(nw)};
      radii[j] = (Interval::point(static_cast<double>(n - 1)) * absw).hi;
      if (nw != 0) worst = std::max(worst, log2_approx(nw) / 2);
      const Interval m = modulus_of(centers[j], radii[j]);
      if (m.width() > eps * std::max(1.0, m.hi)) narrow = false;
    }
    bool disjoint = true;
    for (std::size_t j = 0; j < n && disjoint; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Rat r = Rat(radii[j]) + Rat(radii[k]);
        if (r * r >= norm(centers[j] - centers[k])) {
          disjoint = false;
          break;
        }
      }
    if (disjoint && narrow) {
      std::vector<RootEnclosure> out;
      for (std::size_t j = 0; j < n; ++j) {
        RootEnclosure e;
        e.re = centers[j].re;
        e.im = centers[j].im;
        e.radius = radii[j];
        e.modulus = modulus_of(centers[j], radii[j]);
        e.real = centers[j].im == 0;
        out.push_back(std::move(e));
      }
      return out;
    }

    const long want = std::max<long>(64, 2 * std::max<long>(-worst, 0) + 64);
    bits = static_cast<unsigned long>(std::min<long>(want, 1L << 16));
    for (std::size_t j = 0; j < n; ++j)
      z[j] = {truncate(centers[j].re, bits), truncate(centers[j].im, bits)};
    // A broken conjugate pairing never converges; give up early.
    if (symmetric && steps % 200 == 0) return std::nullopt;
  }
  return std::nullopt;
}

std::vector<Int> to_dense(const MPoly &p) {
  const std::size_t d = p.degree(0);
  std::vector<Int> out(d + 1, Int(0));
  for (const Term &t : p.terms()) out[d - t.exp[0]] = t.coef;
  return out;
}

MPoly from_dense(const std::vector<Int> &c) {
  std::vector<Term> terms;
  const std::size_t d = c.size() - 1;
  for (std::size_t i = 0; i <= d; ++i)
    if (c[i] != 0) terms.push_back({Exponent{static_cast<std::uint32_t>(d - i)}, c[i]});
  return MPoly::from_terms(1, std::move(terms));
}

MPoly exact_quotient(const MPoly &a, const MPoly &b) {
  auto q = a.divide(b);
  if (!q) throw std::logic_error("internal: squarefree decomposition division failed");
  return *q;
}

// Yun's algorithm over Z.
std::vector<std::pair<MPoly, unsigned>> squarefree_parts(const MPoly &a) {
  std::vector<std::pair<MPoly, unsigned>> out;
  const MPoly b = a.derivative(0);
  const MPoly c = gcd(a, b);
  MPoly w = exact_quotient(a, c);
  MPoly y = exact_quotient(b, c);
  MPoly z = y - w.derivative(0);
  for (unsigned i = 1; w.degree(0) > 0; ++i) {
    const MPoly g = z.is_zero() ? w : gcd(w, z);
    if (g.degree(0) > 0) out.emplace_back(g.primitive(), i);
    w = exact_quotient(w, g);
    y = z.is_zero() ? z : exact_quotient(z, g);
    z = y - w.derivative(0);
  }
  return out;
}

} // namespace

std::vector<RootEnclosure> isolate_roots(const std::vector<Int> &coeffs, double eps) {
  if (!(eps > 0)) throw ValidationError("eps must be positive");
  std::vector<Int> c = coeffs;
  while (!c.empty() && c.front() == 0) c.erase(c.begin());
  if (c.empty()) throw ValidationError("zero polynomial has no isolated roots");
  std::vector<RootEnclosure> out;
  unsigned zeros = 0;
  while (c.size() > 1 && c.back() == 0) {
    c.pop_back();
    ++zeros;
  }
  if (zeros > 0) {
    RootEnclosure e;
    e.re = 0;
    e.im = 0;
    e.modulus = {0.0, 0.0};
    e.multiplicity = zeros;
    e.real = true;
    out.push_back(e);
  }
  if (c.size() == 1) return out;

  unsigned steps = 0;
  for (const auto &[factor, mult] : squarefree_parts(from_dense(c))) {
    const std::vector<Int> q = to_dense(factor);
    std::vector<RootEnclosure> roots;
    if (q.size() == 2) {
      RootEnclosure e;
      e.re = Rat(-q[1], q[0]);
      e.re.canonicalize();
      e.im = 0;
      e.modulus = Interval::of(Rat(abs(e.re)));
      e.real = true;
      roots.push_back(e);
    } else {
      const auto approx = aberth(q);
      auto r = refine(q, approx, eps, true, steps);
      if (!r) r = refine(q, approx, eps, false, steps);
      if (!r) throw NonConvergence("root isolation exceeded " + std::to_string(kStepBudget) + " steps");
      roots = std::move(*r);
    }
    for (auto &e : roots) {
      e.multiplicity = mult;
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<Int> clear_denominators(const std::vector<Rat> &coeffs) {
  Int l = 1;
  for (const Rat &q : coeffs) l = lcm(l, q.get_den());
  std::vector<Int> out;
  for (const Rat &q : coeffs) out.push_back(q.get_num() * (l / q.get_den()));
  return out;
}

SpectralReport spectral_report(const std::vector<Int> &char_poly, double eps) {
  SpectralReport r;
  r.char_poly = char_poly;
  r.roots = isolate_roots(char_poly, eps);
  for (const auto &e : r.roots)
    for (unsigned m = 0; m < e.multiplicity; ++m) r.root_moduli.push_back(e.modulus);
  std::stable_sort(r.root_moduli.begin(), r.root_moduli.end(),
                   [](const Interval &a, const Interval &b) { return a.mid() > b.mid(); });
  r.radius = {0.0, 0.0};
  for (const Interval &m : r.root_moduli) r.radius = max(r.radius, m);
  return r;
}

SpectralReport spectral_report(const IntMatrix &m, double eps) {
  if (!m.is_square()) throw DimensionMismatch("spectral data needs a square matrix");
  if (m.rows() == 0) return spectral_report(std::vector<Int>{Int(1)}, eps);
  return spectral_report(char_poly_exact(m), eps);
}

SpectralReport spectral_report(const RatMatrix &m, double eps) {
  if (!m.is_square()) throw DimensionMismatch("spectral data needs a square matrix");
  if (m.rows() == 0) return spectral_report(std::vector<Int>{Int(1)}, eps);
  return spectral_report(clear_denominators(char_poly_exact(m)), eps);
}

Interval spectral_radius_certified(const IntMatrix &m, double eps) {
  return spectral_report(m, eps).radius;
}

} // namespace dyndeg
