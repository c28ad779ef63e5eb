#include "dyndeg/mpoly.hpp"
#include "dyndeg/errors.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace dyndeg {
namespace {

constexpr std::uint64_t kMaxExponent = std::uint64_t{1} << 31;

struct ExponentHash {
  std::size_t operator()(const Exponent &e) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint32_t x : e) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using Accumulator = std::unordered_map<Exponent, Int, ExponentHash>;

Exponent add_exponents(const Exponent &a, const Exponent &b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::uint64_t s = std::uint64_t{a[i]} + b[i];
    if (s >= kMaxExponent) throw ResourceLimit("exponent overflow");
    r[i] = static_cast<std::uint32_t>(s);
  }
  return r;
}

bool exponent_divides(const Exponent &d, const Exponent &e) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > e[i]) return false;
  return true;
}

MPoly from_accumulator(std::size_t nvars, Accumulator &&acc) {
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto &[e, c] : acc)
    if (c != 0) terms.push_back({e, std::move(c)});
  return MPoly::from_terms(nvars, std::move(terms));
}

// Merge of two sorted term vectors computing a + sign * b.
std::vector<Term> merge(const std::vector<Term> &a, const std::vector<Term> &b,
                        int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && lex_greater(a[i].exp, b[j].exp))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || lex_greater(b[j].exp, a[i].exp)) {
      out.push_back(b[j++]);
      if (sign < 0) out.back().coef = -out.back().coef;
    } else {
      Int c = sign < 0 ? Int(a[i].coef - b[j].coef) : Int(a[i].coef + b[j].coef);
      if (c != 0) out.push_back({a[i].exp, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

// ---- arithmetic modulo the Mersenne prime 2^61 - 1 -----------------------

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 x = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(x & kPrime) +
                    static_cast<std::uint64_t>(x >> 61);
  if (r >= kPrime) r -= kPrime;
  return r;
}
std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r >= kPrime ? r - kPrime : r;
}
std::uint64_t submod(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + kPrime - b;
}
std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}
std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

using UPolyP = std::vector<std::uint64_t>; // low degree first, trimmed

void trim(UPolyP &a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

UPolyP mul(const UPolyP &a, const UPolyP &b) {
  if (a.empty() || b.empty()) return {};
  UPolyP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = addmod(r[i + j], mulmod(a[i], b[j]));
  }
  trim(r);
  return r;
}

UPolyP rem(UPolyP a, const UPolyP &b) {
  const std::uint64_t inv = invmod(b.back());
  while (a.size() >= b.size() && !a.empty()) {
    const std::uint64_t f = mulmod(a.back(), inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j)
      a[shift + j] = submod(a[shift + j], mulmod(f, b[j]));
    trim(a);
  }
  return a;
}

UPolyP gcd_modp(UPolyP a, UPolyP b) {
  while (!b.empty()) {
    UPolyP r = rem(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Restriction of a polynomial to the line t -> t*u + v, modulo kPrime.
class LineRestriction {
public:
  LineRestriction(std::vector<std::uint64_t> u, std::vector<std::uint64_t> v)
      : u_(std::move(u)), v_(std::move(v)), cache_(u_.size()) {}

  UPolyP restrict(const MPoly &f) {
    UPolyP acc;
    for (const Term &t : f.terms()) {
      UPolyP prod{mod_u64(t.coef, kPrime)};
      for (std::size_t i = 0; i < t.exp.size() && !prod.empty(); ++i)
        if (t.exp[i] > 0) prod = mul(prod, power(i, t.exp[i]));
      if (acc.size() < prod.size()) acc.resize(prod.size(), 0);
      for (std::size_t k = 0; k < prod.size(); ++k)
        acc[k] = addmod(acc[k], prod[k]);
    }
    trim(acc);
    return acc;
  }

private:
  const UPolyP &power(std::size_t var, std::uint32_t e) {
    auto &cache = cache_[var];
    if (auto it = cache.find(e); it != cache.end()) return it->second;
    UPolyP r;
    if (e == 1) {
      r = {v_[var], u_[var]};
      trim(r);
    } else {
      const UPolyP &half = power(var, e / 2);
      r = mul(half, half);
      if (e % 2) r = mul(r, power(var, 1));
    }
    return cache.emplace(e, std::move(r)).first->second;
  }

  std::vector<std::uint64_t> u_, v_;
  std::vector<std::map<std::uint32_t, UPolyP>> cache_;
};

// ---- recursive GCD --------------------------------------------------------

MPoly lc_in(const MPoly &f, std::size_t var) {
  auto coeffs = f.coefficients_in(var);
  return coeffs.back();
}

Exponent unit_exponent(std::size_t nvars, std::size_t var, std::uint32_t k) {
  Exponent e(nvars, 0);
  e[var] = k;
  return e;
}

MPoly exact_quotient(const MPoly &a, const MPoly &b) {
  auto q = a.divide(b);
  if (!q) throw std::logic_error("internal: expected exact polynomial division");
  return *std::move(q);
}

// Pseudo-remainder of a by b with respect to var.
MPoly prem(const MPoly &a, const MPoly &b, std::size_t var) {
  const std::uint32_t db = b.degree(var);
  const MPoly lcb = lc_in(b, var);
  MPoly r = a;
  int e = static_cast<int>(a.degree(var)) - static_cast<int>(db) + 1;
  while (!r.is_zero() && r.degree(var) >= db) {
    const MPoly s = lc_in(r, var);
    const std::uint32_t k = r.degree(var) - db;
    r = r * lcb - (s * b).mul_monomial(unit_exponent(r.nvars(), var, k));
    --e;
  }
  for (; e > 0; --e) r = r * lcb;
  return r;
}

MPoly content_in(const MPoly &f, std::size_t var) {
  const auto coeffs = f.coefficients_in(var);
  return gcd(std::span<const MPoly>(coeffs));
}

MPoly primitive_in(const MPoly &f, std::size_t var) {
  return exact_quotient(f, content_in(f, var)).primitive();
}

// Subresultant PRS; inputs primitive with respect to var, both of positive
// degree in var. Returns the primitive gcd.
MPoly subresultant_gcd(MPoly a, MPoly b, std::size_t var) {
  if (a.degree(var) < b.degree(var)) std::swap(a, b);
  const std::size_t n = a.nvars();
  MPoly g = MPoly::constant(n, 1), h = MPoly::constant(n, 1);
  for (;;) {
    const std::uint32_t delta = a.degree(var) - b.degree(var);
    MPoly r = prem(a, b, var);
    if (r.is_zero()) break;
    if (r.degree(var) == 0) return MPoly::constant(n, 1);
    a = std::move(b);
    b = exact_quotient(r, g * h.pow(delta));
    g = lc_in(a, var);
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = exact_quotient(g.pow(delta), h.pow(delta - 1));
    }
  }
  return primitive_in(b, var);
}

// gcd of two primitive polynomials without monomial content.
MPoly gcd_primitive(const MPoly &a, const MPoly &b) {
  const std::size_t n = a.nvars();
  if (a.is_constant() || b.is_constant()) return MPoly::constant(n, 1);
  if (a == b) return a.primitive();
  const MPoly pair[] = {a, b};
  if (certify_no_common_factor(pair)) return MPoly::constant(n, 1);

  std::optional<std::size_t> best;
  std::uint32_t best_deg = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::uint32_t da = a.degree(v), db = b.degree(v);
    if (da == 0 || db == 0) continue;
    const std::uint32_t d = std::max(da, db);
    if (!best || d < best_deg) {
      best = v;
      best_deg = d;
    }
  }
  // A common factor only involves variables present in both inputs.
  if (!best) return MPoly::constant(n, 1);
  const std::size_t v = *best;
  const MPoly ca = content_in(a, v), cb = content_in(b, v);
  const MPoly pa = exact_quotient(a, ca), pb = exact_quotient(b, cb);
  const MPoly cg = gcd(ca, cb);
  MPoly h = (pa.degree(v) > 0 && pb.degree(v) > 0) ? subresultant_gcd(pa, pb, v)
                                                   : MPoly::constant(n, 1);
  return (h * cg).primitive();
}

} // namespace

bool lex_greater(const Exponent &a, const Exponent &b) {
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MPoly MPoly::constant(std::size_t nvars, const Int &c) {
  MPoly p(nvars);
  if (c != 0) p.terms_.push_back({Exponent(nvars, 0), c});
  return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t index) {
  Exponent e(nvars, 0);
  e.at(index) = 1;
  return monomial(std::move(e), 1);
}

MPoly MPoly::monomial(Exponent exp, const Int &c) {
  MPoly p(exp.size());
  if (c != 0) p.terms_.push_back({std::move(exp), c});
  return p;
}

MPoly MPoly::from_terms(std::size_t nvars, std::vector<Term> terms) {
  MPoly p(nvars);
  for (const Term &t : terms)
    if (t.exp.size() != nvars)
      throw DimensionMismatch("term has wrong number of variables");
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void MPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term &a, const Term &b) { return lex_greater(a.exp, b.exp); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (Term &t : terms_) {
    if (!out.empty() && out.back().exp == t.exp)
      out.back().coef += t.coef;
    else
      out.push_back(std::move(t));
    if (out.back().coef == 0) out.pop_back();
  }
  terms_ = std::move(out);
}

bool MPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  return std::all_of(terms_[0].exp.begin(), terms_[0].exp.end(),
                     [](std::uint32_t x) { return x == 0; });
}

std::uint32_t MPoly::degree(std::size_t var) const {
  std::uint32_t d = 0;
  for (const Term &t : terms_) d = std::max(d, t.exp[var]);
  return d;
}

std::uint64_t MPoly::total_degree() const {
  std::uint64_t d = 0;
  for (const Term &t : terms_) {
    std::uint64_t s = 0;
    for (std::uint32_t x : t.exp) s += x;
    d = std::max(d, s);
  }
  return d;
}

std::size_t MPoly::max_coef_bits() const {
  std::size_t b = 0;
  for (const Term &t : terms_) b = std::max(b, bit_length(t.coef));
  return b;
}

Int MPoly::content() const {
  Int g = 0;
  for (const Term &t : terms_) {
    g = gcd(g, t.coef);
    if (g == 1) break;
  }
  return g;
}

MPoly MPoly::primitive() const {
  if (is_zero()) return *this;
  Int c = content();
  if (terms_.front().coef < 0) c = -c;
  return c == 1 ? *this : divexact(c);
}

Exponent MPoly::min_exponents() const {
  if (terms_.empty()) return Exponent(nvars_, 0);
  Exponent m = terms_.front().exp;
  for (const Term &t : terms_)
    for (std::size_t i = 0; i < nvars_; ++i) m[i] = std::min(m[i], t.exp[i]);
  return m;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (Term &t : r.terms_) t.coef = -t.coef;
  return r;
}

MPoly &MPoly::operator+=(const MPoly &o) {
  if (o.nvars_ != nvars_) throw DimensionMismatch("polynomial rings differ");
  terms_ = merge(terms_, o.terms_, +1);
  return *this;
}

MPoly &MPoly::operator-=(const MPoly &o) {
  if (o.nvars_ != nvars_) throw DimensionMismatch("polynomial rings differ");
  terms_ = merge(terms_, o.terms_, -1);
  return *this;
}

MPoly &MPoly::operator*=(const Int &c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (Term &t : terms_) t.coef *= c;
  return *this;
}

MPoly operator*(const MPoly &a, const MPoly &b) {
  if (a.nvars_ != b.nvars_) throw DimensionMismatch("polynomial rings differ");
  if (a.is_zero() || b.is_zero()) return MPoly(a.nvars_);
  if (a.size() == 1) return b.mul_monomial(a.terms_[0].exp) * a.terms_[0].coef;
  if (b.size() == 1) return a.mul_monomial(b.terms_[0].exp) * b.terms_[0].coef;
  Accumulator acc;
  acc.reserve(a.size() * b.size());
  for (const Term &ta : a.terms_)
    for (const Term &tb : b.terms_) {
      Int &slot = acc[add_exponents(ta.exp, tb.exp)];
      mpz_addmul(slot.get_mpz_t(), ta.coef.get_mpz_t(), tb.coef.get_mpz_t());
    }
  return from_accumulator(a.nvars_, std::move(acc));
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result = constant(nvars_, 1);
  MPoly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

MPoly MPoly::divexact(const Int &c) const {
  MPoly r = *this;
  for (Term &t : r.terms_) t.coef = dyndeg::divexact(t.coef, c);
  return r;
}

MPoly MPoly::divexact_monomial(const Exponent &m) const {
  MPoly r = *this;
  for (Term &t : r.terms_)
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.exp[i] < m[i]) throw std::logic_error("monomial does not divide");
      t.exp[i] -= m[i];
    }
  return r;
}

MPoly MPoly::mul_monomial(const Exponent &m) const {
  MPoly r = *this;
  for (Term &t : r.terms_) t.exp = add_exponents(t.exp, m);
  return r;
}

std::optional<MPoly> MPoly::divide(const MPoly &divisor) const {
  if (divisor.nvars_ != nvars_) throw DimensionMismatch("polynomial rings differ");
  if (divisor.is_zero()) throw DimensionMismatch("division by zero polynomial");
  if (is_zero()) return MPoly(nvars_);
  for (std::size_t v = 0; v < nvars_; ++v)
    if (divisor.degree(v) > degree(v)) return std::nullopt;
  const Term &lead = divisor.leading();
  std::vector<Term> quotient;
  std::vector<Term> r = terms_;
  while (!r.empty()) {
    const Term &lt = r.front();
    if (!exponent_divides(lead.exp, lt.exp) || !divisible(lt.coef, lead.coef))
      return std::nullopt;
    Exponent qe(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) qe[i] = lt.exp[i] - lead.exp[i];
    Int qc = dyndeg::divexact(lt.coef, lead.coef);
    std::vector<Term> sub;
    sub.reserve(divisor.size());
    for (const Term &t : divisor.terms_)
      sub.push_back({add_exponents(t.exp, qe), t.coef * qc});
    quotient.push_back({std::move(qe), std::move(qc)});
    r = merge(r, sub, -1);
  }
  MPoly q(nvars_);
  q.terms_ = std::move(quotient);
  return q;
}

MPoly MPoly::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const Term &t : terms_) {
    if (t.exp[var] == 0) continue;
    Term d = t;
    d.coef *= t.exp[var];
    d.exp[var] -= 1;
    out.push_back(std::move(d));
  }
  return from_terms(nvars_, std::move(out));
}

MPoly MPoly::substitute(std::size_t var, const Int &value) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  std::map<std::uint32_t, Int> powers;
  for (const Term &t : terms_) {
    Term s = t;
    if (t.exp[var] > 0) {
      auto it = powers.find(t.exp[var]);
      if (it == powers.end())
        it = powers.emplace(t.exp[var], dyndeg::pow(value, t.exp[var])).first;
      s.coef *= it->second;
      s.exp[var] = 0;
    }
    out.push_back(std::move(s));
  }
  return from_terms(nvars_, std::move(out));
}

MPoly MPoly::compose(std::span<const MPoly> images) const {
  if (images.size() != nvars_)
    throw DimensionMismatch("composition needs one image per variable");
  const std::size_t target = images.empty() ? 0 : images[0].nvars();
  for (const MPoly &img : images)
    if (img.nvars() != target) throw DimensionMismatch("images live in different rings");

  std::vector<std::map<std::uint32_t, MPoly>> cache(nvars_);
  auto power = [&](auto &&self, std::size_t var, std::uint32_t e) -> const MPoly & {
    auto &c = cache[var];
    if (auto it = c.find(e); it != c.end()) return it->second;
    MPoly r;
    if (e == 1) {
      r = images[var];
    } else {
      const MPoly &half = self(self, var, e / 2);
      r = half * half;
      if (e % 2) r = r * images[var];
    }
    return c.emplace(e, std::move(r)).first->second;
  };

  Accumulator acc;
  for (const Term &t : terms_) {
    MPoly prod = constant(target, t.coef);
    for (std::size_t i = 0; i < nvars_ && !prod.is_zero(); ++i)
      if (t.exp[i] > 0) prod = prod * power(power, i, t.exp[i]);
    for (Term &pt : prod.terms_) {
      Int &slot = acc[pt.exp];
      slot += pt.coef;
    }
  }
  return from_accumulator(target, std::move(acc));
}

MPoly MPoly::embed(std::size_t nvars, std::span<const std::size_t> index_map) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term &t : terms_) {
    Exponent e(nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (t.exp[i] > 0) e.at(index_map[i]) += t.exp[i];
    out.push_back({std::move(e), t.coef});
  }
  return from_terms(nvars, std::move(out));
}

Int MPoly::evaluate(std::span<const Int> point) const {
  if (point.size() != nvars_) throw DimensionMismatch("evaluation point size");
  Int sum = 0;
  for (const Term &t : terms_) {
    Int v = t.coef;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (t.exp[i]) v *= dyndeg::pow(point[i], t.exp[i]);
    sum += v;
  }
  return sum;
}

Rat MPoly::evaluate(std::span<const Rat> point) const {
  if (point.size() != nvars_) throw DimensionMismatch("evaluation point size");
  Rat sum = 0;
  for (const Term &t : terms_) {
    Rat v = t.coef;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (std::uint32_t k = 0; k < t.exp[i]; ++k) v *= point[i];
    sum += v;
  }
  sum.canonicalize();
  return sum;
}

std::uint64_t MPoly::evaluate_mod(std::span<const std::uint64_t> point,
                                  std::uint64_t p) const {
  if (p != kPrime) throw DimensionMismatch("evaluate_mod supports 2^61-1 only");
  std::uint64_t sum = 0;
  for (const Term &t : terms_) {
    std::uint64_t v = mod_u64(t.coef, p);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (t.exp[i]) v = mulmod(v, powmod(point[i], t.exp[i]));
    sum = addmod(sum, v);
  }
  return sum;
}

std::vector<MPoly> MPoly::coefficients_in(std::size_t var) const {
  std::vector<std::vector<Term>> buckets(degree(var) + 1);
  for (const Term &t : terms_) {
    Term s = t;
    s.exp[var] = 0;
    buckets[t.exp[var]].push_back(std::move(s));
  }
  std::vector<MPoly> out;
  out.reserve(buckets.size());
  for (auto &b : buckets) {
    // Removing one variable keeps the relative lex order.
    MPoly c(nvars_);
    c.terms_ = std::move(b);
    out.push_back(std::move(c));
  }
  return out;
}

MPoly MPoly::from_coefficients(std::size_t nvars, std::size_t var,
                               std::span<const MPoly> coeffs) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (Term t : coeffs[i].terms()) {
      t.exp[var] += static_cast<std::uint32_t>(i);
      terms.push_back(std::move(t));
    }
  return from_terms(nvars, std::move(terms));
}

MPoly gcd(const MPoly &a, const MPoly &b) {
  if (a.nvars() != b.nvars()) throw DimensionMismatch("polynomial rings differ");
  const std::size_t n = a.nvars();
  if (a.is_zero() && b.is_zero()) return MPoly(n);
  if (a.is_zero()) return b.leading().coef < 0 ? -b : b;
  if (b.is_zero()) return a.leading().coef < 0 ? -a : a;

  const Exponent ma = a.min_exponents(), mb = b.min_exponents();
  Exponent m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = std::min(ma[i], mb[i]);
  const Int c = gcd(a.content(), b.content());
  MPoly pa = a.divexact_monomial(ma).primitive();
  MPoly pb = b.divexact_monomial(mb).primitive();
  MPoly g = gcd_primitive(pa, pb);
  if (!g.is_constant() && (!g.divides(pa) || !g.divides(pb)))
    throw std::logic_error("internal: gcd failed exact-division validation");
  return g.mul_monomial(m) * c;
}

MPoly gcd(std::span<const MPoly> polys) {
  if (polys.empty()) return MPoly();
  MPoly g(polys[0].nvars());
  for (const MPoly &p : polys) {
    if (p.is_zero()) continue;
    g = gcd(g, p);
    if (g.is_constant() && g.leading().coef == 1) break;
  }
  return g;
}

bool certify_no_common_factor(std::span<const MPoly> polys) {
  std::vector<const MPoly *> live;
  for (const MPoly &p : polys)
    if (!p.is_zero()) live.push_back(&p);
  if (live.empty()) return false;
  for (const MPoly *p : live)
    if (p->is_constant()) return true;
  if (live.size() < 2) return false;

  const std::size_t n = live[0]->nvars();
  // A common factor of a monomial is a monomial.
  for (const MPoly *p : live) {
    if (p->terms().size() != 1) continue;
    for (std::size_t v = 0; v < n; ++v) {
      if (p->terms()[0].exp[v] == 0) continue;
      const bool shared = std::all_of(live.begin(), live.end(), [&](const MPoly *q) {
        return std::all_of(q->terms().begin(), q->terms().end(),
                           [&](const Term &t) { return t.exp[v] > 0; });
      });
      if (shared) return false;
    }
    return true;
  }
  const MPoly &first = *live[0];
  const std::uint64_t top = first.total_degree();
  std::vector<Term> top_terms;
  for (const Term &t : first.terms()) {
    std::uint64_t s = 0;
    for (std::uint32_t x : t.exp) s += x;
    if (s == top) top_terms.push_back(t);
  }
  const MPoly top_part = MPoly::from_terms(n, std::move(top_terms));

  // Fixed seed: the answer is a deterministic function of the input.
  Rng rng(0x9e3779b97f4a7c15ull);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<std::uint64_t> u(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = static_cast<std::uint64_t>(rng.uniform(1, kPrime - 1));
      v[i] = static_cast<std::uint64_t>(rng.uniform(1, kPrime - 1));
    }
    if (top_part.evaluate_mod(u, kPrime) == 0) continue;
    LineRestriction line(std::move(u), std::move(v));
    UPolyP g = line.restrict(first);
    for (std::size_t k = 1; k < live.size() && g.size() > 1; ++k)
      g = gcd_modp(std::move(g), line.restrict(*live[k]));
    return g.size() <= 1;
  }
  return false;
}

MPoly determinant(std::vector<std::vector<MPoly>> m, std::size_t nvars) {
  const std::size_t n = m.size();
  if (n == 0) return MPoly::constant(nvars, 1);
  int sign = 1;
  MPoly prev = MPoly::constant(nvars, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return MPoly(nvars);
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = exact_quotient(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
      m[i][k] = MPoly(nvars);
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

MPoly resultant(const MPoly &a, const MPoly &b, std::size_t var,
                std::optional<std::uint32_t> formal_deg_a,
                std::optional<std::uint32_t> formal_deg_b) {
  if (a.nvars() != b.nvars()) throw DimensionMismatch("polynomial rings differ");
  const std::size_t nv = a.nvars();
  const std::uint32_t da = formal_deg_a.value_or(a.degree(var));
  const std::uint32_t db = formal_deg_b.value_or(b.degree(var));
  if (a.degree(var) > da || b.degree(var) > db)
    throw DimensionMismatch("formal degree below actual degree");
  auto ca = a.coefficients_in(var), cb = b.coefficients_in(var);
  ca.resize(da + 1, MPoly(nv));
  cb.resize(db + 1, MPoly(nv));
  const std::size_t size = da + db;
  std::vector<std::vector<MPoly>> syl(size, std::vector<MPoly>(size, MPoly(nv)));
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t k = 0; k <= da; ++k) syl[i][i + k] = ca[da - k];
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t k = 0; k <= db; ++k) syl[db + i][i + k] = cb[db - k];
  return determinant(std::move(syl), nv);
}

} // namespace dyndeg
