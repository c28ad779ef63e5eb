#include "dyndeg/polycore.hpp"

#include <cctype>

namespace dyndeg {
namespace {

constexpr std::string_view kBlockLetters = "xyzuvwst";
constexpr std::uint32_t kMaxParsedExponent = 1u << 20;

} // namespace

AmbientSpace::AmbientSpace(std::vector<unsigned> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw ValidationError("ambient space needs at least one factor");
  if (factors_.size() > kBlockLetters.size())
    throw ValidationError("at most 8 projective factors are supported");
  for (unsigned k : factors_) {
    if (k == 0) throw ValidationError("projective factors must have dimension >= 1");
    offsets_.push_back(num_vars_);
    num_vars_ += k + 1;
    total_dim_ += k;
  }
}

std::size_t AmbientSpace::block_of(std::size_t var) const {
  for (std::size_t b = factors_.size(); b-- > 0;)
    if (var >= offsets_[b]) return b;
  throw DimensionMismatch("variable index out of range");
}

std::string AmbientSpace::variable_name(std::size_t var) const {
  const std::size_t b = block_of(var);
  return std::string(1, kBlockLetters[b]) + std::to_string(var - offsets_[b]);
}

std::optional<std::size_t> AmbientSpace::find_variable(std::string_view name) const {
  if (name.size() < 2) return std::nullopt;
  const auto b = kBlockLetters.find(name[0]);
  if (b == std::string_view::npos || b >= factors_.size()) return std::nullopt;
  std::size_t idx = 0;
  for (char c : name.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    idx = idx * 10 + static_cast<std::size_t>(c - '0');
    if (idx > factors_[b]) return std::nullopt;
  }
  if (name.size() > 2 && name[1] == '0') return std::nullopt;
  return offsets_[b] + idx;
}

std::vector<std::string> AmbientSpace::hyperplane_classes() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < factors_.size(); ++i) out.push_back("h" + std::to_string(i + 1));
  return out;
}

std::string AmbientSpace::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += " x ";
    s += "P^" + std::to_string(factors_[i]);
  }
  return s;
}

MultiDegree multidegree_of(const MPoly &p, const AmbientSpace &space) {
  if (p.nvars() != space.num_vars())
    throw SpaceMismatch("polynomial has " + std::to_string(p.nvars()) +
                        " variables, space " + space.to_string() + " has " +
                        std::to_string(space.num_vars()));
  MultiDegree deg(space.num_factors(), 0);
  bool first = true;
  for (const Term &t : p.terms()) {
    MultiDegree d(space.num_factors(), 0);
    for (std::size_t v = 0; v < t.exp.size(); ++v) d[space.block_of(v)] += t.exp[v];
    if (first) {
      deg = d;
      first = false;
    } else if (d != deg) {
      throw HomogeneityError("terms of unequal degree in a variable block", 1);
    }
  }
  return deg;
}

std::string format_polynomial(const MPoly &p, const AmbientSpace &space) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const Term &t : p.terms()) {
    const bool negative = t.coef < 0;
    const Int mag = abs(t.coef);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;

    std::string mono;
    for (std::size_t v = 0; v < t.exp.size(); ++v) {
      if (t.exp[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += space.variable_name(v);
      if (t.exp[v] > 1) mono += "^" + std::to_string(t.exp[v]);
    }
    if (mono.empty())
      out += to_string(mag);
    else if (mag == 1)
      out += mono;
    else
      out += to_string(mag) + "*" + mono;
  }
  return out;
}

namespace {

// Recursive descent over
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := primary ('^' UINT)*
//   primary:= INT | VAR | '(' expr ')'
class ExpressionParser {
public:
  ExpressionParser(std::string_view text, const AmbientSpace &space)
      : text_(text), space_(space), nvars_(space.num_vars()) {}

  MPoly parse() {
    skip_ws();
    if (at_end()) throw SyntaxError("empty expression", 1);
    MPoly p = expr();
    skip_ws();
    if (!at_end()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

private:
  MPoly expr() {
    skip_ws();
    bool negate = false;
    if (peek('+') || peek('-')) {
      negate = text_[pos_] == '-';
      ++pos_;
    }
    MPoly acc = term();
    if (negate) acc = -acc;
    for (;;) {
      skip_ws();
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MPoly term() {
    MPoly acc = factor();
    for (;;) {
      skip_ws();
      if (!peek('*')) return acc;
      ++pos_;
      acc = acc * factor();
    }
  }

  MPoly factor() {
    MPoly base = primary();
    for (;;) {
      skip_ws();
      if (!peek('^')) return base;
      ++pos_;
      skip_ws();
      const std::size_t start = pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected an unsigned integer exponent after '^'");
      std::uint64_t e = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        e = e * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
        if (e > kMaxParsedExponent) {
          pos_ = start;
          fail("exponent too large");
        }
      }
      base = base.pow(static_cast<unsigned>(e));
    }
  }

  MPoly primary() {
    skip_ws();
    if (at_end()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly inner = expr();
      skip_ws();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return MPoly::constant(nvars_, Int(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                           text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      const auto var = space_.find_variable(name);
      if (!var)
        throw UnknownVariable("unknown variable '" + std::string(name) + "' for " +
                                  space_.to_string(),
                              start + 1);
      return MPoly::variable(nvars_, *var);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  [[noreturn]] void fail(const std::string &msg) const {
    throw SyntaxError(msg + " at column " + std::to_string(pos_ + 1), pos_ + 1);
  }
  bool at_end() const { return pos_ >= text_.size(); }
  bool peek(char c) const { return !at_end() && text_[pos_] == c; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  const AmbientSpace &space_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

} // namespace

MPoly parse_expression(std::string_view text, const AmbientSpace &space) {
  MPoly p = ExpressionParser(text, space).parse();
  multidegree_of(p, space);
  return p;
}

Polynomial::Polynomial(AmbientSpace space)
    : space_(std::move(space)), poly_(space_.num_vars()),
      multidegree_(space_.num_factors(), 0) {}

Polynomial::Polynomial(AmbientSpace space, const MPoly &poly)
    : space_(std::move(space)), poly_(poly.primitive()),
      multidegree_(multidegree_of(poly_, space_)) {}

Polynomial parse_polynomial(std::string_view text, const AmbientSpace &space) {
  return Polynomial(space, parse_expression(text, space));
}

Polynomial poly_mul(const Polynomial &a, const Polynomial &b) {
  if (!(a.space() == b.space())) throw SpaceMismatch("poly_mul: different ambient spaces");
  return Polynomial(a.space(), a.mpoly() * b.mpoly());
}

Polynomial poly_gcd(const Polynomial &a, const Polynomial &b) {
  if (!(a.space() == b.space())) throw SpaceMismatch("poly_gcd: different ambient spaces");
  return Polynomial(a.space(), gcd(a.mpoly(), b.mpoly()));
}

} // namespace dyndeg
