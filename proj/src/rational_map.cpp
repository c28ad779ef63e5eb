#include "dyndeg/polycore.hpp"

#include <algorithm>

namespace dyndeg {

RationalMap::RationalMap(AmbientSpace source, AmbientSpace target, std::vector<Tuple> tuples,
                         bool reduced)
    : source_(std::move(source)), target_(std::move(target)), tuples_(std::move(tuples)),
      multidegree_(target_.num_factors(), source_.num_factors()), reduced_(reduced) {
  if (tuples_.size() != target_.num_factors())
    throw SpaceMismatch("map needs one component tuple per target factor (" +
                        std::to_string(target_.num_factors()) + "), got " +
                        std::to_string(tuples_.size()));
  for (std::size_t i = 0; i < tuples_.size(); ++i) {
    if (tuples_[i].size() != target_.block_size(i))
      throw SpaceMismatch("tuple " + std::to_string(i) + " needs " +
                          std::to_string(target_.block_size(i)) + " components, got " +
                          std::to_string(tuples_[i].size()));
    std::optional<MultiDegree> deg;
    for (const MPoly &p : tuples_[i]) {
      if (p.is_zero()) continue;
      const MultiDegree d = multidegree_of(p, source_);
      if (deg && *deg != d)
        throw HomogeneityError("components of tuple " + std::to_string(i) +
                               " have different multidegrees");
      deg = d;
    }
    if (!deg) throw ZeroMap("all components of tuple " + std::to_string(i) + " vanish");
    for (std::size_t j = 0; j < deg->size(); ++j)
      multidegree_(i, j) = Int(static_cast<unsigned long>((*deg)[j]));
  }
}

RationalMap RationalMap::identity(const AmbientSpace &space) {
  std::vector<Tuple> tuples;
  for (std::size_t b = 0; b < space.num_factors(); ++b) {
    Tuple t;
    for (std::size_t k = 0; k < space.block_size(b); ++k)
      t.push_back(MPoly::variable(space.num_vars(), space.block_offset(b) + k));
    tuples.push_back(std::move(t));
  }
  return RationalMap(space, space, std::move(tuples), true);
}

RationalMap RationalMap::parse(const AmbientSpace &source, const AmbientSpace &target,
                               const std::vector<std::vector<std::string>> &components) {
  std::vector<Tuple> tuples;
  for (const auto &strs : components) {
    Tuple t;
    for (const auto &s : strs) t.push_back(parse_expression(s, source));
    tuples.push_back(std::move(t));
  }
  return RationalMap(source, target, std::move(tuples));
}

RationalMap RationalMap::linear(const AmbientSpace &space, const std::vector<IntMatrix> &blocks) {
  if (blocks.size() != space.num_factors())
    throw SpaceMismatch("linear map needs one matrix per factor");
  std::vector<Tuple> tuples;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const IntMatrix &m = blocks[b];
    const std::size_t n = space.block_size(b);
    if (m.rows() != n || m.cols() != n)
      throw DimensionMismatch("linear block " + std::to_string(b) + " must be " +
                              std::to_string(n) + "x" + std::to_string(n));
    Tuple t;
    for (std::size_t r = 0; r < n; ++r) {
      MPoly p(space.num_vars());
      for (std::size_t c = 0; c < n; ++c)
        if (m(r, c) != 0)
          p += MPoly::variable(space.num_vars(), space.block_offset(b) + c) * m(r, c);
      t.push_back(std::move(p));
    }
    tuples.push_back(std::move(t));
  }
  return RationalMap(space, space, std::move(tuples));
}

std::size_t RationalMap::term_count() const {
  std::size_t n = 0;
  for (const Tuple &t : tuples_)
    for (const MPoly &p : t) n += p.size();
  return n;
}

std::size_t RationalMap::max_coef_bits() const {
  std::size_t b = 0;
  for (const Tuple &t : tuples_)
    for (const MPoly &p : t) b = std::max(b, p.max_coef_bits());
  return b;
}

std::vector<std::vector<std::string>> RationalMap::to_strings() const {
  std::vector<std::vector<std::string>> out;
  for (const Tuple &t : tuples_) {
    std::vector<std::string> row;
    for (const MPoly &p : t) row.push_back(format_polynomial(p, source_));
    out.push_back(std::move(row));
  }
  return out;
}

std::string RationalMap::to_string() const {
  std::string s;
  const auto strs = to_strings();
  if (strs.size() > 1) s += "(";
  for (std::size_t i = 0; i < strs.size(); ++i) {
    if (i) s += ", ";
    s += "[";
    for (std::size_t j = 0; j < strs[i].size(); ++j) {
      if (j) s += " : ";
      s += strs[i][j];
    }
    s += "]";
  }
  if (strs.size() > 1) s += ")";
  return s;
}

bool RationalMap::operator==(const RationalMap &o) const {
  return source_ == o.source_ && target_ == o.target_ && tuples_ == o.tuples_;
}

bool RationalMap::projectively_equal(const RationalMap &o) const {
  if (!(source_ == o.source_) || !(target_ == o.target_)) return false;
  return reduce_map(*this).tuples_ == reduce_map(o).tuples_;
}

RationalMap compose(const RationalMap &f, const RationalMap &g) {
  if (!(g.target() == f.source()))
    throw SpaceMismatch("compose: target of inner map (" + g.target().to_string() +
                        ") differs from source of outer map (" + f.source().to_string() + ")");
  std::vector<MPoly> images;
  images.reserve(f.source().num_vars());
  for (const auto &t : g.tuples())
    for (const MPoly &p : t) images.push_back(p);
  std::vector<RationalMap::Tuple> tuples;
  for (const auto &t : f.tuples()) {
    RationalMap::Tuple out;
    for (const MPoly &p : t) out.push_back(p.compose(images));
    tuples.push_back(std::move(out));
  }
  return RationalMap(g.source(), f.target(), std::move(tuples));
}

bool Reduction::removed_nontrivial() const {
  return std::any_of(removed.begin(), removed.end(),
                     [](const MPoly &p) { return !p.is_constant(); });
}

Reduction reduce_with_factors(const RationalMap &f) {
  const std::size_t nv = f.source().num_vars();
  std::vector<RationalMap::Tuple> tuples;
  std::vector<MPoly> removed;
  for (const auto &t : f.tuples()) {
    // Monomial and integer content of the whole tuple first.
    std::optional<Exponent> mono;
    Int content = 0;
    for (const MPoly &p : t) {
      if (p.is_zero()) continue;
      const Exponent m = p.min_exponents();
      if (!mono) {
        mono = m;
      } else {
        for (std::size_t i = 0; i < nv; ++i) (*mono)[i] = std::min((*mono)[i], m[i]);
      }
      content = gcd(content, p.content());
    }
    RationalMap::Tuple stripped;
    for (const MPoly &p : t)
      stripped.push_back(p.is_zero() ? p : p.divexact_monomial(*mono).divexact(content));
    MPoly g = MPoly::constant(nv, 1);
    if (!certify_no_common_factor(stripped)) g = gcd(std::span<const MPoly>(stripped)).primitive();
    RationalMap::Tuple out;
    for (const MPoly &p : stripped) {
      if (p.is_zero() || g.is_constant()) {
        out.push_back(p);
        continue;
      }
      auto q = p.divide(g);
      if (!q) throw std::logic_error("internal: tuple gcd does not divide a component");
      out.push_back(*std::move(q));
    }
    // Projective normalization: first nonzero component has positive lead.
    const auto first = std::find_if(out.begin(), out.end(),
                                    [](const MPoly &p) { return !p.is_zero(); });
    if (first != out.end() && first->leading().coef < 0)
      for (MPoly &p : out) p = -p;
    removed.push_back(g.mul_monomial(*mono));
    tuples.push_back(std::move(out));
  }
  return {RationalMap(f.source(), f.target(), std::move(tuples), true), std::move(removed)};
}

RationalMap reduce_map(const RationalMap &f) { return reduce_with_factors(f).map; }

} // namespace dyndeg
