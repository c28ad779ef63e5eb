#include "dyndeg/cyclelat.hpp"

#include <algorithm>

namespace dyndeg {

Rat CycleLattice::degree(const RatVector &v) const {
  if (v.size() != rank()) throw DimensionMismatch("vector length differs from lattice rank");
  Rat d = 0;
  for (std::size_t i = 0; i < v.size(); ++i) d += degree_vector[i] * v[i];
  return d;
}

void CycleLattice::validate() const {
  if (codim > dim) throw ValidationError("codimension exceeds dimension");
  if (pairing.rows() != rank() || degree_vector.size() != rank())
    throw ValidationError("pairing rows and degree vector must match the basis labels");
  if (pairing.rows() != pairing.cols() || ::dyndeg::rank(pairing) != pairing.rows())
    throw ValidationError("intersection pairing is degenerate");
  for (const RatVector &g : effective_generators) {
    if (g.size() != rank()) throw ValidationError("effective generator has wrong length");
    if (degree(g) <= 0) throw ValidationError("effective generator has nonpositive degree");
  }
}

CycleLattice blowup_lattice(unsigned m, const RatVector &omega) {
  CycleLattice lat;
  lat.dim = 2;
  lat.codim = 1;
  lat.labels.push_back("H");
  for (unsigned i = 1; i <= m; ++i) lat.labels.push_back("E" + std::to_string(i));
  const std::size_t n = m + 1;
  if (omega.size() != n) throw DimensionMismatch("polarization length differs from rank");
  lat.pairing = RatMatrix(n, n);
  lat.pairing(0, 0) = 1;
  for (std::size_t i = 1; i < n; ++i) lat.pairing(i, i) = -1;
  // deg(v) = v . omega
  lat.degree_vector.assign(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) lat.degree_vector[i] = lat.pairing(i, i) * omega[i];

  auto unit = [n](std::size_t i) {
    RatVector v(n, Rat(0));
    v[i] = 1;
    return v;
  };
  if (m == 0) {
    lat.effective_generators.push_back(unit(0));
  } else {
    for (std::size_t i = 1; i < n; ++i) lat.effective_generators.push_back(unit(i));
    if (m == 1) {
      RatVector l = unit(0);
      l[1] = -1;
      lat.effective_generators.push_back(l);
    }
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        RatVector l = unit(0);
        l[i] = l[j] = -1;
        lat.effective_generators.push_back(l);
      }
    if (m == 5) {
      RatVector c(n, Rat(-1));
      c[0] = 2;
      lat.effective_generators.push_back(c);
    }
  }
  lat.validate();
  return lat;
}

CycleLattice blowup_lattice(unsigned m) {
  RatVector omega(m + 1, Rat(-1));
  omega[0] = m + 1;
  return blowup_lattice(m, omega);
}

CycleLattice p1p1_lattice() {
  CycleLattice lat;
  lat.dim = 2;
  lat.codim = 1;
  lat.labels = {"h1", "h2"};
  lat.pairing = to_rational(IntMatrix{{0, 1}, {1, 0}});
  lat.degree_vector = {1, 1};
  lat.effective_generators = {{1, 0}, {0, 1}};
  lat.validate();
  return lat;
}

CycleLattice projective_lattice(unsigned k, unsigned p) {
  if (k < 1 || p > k) throw ValidationError("need 0 <= p <= k, k >= 1");
  CycleLattice lat;
  lat.dim = k;
  lat.codim = p;
  lat.labels = {p == 0 ? std::string("X") : "H^" + std::to_string(p)};
  lat.pairing = to_rational(IntMatrix{{1}});
  lat.degree_vector = {1};
  lat.effective_generators = {{1}};
  lat.validate();
  return lat;
}

Rat intersect(const CycleLattice &lat, const RatVector &v, const RatVector &w) {
  if (v.size() != lat.pairing.rows() || w.size() != lat.pairing.cols())
    throw DimensionMismatch("intersect: vector lengths do not match the pairing");
  Rat s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) s += v[i] * lat.pairing(i, j) * w[j];
  return s;
}

NormOneResult norm_one(const CycleLattice &lat, const RatVector &v_in) {
  RatVector v = v_in;
  for (Rat &x : v) x.canonicalize();
  if (v.size() != lat.rank()) throw DimensionMismatch("norm_one: vector length differs from rank");
  const auto &gens = lat.effective_generators;
  if (gens.empty()) throw ValidationError("norm_one needs effective generators");
  const std::size_t g = gens.size(), r = lat.rank();
  RatMatrix A(r, 2 * g);
  std::vector<Rat> c(2 * g);
  for (std::size_t j = 0; j < g; ++j) {
    const Rat d = lat.degree(gens[j]);
    if (d <= 0) throw ValidationError("effective generator has nonpositive degree");
    for (std::size_t i = 0; i < r; ++i) {
      A(i, j) = gens[j][i];
      A(i, g + j) = -gens[j][i];
    }
    c[j] = c[g + j] = d;
  }
  const LpResult lp = solve_lp(A, v, c);
  if (lp.status != LpStatus::Optimal)
    throw Infeasible("vector is not a difference of classes in the generated cone");
  if (!certifies_optimum(A, v, c, lp)) throw std::logic_error("internal: LP certificate failed");
  NormOneResult out;
  out.value = lp.value;
  out.dual = lp.dual;
  out.v1.assign(r, Rat(0));
  out.v2.assign(r, Rat(0));
  for (std::size_t j = 0; j < g; ++j) {
    out.pos_coeffs.push_back(lp.x[j]);
    out.neg_coeffs.push_back(lp.x[g + j]);
    for (std::size_t i = 0; i < r; ++i) {
      out.v1[i] += lp.x[j] * gens[j][i];
      out.v2[i] += lp.x[g + j] * gens[j][i];
    }
  }
  return out;
}

Inertia hodge_signature(const RatMatrix &form) {
  if (!form.is_square()) throw DimensionMismatch("form must be square");
  if (!(form == form.transpose())) throw ValidationError("form must be symmetric");
  std::vector<std::vector<Rat>> a(form.rows(), std::vector<Rat>(form.cols()));
  for (std::size_t i = 0; i < form.rows(); ++i)
    for (std::size_t j = 0; j < form.cols(); ++j) a[i][j] = form(i, j);
  Inertia out;
  while (!a.empty()) {
    const std::size_t n = a.size();
    std::optional<std::size_t> piv;
    for (std::size_t i = 0; i < n && !piv; ++i)
      if (a[i][i] != 0) piv = i;
    if (!piv) {
      // Zero diagonal: e_i + e_j has value 2 a_ij.
      std::optional<std::pair<std::size_t, std::size_t>> off;
      for (std::size_t i = 0; i < n && !off; ++i)
        for (std::size_t j = i + 1; j < n && !off; ++j)
          if (a[i][j] != 0) off = {i, j};
      if (!off) {
        out.zero += n;
        break;
      }
      const auto [i, j] = *off;
      for (std::size_t k = 0; k < n; ++k) a[i][k] += a[j][k];
      for (std::size_t k = 0; k < n; ++k) a[k][i] += a[k][j];
      piv = i;
    }
    const std::size_t p = *piv;
    const Rat d = a[p][p];
    (d > 0 ? out.positive : out.negative) += 1;
    std::vector<std::vector<Rat>> next;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == p) continue;
      std::vector<Rat> row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == p) continue;
        row.push_back(a[i][j] - a[i][p] * a[p][j] / d);
      }
      next.push_back(std::move(row));
    }
    a = std::move(next);
  }
  return out;
}

const RatMatrix &PullbackAction::at(unsigned p) const {
  const auto it = by_codim.find(p);
  if (it == by_codim.end()) throw ValidationError("action has no matrix in codimension " + std::to_string(p));
  return it->second;
}

void PullbackAction::validate() const {
  for (const auto &[p, m] : by_codim) {
    if (!m.is_square()) throw DimensionMismatch("action matrices must be square");
    if (p == 0 && !(m == to_rational(IntMatrix{{1}})))
      throw ValidationError("M_0 must be [1]");
  }
}

PullbackAction cremona_blowup_action() {
  PullbackAction a;
  a.provenance = "derived-from-map";
  a.by_codim[0] = to_rational(IntMatrix{{1}});
  a.by_codim[1] = to_rational(
      IntMatrix{{2, 1, 1, 1}, {-1, 0, -1, -1}, {-1, -1, 0, -1}, {-1, -1, -1, 0}});
  a.by_codim[2] = to_rational(IntMatrix{{1}});
  return a;
}

PullbackAction coxeter_e10_action() {
  constexpr std::size_t n = 11;
  const std::vector<long> J = {1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1};
  std::vector<std::vector<long>> roots;
  roots.push_back({1, -1, -1, -1, 0, 0, 0, 0, 0, 0, 0});
  for (std::size_t i = 1; i <= 9; ++i) {
    std::vector<long> r(n, 0);
    r[i] = 1;
    r[i + 1] = -1;
    roots.push_back(std::move(r));
  }
  IntMatrix prod = IntMatrix::identity(n);
  for (const auto &alpha : roots) {
    // s(v) = v + <v, alpha> alpha, <v, w> = sum J_i v_i w_i
    IntMatrix s = IntMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s(i, j) += alpha[i] * J[j] * alpha[j];
    prod = prod * s;
  }
  PullbackAction a;
  a.provenance = "derived-from-map";
  a.by_codim[0] = to_rational(IntMatrix{{1}});
  a.by_codim[1] = to_rational(prod);
  a.by_codim[2] = to_rational(IntMatrix{{1}});
  return a;
}

SpectralReport spectral_data(const PullbackAction &action, unsigned p, double eps) {
  return spectral_report(action.at(p), eps);
}

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::HypothesisNotMet: return "HYPOTHESIS_NOT_MET";
  case Verdict::Pass: return "PASS";
  case Verdict::Fail: return "FAIL";
  }
  return "?";
}

SimplicityResult simplicity_check(const PullbackAction &action, const Interval &lambda2,
                                  double tol) {
  const SpectralReport rep = spectral_data(action, 1);
  SimplicityResult out;
  out.r1 = rep.radius;
  if (!((out.r1 * out.r1).lo > lambda2.hi)) {
    out.verdict = Verdict::HypothesisNotMet;
    out.detail = "r1^2 > lambda2 is not certified";
    return out;
  }
  // The enclosure with the largest modulus.
  const auto lead = std::max_element(rep.roots.begin(), rep.roots.end(),
                                     [](const RootEnclosure &a, const RootEnclosure &b) {
                                       return a.modulus.mid() < b.modulus.mid();
                                     });
  out.simple = lead->multiplicity == 1;
  out.max_other = {0.0, 0.0};
  for (auto it = rep.roots.begin(); it != rep.roots.end(); ++it) {
    if (it == lead) continue;
    out.max_other = max(out.max_other, it->modulus);
  }
  const double bound = sqrt(lambda2).hi + tol;
  const bool separated = out.max_other.hi <= bound;
  if (out.simple && separated) {
    out.verdict = Verdict::Pass;
    out.detail = "leading root simple; other moduli <= sqrt(lambda2)";
  } else {
    out.verdict = Verdict::Fail;
    out.detail = !out.simple ? "leading root has multiplicity " + std::to_string(lead->multiplicity)
                             : "another root modulus exceeds sqrt(lambda2)";
  }
  return out;
}

ConeCheckResult cone_preservation_r1r2_check(const PullbackAction &action,
                                             const CycleLattice &lat2, double tol) {
  const RatMatrix &M2 = action.at(2);
  if (M2.rows() != lat2.rank()) throw DimensionMismatch("M_2 does not match the N^2 lattice");
  if (lat2.effective_generators.empty()) throw ValidationError("N^2 lattice needs effective generators");
  for (const RatVector &g : lat2.effective_generators)
    if (!cone_membership(lat2.effective_generators, M2 * g))
      throw ConeNotPreserved("M_2 maps an effective generator outside the generated cone");
  ConeCheckResult out;
  out.r1 = spectral_data(action, 1).radius;
  out.r2 = spectral_data(action, 2).radius;
  const Interval sq = out.r1 * out.r1;
  if (sq.hi < out.r2.lo - tol) {
    out.verdict = Verdict::Fail;
    out.detail = "r1^2 < r2";
    return out;
  }
  out.verdict = Verdict::Pass;
  out.detail = "r1^2 >= r2";
  if (sq.lo > out.r2.hi) {
    out.simplicity = simplicity_check(action, out.r2, tol);
    if (out.simplicity->verdict == Verdict::Fail) {
      out.verdict = Verdict::Fail;
      out.detail = "r1^2 > r2 but " + out.simplicity->detail;
    }
  }
  return out;
}

} // namespace dyndeg
