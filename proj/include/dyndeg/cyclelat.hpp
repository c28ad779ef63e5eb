#pragma once

#include "dyndeg/lp.hpp"
#include "dyndeg/roots.hpp"

#include <map>
#include <string>
#include <vector>

namespace dyndeg {

using RatVector = std::vector<Rat>;

// Finite-rank model of N^p(X) with its pairing against N^{k-p}.
struct CycleLattice {
  unsigned dim = 2;   // k
  unsigned codim = 1; // p
  std::vector<std::string> labels;
  RatMatrix pairing;           // rank(N^p) x rank(N^{k-p})
  RatVector degree_vector;     // deg(v) = degree_vector . v
  std::vector<RatVector> effective_generators;

  std::size_t rank() const { return labels.size(); }
  Rat degree(const RatVector &v) const;
  // Throws ValidationError on a degenerate pairing or a generator of
  // nonpositive degree.
  void validate() const;
};

// Blowup of P^2 at m general points: basis H, E1..Em, pairing
// diag(1, -1, ..., -1), polarization (m+1)H - E1 - ... - Em. Effective
// generators: H for m = 0, otherwise the E_i, the lines H - E_i - E_j
// (H - E1 when m = 1) and the conic through five points when m = 5.
CycleLattice blowup_lattice(unsigned m);
// Same lattice with an explicit polarization class.
CycleLattice blowup_lattice(unsigned m, const RatVector &omega);
// N^1 of P^1 x P^1 with basis h1, h2 and polarization h1 + h2.
CycleLattice p1p1_lattice();
// Rank-one lattice N^p(P^k).
CycleLattice projective_lattice(unsigned k, unsigned p);

Rat intersect(const CycleLattice &lat, const RatVector &v, const RatVector &w);

struct NormOneResult {
  Rat value;
  RatVector v1, v2;              // v = v1 - v2, both in the generated cone
  RatVector pos_coeffs, neg_coeffs; // cone coefficients of v1 and v2
  RatVector dual;                // optimality certificate
};

NormOneResult norm_one(const CycleLattice &lat, const RatVector &v);

struct Inertia {
  std::size_t positive = 0, negative = 0, zero = 0;
  bool operator==(const Inertia &) const = default;
};

Inertia hodge_signature(const RatMatrix &form);

struct PullbackAction {
  std::map<unsigned, RatMatrix> by_codim; // M_p acting on coordinate vectors
  std::string provenance = "user-supplied";

  const RatMatrix &at(unsigned p) const;
  void validate() const;
};

// sigma^* on the 3-point blowup: H -> 2H - E1 - E2 - E3, E_i -> H - E_j - E_k.
PullbackAction cremona_blowup_action();
// Coxeter element of the reflection group of H - E1 - E2 - E3 and
// E_i - E_{i+1} on the 10-point blowup; spectral radius is Lehmer's number.
PullbackAction coxeter_e10_action();

SpectralReport spectral_data(const PullbackAction &action, unsigned p, double eps = 1e-12);

enum class Verdict { HypothesisNotMet, Pass, Fail };
std::string to_string(Verdict v);

struct SimplicityResult {
  Verdict verdict = Verdict::HypothesisNotMet;
  Interval r1;
  bool simple = false;
  Interval max_other; // largest modulus among the other roots
  std::string detail;
};

SimplicityResult simplicity_check(const PullbackAction &action, const Interval &lambda2,
                                  double tol = 1e-9);

struct ConeCheckResult {
  Verdict verdict = Verdict::HypothesisNotMet;
  Interval r1, r2;
  std::optional<SimplicityResult> simplicity;
  std::string detail;
};

// Throws ConeNotPreserved when M_2 moves an effective generator of lat2
// out of the generated cone.
ConeCheckResult cone_preservation_r1r2_check(const PullbackAction &action,
                                             const CycleLattice &lat2, double tol = 1e-9);

} // namespace dyndeg
