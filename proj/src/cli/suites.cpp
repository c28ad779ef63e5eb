#include "common.hpp"

#include <functional>

namespace dyndeg::cli {
namespace {

const AmbientSpace P2 = AmbientSpace::projective(2);
const AmbientSpace P1P1({1, 1});

struct Criterion {
  explicit Criterion(std::string n) : name(std::move(n)) {}
  std::string name;
  bool pass = true;
  std::string summary;
  Json detail = Json::object();
};

using SuiteFn = std::function<Criterion(std::uint64_t)>;

RationalMap cremona() { return RationalMap::parse(P2, P2, {{"x1*x2", "x0*x2", "x0*x1"}}); }
RationalMap squares() { return RationalMap::parse(P2, P2, {{"x0^2", "x1^2", "x2^2"}}); }

Json matrix_value(const IntMatrix &m) { return exact_matrix(m)["value"]; }

IntMatrix random_matrix(std::mt19937_64 &rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = draw(rng, lo, hi);
  return m;
}

IntMatrix random_invertible(std::mt19937_64 &rng, std::size_t n, long lo, long hi) {
  for (;;) {
    IntMatrix m = random_matrix(rng, n, n, lo, hi);
    if (determinant(m) != 0) return m;
  }
}

std::vector<IntMatrix> nonnegative_samples(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<IntMatrix> out;
  while (out.size() < count) out.push_back(random_invertible(rng, 2, 0, 3));
  return out;
}

std::vector<long> scalars(const DegreeSequence &s) {
  std::vector<long> out;
  for (std::size_t n = 0; n <= s.n_max(); ++n) out.push_back(s.surrogate(n).get_si());
  return out;
}

Criterion oracle_vs_symbolic(std::uint64_t seed) {
  Criterion c("oracle-vs-symbolic");
  const unsigned n_max = 6;
  Json cases = Json::array();
  for (const IntMatrix &A : nonnegative_samples(seed, 10)) {
    const RationalMap f = monomial_to_rational_map(MonomialMap(A), ToricModel::ProductP1);
    const DegreeSequence seq = iterate_degrees(f, n_max);
    bool ok = !seq.truncated() && seq.n_max() == n_max;
    IntMatrix power = IntMatrix::identity(2);
    for (std::size_t n = 0; ok && n <= n_max; ++n) {
      if (n) power = power * A;
      ok = seq.entries[n] == power;
    }
    c.pass = c.pass && ok;
    cases.push_back({{"A", matrix_value(A)}, {"D_n_equals_A_pow_n", ok}});
  }
  c.detail = {{"n_max", n_max}, {"cases", cases}};
  c.summary = "10 random nonnegative 2x2 matrices, D_n = A^n on (P^1)^2 for n <= 6";
  return c;
}

Criterion lambda_convergence(std::uint64_t) {
  Criterion c("lambda-convergence");
  Json cases = Json::array();
  for (const IntMatrix &A : {IntMatrix{{2, 1}, {1, 1}}, IntMatrix{{1, 1}, {1, 0}}}) {
    const RationalMap f = monomial_to_rational_map(MonomialMap(A), ToricModel::ProductP1);
    const DegreeSequence seq = iterate_degrees(f, 10);
    const Lambda1Report lam = lambda_estimate(seq, 1);
    const Interval rho = spectral_radius_certified(A, 1e-12);
    const double best = lam.best_estimate.hi;
    double row_sum = 0;
    for (const UpperBound &b : lam.upper_bounds)
      if (b.n == 10 && b.kind == "row_sum") row_sum = b.value.hi;
    const bool ok = seq.n_max() == 10 && best <= 1.05 * rho.hi && best >= 0.95 * rho.lo;
    c.pass = c.pass && ok;
    cases.push_back({{"A", matrix_value(A)},
                     {"rho", interval(rho, kCertified)},
                     {"best_upper_bound", best},
                     {"row_sum_bound_n10", row_sum},
                     {"relative_gap", (best - rho.lo) / rho.lo},
                     {"pass", ok}});
  }
  c.detail = {{"cases", cases}};
  c.summary = "best upper bound at n=10 within 5% of the certified spectral radius";
  return c;
}

Criterion log_concavity(std::uint64_t seed) {
  Criterion c("log-concavity");
  std::mt19937_64 rng(seed);
  std::size_t checked = 0;
  Json failures = Json::array();
  for (int i = 0; i < 50; ++i) {
    const auto k = static_cast<std::size_t>(draw(rng, 1, 4));
    const IntMatrix A = random_invertible(rng, k, -3, 3);
    const auto lam = monomial_dynamical_degrees(MonomialMap(A));
    bool ok = lam[0].lo == 1.0 && lam[0].hi == 1.0;
    for (std::size_t p = 0; p <= k; ++p) ok = ok && lam[p].lo >= 1.0 - 1e-9;
    for (std::size_t p = 1; p < k; ++p)
      ok = ok && (lam[p] * lam[p]).hi >= (lam[p - 1] * lam[p + 1]).lo - 1e-9;
    ++checked;
    if (!ok) failures.push_back(matrix_value(A));
  }
  c.pass = failures.empty();
  c.detail = {{"matrices", checked}, {"failures", failures}};
  c.summary = std::to_string(checked) + " random integer matrices, k <= 4";
  return c;
}

Criterion submultiplicativity(std::uint64_t seed) {
  Criterion c("submultiplicativity");
  std::vector<std::pair<std::string, DegreeSequence>> seqs;
  seqs.emplace_back("cremona", iterate_degrees(cremona(), 6));
  seqs.emplace_back("squares", iterate_degrees(squares(), 6));
  seqs.emplace_back("henon-like",
                    iterate_degrees(RationalMap::parse(P2, P2, {{"x0^2 + x1*x2", "x0*x2", "x2^2"}}), 5));
  for (const IntMatrix &A : nonnegative_samples(seed, 4))
    seqs.emplace_back("monomial " + matrix_value(A).dump(),
                      iterate_degrees(monomial_to_rational_map(MonomialMap(A), ToricModel::ProductP1), 6));
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 3; ++i) {
    std::vector<std::string> comps;
    const char *monos[] = {"x0^2", "x1^2", "x2^2", "x0*x1", "x0*x2", "x1*x2"};
    for (int j = 0; j < 3; ++j) {
      std::string s = "0";
      for (const char *m : monos) {
        const long a = draw(rng, -2, 2);
        s += (a < 0 ? " - " : " + ") + std::to_string(std::labs(a)) + "*" + m;
      }
      comps.push_back(s);
    }
    const RationalMap f = RationalMap::parse(P2, P2, {comps});
    if (!is_dominant(f)) continue;
    seqs.emplace_back("random quadratic " + std::to_string(i), iterate_degrees(f, 4));
  }
  Json cases = Json::array();
  for (const auto &[name, seq] : seqs) {
    bool ok = submultiplicativity_violations(seq).empty();
    for (std::size_t n = 0; n <= seq.n_max(); ++n)
      for (std::size_t m = 0; n + m <= seq.n_max(); ++m)
        ok = ok && seq.surrogate(n + m) <= seq.surrogate(n) * seq.surrogate(m);
    c.pass = c.pass && ok;
    cases.push_back({{"sequence", name}, {"d_n", scalars(seq)}, {"pass", ok}});
  }
  const SemiConjugacy sc = build_semiconjugacy(
      RationalMap::parse(P1P1, P1P1, {{"x0^2", "x1^2"}, {"x0*y0^2 + x1*y1^2", "x1*y0*y1"}}), 1);
  const RelativeDegreeReport rel = relative_degree_sequence(sc, 1, 5, seed);
  const bool rel_ok = rel.submultiplicativity_violations().empty();
  c.pass = c.pass && rel_ok;
  cases.push_back({{"sequence", "relative p=1"}, {"d_n", int_list(rel.entries)}, {"pass", rel_ok}});
  c.detail = {{"cases", cases}};
  c.summary = std::to_string(cases.size()) + " sequences, d_{n+m} <= d_n d_m exactly";
  return c;
}

Criterion cremona_golden(std::uint64_t) {
  Criterion c("cremona-golden");
  const Report r = run_job(cremona_degrees_job());
  const Json &res = r.doc["results"];
  std::vector<long> d;
  for (const Json &row : res["table"]) d.push_back(row["d_n"]["value"].get<long>());
  const Json &est = res["lambda1"]["estimate"];
  const Json &stab = res["stability"];
  const bool degrees_ok = d == std::vector<long>{1, 2, 1, 2, 1, 2, 1};
  const bool lambda_ok = est["lo"].get<double>() == 1.0 && est["hi"].get<double>() == 1.0;
  const bool stab_ok = stab.contains("instability_at") && stab["instability_at"] == 2 &&
                       stab["removed_factor"] == Json::array({"x0*x1*x2"});
  c.pass = degrees_ok && lambda_ok && stab_ok && r.exit_code == kOk;
  c.detail = {{"degrees", d}, {"lambda1", est}, {"stability", stab}};
  c.summary = "Cremona degrees 1,2,1,2,1,2,1; lambda_1 = 1; instability at n=2";
  return c;
}

Criterion linear_conjugacy(std::uint64_t seed) {
  Criterion c("linear-conjugacy");
  std::mt19937_64 rng(seed);
  Json cases = Json::array();
  const std::vector<std::pair<std::string, RationalMap>> maps{{"cremona", cremona()},
                                                              {"squares", squares()}};
  for (int i = 0; i < 5; ++i) {
    const IntMatrix L = random_invertible(rng, 3, -2, 2);
    for (const auto &[name, f] : maps) {
      const RationalMap g = conjugate_map(f, {to_rational(L)});
      const DegreeSequence a = iterate_degrees(f, 5), b = iterate_degrees(g, 5);
      const bool ok = !b.truncated() && a.entries == b.entries;
      c.pass = c.pass && ok;
      cases.push_back({{"map", name}, {"L", matrix_value(L)}, {"d_n", scalars(b)}, {"pass", ok}});
    }
  }
  c.detail = {{"cases", cases}};
  c.summary = "5 random conjugators, sequences of f and L f L^-1 agree for n <= 5";
  return c;
}

Criterion product_formula(std::uint64_t seed) {
  Criterion c("product-formula");
  std::mt19937_64 rng(seed);
  const std::pair<std::size_t, std::size_t> shapes[] = {{2, 1}, {2, 2}, {1, 2}};
  Json cases = Json::array();
  for (int i = 0; i < 20; ++i) {
    const auto [l, f] = shapes[i % 3];
    const IntMatrix B = random_invertible(rng, l, -3, 3);
    const IntMatrix D = random_invertible(rng, f, -3, 3);
    const IntMatrix C = random_matrix(rng, f, l, -3, 3);
    IntMatrix A(l + f, l + f), P(l, l + f);
    for (std::size_t r = 0; r < l; ++r) {
      P(r, r) = 1;
      for (std::size_t s = 0; s < l; ++s) A(r, s) = B(r, s);
    }
    for (std::size_t r = 0; r < f; ++r) {
      for (std::size_t s = 0; s < l; ++s) A(l + r, s) = C(r, s);
      for (std::size_t s = 0; s < f; ++s) A(l + r, l + s) = D(r, s);
    }
    const ProductFormulaReport pf = product_formula_check(MonomialSemiConjugacy(A, P, B));
    c.pass = c.pass && pf.pass;
    cases.push_back({{"A", matrix_value(A)}, {"split", l}, {"pass", pf.pass}});
  }

  // Skew product over z -> z^2 with squaring fibers.
  const SemiConjugacy sc = build_semiconjugacy(
      RationalMap::parse(P1P1, P1P1, {{"x0^2", "x1^2"}, {"x0*y0^2", "x1*y1^2"}}), 1);
  const unsigned n = 8;
  const Interval l1f = lambda_estimate(iterate_degrees(sc.f, n), 1).best_estimate;
  const Interval l1g = lambda_estimate(iterate_degrees(sc.g, n), 1).best_estimate;
  const auto e = static_cast<double>(topological_degree(sc.f, seed));
  const auto lrel = relative_lambdas(sc, n, seed);
  const std::vector<Interval> lf{Interval::point(1), l1f, Interval::point(e)};
  const std::vector<Interval> lg{Interval::point(1), l1g};
  const ProductFormulaReport pf = product_formula_verify(sc, lf, lg, lrel, 1e-2);
  const bool values_ok = std::abs(l1f.hi - 2.0) <= 1e-2 && std::abs(e - 4.0) <= 1e-2 &&
                         std::abs(e - l1g.hi * lrel[1].hi) <= 1e-2 &&
                         std::abs(l1f.hi - std::max(l1g.hi, lrel[1].hi)) <= 1e-2;
  c.pass = c.pass && pf.pass && values_ok;
  c.detail = {{"monomial_cases", cases},
              {"skew_product",
               {{"lambda1_f", interval(l1f, kHeuristic)},
                {"lambda2_f", e},
                {"lambda1_g", interval(l1g, kHeuristic)},
                {"lambda1_rel", interval(lrel[1], kHeuristic)},
                {"formula_pass", pf.pass},
                {"values_pass", values_ok}}}};
  c.summary = "20 block-triangular monomial maps and the squaring skew product at n=8";
  return c;
}

Criterion relative_well_definedness(std::uint64_t seed) {
  Criterion c("relative-well-definedness");
  const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> named{
      {"linear fibers", {{"x0^2", "x1^2"}, {"x0*y0", "x1*y1"}}},
      {"squaring fibers", {{"x0^2", "x1^2"}, {"x0*y0^2", "x1*y1^2"}}},
      {"mixed fibers", {{"x0^2", "x1^2"}, {"x0*y0^2 + x1*y1^2", "x1*y0*y1"}}}};
  std::mt19937_64 rng(seed);
  Json cases = Json::array();
  for (const auto &[name, comps] : named) {
    const SemiConjugacy sc = build_semiconjugacy(RationalMap::parse(P1P1, P1P1, comps), 1);
    std::vector<std::pair<std::vector<Int>, std::vector<Int>>> samples;
    for (int tries = 0; samples.size() < 2 && tries < 6; ++tries) {
      std::vector<Int> pt = random_base_point(sc, rng());
      if (auto d = fiber_degrees(sc, 1, 6, pt)) samples.emplace_back(std::move(pt), std::move(*d));
    }
    const bool ok = samples.size() == 2 && samples[0].second == samples[1].second;
    c.pass = c.pass && ok;
    Json pts = Json::array(), seqs = Json::array();
    for (const auto &[pt, d] : samples) {
      pts.push_back(int_list(pt));
      seqs.push_back(int_list(d));
    }
    cases.push_back({{"map", name}, {"base_points", pts}, {"fiber_degrees", seqs}, {"pass", ok}});
  }
  c.detail = {{"cases", cases}};
  c.summary = "two independent base points give equal fiber degrees for n <= 6";
  return c;
}

Criterion hodge_signature_suite(std::uint64_t) {
  Criterion c("hodge-signature");
  Json cases = Json::array();
  for (unsigned m = 0; m <= 5; ++m) {
    const Inertia in = hodge_signature(blowup_lattice(m).pairing);
    const bool ok = in == Inertia{1, m, 0};
    c.pass = c.pass && ok;
    cases.push_back({{"m", m}, {"inertia", {in.positive, in.negative, in.zero}}, {"pass", ok}});
  }
  c.detail = {{"cases", cases}};
  c.summary = "blowups at m = 0..5 points have inertia (1, m, 0)";
  return c;
}

Criterion simplicity(std::uint64_t) {
  Criterion c("simplicity");
  const SimplicityResult lehmer = simplicity_check(coxeter_e10_action(), Interval::point(1.0));
  const SimplicityResult crem = simplicity_check(cremona_blowup_action(), Interval::point(1.0));
  const bool lehmer_ok = lehmer.verdict == Verdict::Pass && lehmer.simple &&
                         lehmer.r1.lo >= 1.17627 && lehmer.r1.hi <= 1.17629 &&
                         lehmer.max_other.hi <= 1.0 + 1e-9;
  const bool crem_ok = crem.verdict == Verdict::HypothesisNotMet;
  c.pass = lehmer_ok && crem_ok;
  c.detail = {{"lehmer",
               {{"verdict", to_string(lehmer.verdict)},
                {"r1", interval(lehmer.r1, kCertified)},
                {"simple", lehmer.simple},
                {"max_other", interval(lehmer.max_other, kCertified)}}},
              {"cremona", {{"verdict", to_string(crem.verdict)}, {"detail", crem.detail}}}};
  c.summary = "Lehmer action PASS with r1 in [1.17627, 1.17629]; Cremona HYPOTHESIS_NOT_MET";
  return c;
}

Criterion norm_axioms(std::uint64_t seed) {
  Criterion c("norm-axioms");
  const CycleLattice lat = blowup_lattice(1);
  std::mt19937_64 rng(seed);
  auto random_vector = [&] {
    RatVector v;
    for (std::size_t i = 0; i < lat.rank(); ++i) v.emplace_back(draw(rng, -20, 20));
    return v;
  };
  std::size_t homogeneity = 0, triangle = 0;
  Json failures = Json::array();
  for (int i = 0; i < 100; ++i) {
    const RatVector v = random_vector(), w = random_vector();
    long num = 0;
    while (num == 0) num = draw(rng, -5, 5);
    Rat t(num, draw(rng, 1, 5));
    t.canonicalize();
    RatVector tv, sum;
    for (std::size_t j = 0; j < v.size(); ++j) {
      tv.push_back(t * v[j]);
      sum.push_back(v[j] + w[j]);
    }
    const Rat nv = norm_one(lat, v).value, nw = norm_one(lat, w).value;
    const bool hom = norm_one(lat, tv).value == abs(t) * nv;
    const bool tri = norm_one(lat, sum).value <= nv + nw;
    homogeneity += hom;
    triangle += tri;
    if (!hom || !tri) failures.push_back({int_list({v[0].get_num(), v[1].get_num()}), hom, tri});
  }
  Json gens = Json::array();
  bool gens_ok = true;
  for (const RatVector &g : lat.effective_generators) {
    const Rat n = norm_one(lat, g).value, d = lat.degree(g);
    gens_ok = gens_ok && n == d;
    gens.push_back({{"generator", {rat_value(g[0]), rat_value(g[1])}}, {"norm", rat_value(n)},
                    {"degree", rat_value(d)}});
  }
  c.pass = failures.empty() && gens_ok;
  c.detail = {{"homogeneity_pass", homogeneity},
              {"triangle_pass", triangle},
              {"failures", failures},
              {"effective_generators", gens}};
  c.summary = "100 random vectors on the one-point blowup; norm = degree on generators";
  return c;
}

const std::vector<std::pair<std::string, SuiteFn>> &registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"oracle-vs-symbolic", oracle_vs_symbolic},
      {"lambda-convergence", lambda_convergence},
      {"log-concavity", log_concavity},
      {"submultiplicativity", submultiplicativity},
      {"cremona-golden", cremona_golden},
      {"linear-conjugacy", linear_conjugacy},
      {"product-formula", product_formula},
      {"relative-well-definedness", relative_well_definedness},
      {"hodge-signature", hodge_signature_suite},
      {"simplicity", simplicity},
      {"norm-axioms", norm_axioms}};
  return r;
}

} // namespace

JobSpec cremona_degrees_job() {
  JobSpec job;
  job.kind = "degrees";
  job.payload = {{"kind", "degrees"},
                 {"space", 2},
                 {"map", {{"x1*x2", "x0*x2", "x0*x1"}}},
                 {"options", {{"n_max", 6}, {"seed", 1}}}};
  job.options.n_max = 6;
  job.options.seed = 1;
  job.source = job.payload.dump();
  return job;
}

const std::vector<std::string> &suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto &[name, fn] : registry()) n.push_back(name);
    n.push_back("all");
    return n;
  }();
  return names;
}

Report run_suite(const std::string &name, std::uint64_t seed) {
  std::vector<const std::pair<std::string, SuiteFn> *> selected;
  for (const auto &entry : registry())
    if (name == "all" || entry.first == name) selected.push_back(&entry);
  if (selected.empty()) throw UnknownSuite("unknown suite '" + name + "'");

  Report r;
  Json criteria = Json::array();
  std::ostringstream t;
  bool pass = true;
  for (const auto *entry : selected) {
    const Criterion c = entry->second(seed);
    pass = pass && c.pass;
    criteria.push_back({{"name", c.name}, {"pass", c.pass}, {"summary", c.summary}, {"detail", c.detail}});
    t << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.summary << "\n";
  }
  r.exit_code = pass ? kOk : kPropertyFail;
  r.doc = {{"format", "dyndeg-report/1"},
           {"kind", "property-suite"},
           {"suite", name},
           {"seed", seed},
           {"criteria", criteria},
           {"status", pass ? "PASS" : "FAIL"},
           {"exit_code", r.exit_code}};
  r.table = t.str();
  return r;
}

} // namespace dyndeg::cli
