#include "common.hpp"

namespace dyndeg::cli {
namespace {

Json header(const JobSpec &job) {
  return {{"format", "dyndeg-report/1"},
          {"kind", job.kind},
          {"seed", job.options.seed},
          {"options", options_json(job.options)},
          {"inputs", job.payload}};
}

void finish(Report &r, const char *status, int code) {
  r.exit_code = code;
  r.doc["status"] = status;
  r.doc["exit_code"] = code;
}

std::string matrix_text(const IntMatrix &m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + m(i, j).get_str();
  }
  return s + "]";
}

std::string factors_text(const std::vector<MPoly> &fs, const AmbientSpace &space) {
  std::string s;
  for (const MPoly &p : fs) {
    if (p.is_constant()) continue;
    if (!s.empty()) s += ", ";
    s += format_polynomial(p, space);
  }
  return s;
}

Json strings_json(const std::vector<std::vector<std::string>> &v) { return v; }

Report run_degrees(const JobSpec &job) {
  const AmbientSpace space = read_space(job);
  const RationalMap f = read_map(job, space);
  const DegreeSequence seq = iterate_degrees(f, job.options.n_max, job.options.caps);
  // Degrees on products of projective spaces are submultiplicative with C = 1.
  const Lambda1Report lam = lambda_estimate(seq, 1, job.options.tol);
  const auto violations = submultiplicativity_violations(seq);
  const StabilityVerdict stab = stability_check(seq);

  Report r;
  r.doc = header(job);
  Json rows = Json::array();
  std::ostringstream t;
  t << "map " << seq.map_id << " on " << space.to_string() << "\n";
  t << "n  multidegree  d_n  upper_bound  terms  removed\n";
  for (std::size_t n = 0; n <= seq.n_max(); ++n) {
    Json row{{"n", n},
             {"multidegree", exact_matrix(seq.entries[n])},
             {"unreduced_multidegree", exact_matrix(seq.unreduced[n])},
             {"reduced", static_cast<bool>(seq.reduced[n])},
             {"d_n", exact(seq.surrogate(n))},
             {"term_count", seq.term_counts[n]}};
    Json removed = Json::array();
    for (const MPoly &p : seq.removed[n]) removed.push_back(format_polynomial(p, space));
    row["removed_factor"] = removed;
    std::string bound = "-";
    if (n >= 1) {
      for (const UpperBound &b : lam.upper_bounds)
        if (b.n == n && b.kind == "row_sum") {
          row["upper_bound"] = interval(b.value, kCertified);
          bound = fmt(b.value.hi);
        }
    }
    rows.push_back(row);
    t << n << "  " << matrix_text(seq.entries[n]) << "  " << seq.surrogate(n) << "  " << bound
      << "  " << seq.term_counts[n] << "  " << factors_text(seq.removed[n], space) << "\n";
  }
  Json viol = Json::array();
  for (const auto &[n, m] : violations) viol.push_back({n, m});
  Json stability{{"horizon", stab.horizon}, {"verdict", stab.verdict}};
  if (stab.instability_at) {
    stability["instability_at"] = *stab.instability_at;
    Json rf = Json::array();
    for (const MPoly &p : stab.removed_factor) rf.push_back(format_polynomial(p, space));
    stability["removed_factor"] = rf;
  }
  r.doc["results"] = {{"map", strings_json(reduce_map(f).to_strings())},
                      {"dominant", true},
                      {"table", rows},
                      {"lambda1", lambda_json(lam)},
                      {"submultiplicativity_violations", viol},
                      {"stability", stability}};
  r.doc["provenance"] = {"multidegrees are exact symbolic reductions",
                         "upper bounds (C d_n)^(1/n) and rho(D_n)^(1/n) are certified",
                         "the lower end of the estimate is a ratio heuristic"};
  t << "lambda_1 estimate " << fmt(lam.best_estimate) << ", certified upper bound "
    << fmt(lam.best_estimate.hi) << "\n";
  t << "stability: " << stab.verdict;
  if (stab.instability_at) t << " (removed " << factors_text(stab.removed_factor, space) << ")";
  t << "\n";
  if (seq.truncated()) {
    r.doc["results"]["truncated"] = {{"at", *seq.truncated_at}, {"reason", seq.truncation_reason}};
    t << "truncated at n=" << *seq.truncated_at << ": " << seq.truncation_reason << "\n";
  }
  if (!violations.empty()) {
    t << "FAIL: submultiplicativity violated\n";
    finish(r, "FAIL", kPropertyFail);
  } else if (seq.truncated()) {
    finish(r, "TRUNCATED", kTruncated);
  } else {
    finish(r, "PASS", kOk);
  }
  r.table = t.str();
  return r;
}

Report run_monomial(const JobSpec &job) {
  const IntMatrix A = read_int_matrix(require(job.payload, "matrix"), "/matrix");
  const MonomialMap m(A);
  const auto lambdas = monomial_dynamical_degrees(m);
  const SpectralReport spec = spectral_report(A, 1e-12);
  const std::size_t k = m.dim();

  Report r;
  r.doc = header(job);
  std::ostringstream t;
  t << "monomial map A = " << matrix_text(A) << ", det " << m.det() << "\n";
  Json lam = Json::array();
  for (std::size_t p = 0; p <= k; ++p) {
    if (p == 0)
      lam.push_back(exact(Int(1)));
    else if (p == k)
      lam.push_back(exact(Int(abs(m.det()))));
    else
      lam.push_back(interval(lambdas[p], kCertified));
    t << "lambda_" << p << " " << fmt(lambdas[p], 10) << "\n";
  }
  bool pass = true;
  Json concavity = Json::array();
  for (std::size_t p = 1; p < k; ++p) {
    const Interval sq = lambdas[p] * lambdas[p];
    const Interval nb = lambdas[p - 1] * lambdas[p + 1];
    const bool ok = sq.hi >= nb.lo - 1e-9;
    pass = pass && ok;
    concavity.push_back({{"p", p}, {"pass", ok}, {"slack", interval(sq - nb, kCertified)}});
  }
  Json moduli = Json::array();
  for (const Interval &v : spec.root_moduli) moduli.push_back(interval(v, kCertified));
  r.doc["results"] = {{"det", exact(m.det())},
                      {"char_poly", {{"flag", kExact}, {"value", int_list(spec.char_poly)}}},
                      {"eigenvalue_moduli", moduli},
                      {"lambdas", lam},
                      {"log_concavity", concavity}};
  if (job.payload.value("symbolic", false)) {
    const RationalMap f = monomial_to_rational_map(m, ToricModel::ProductP1);
    const DegreeSequence seq = iterate_degrees(f, job.options.n_max, job.options.caps);
    Json rows = Json::array();
    IntMatrix power = IntMatrix::identity(k);
    bool agree = true;
    for (std::size_t n = 0; n <= seq.n_max(); ++n) {
      if (n > 0) power = power * A;
      const bool eq = seq.entries[n] == abs_entries(power);
      agree = agree && eq;
      rows.push_back({{"n", n}, {"multidegree", exact_matrix(seq.entries[n])}, {"matches", eq}});
    }
    pass = pass && agree;
    r.doc["results"]["symbolic"] = {{"model", "(P^1)^k"}, {"table", rows}, {"agree", agree}};
    t << "symbolic (P^1)^" << k << " iterates " << (agree ? "match" : "DIFFER FROM") << " |A^n| for n <= "
      << seq.n_max() << "\n";
    if (seq.truncated())
      r.doc["results"]["symbolic"]["truncated"] = {{"at", *seq.truncated_at},
                                                   {"reason", seq.truncation_reason}};
  }
  r.doc["provenance"] = {"lambda_p = spectral radius of the p-th compound matrix, certified by root isolation"};
  finish(r, pass ? "PASS" : "FAIL", pass ? kOk : kPropertyFail);
  r.table = t.str();
  return r;
}

CycleLattice read_lattice(const Json &j) {
  if (j.contains("builtin")) {
    const std::string b = j.at("builtin").get<std::string>();
    if (b == "blowup") {
      const unsigned m = require(j, "m", "/lattice").get<unsigned>();
      if (j.contains("omega")) return blowup_lattice(m, read_rat_vector(j.at("omega"), "/lattice/omega"));
      return blowup_lattice(m);
    }
    if (b == "p1p1") return p1p1_lattice();
    if (b == "projective")
      return projective_lattice(require(j, "k", "/lattice").get<unsigned>(),
                                require(j, "p", "/lattice").get<unsigned>());
    throw ValidationError("unknown builtin lattice '" + b + "' at /lattice/builtin");
  }
  CycleLattice lat;
  lat.dim = j.value("dim", 2u);
  lat.codim = j.value("codim", 1u);
  lat.labels = require(j, "labels", "/lattice").get<std::vector<std::string>>();
  lat.pairing = read_rat_matrix(require(j, "pairing", "/lattice"), "/lattice/pairing");
  lat.degree_vector = read_rat_vector(require(j, "degree", "/lattice"), "/lattice/degree");
  const Json &gens = require(j, "generators", "/lattice");
  for (std::size_t i = 0; i < gens.size(); ++i)
    lat.effective_generators.push_back(read_rat_vector(gens[i], "/lattice/generators/" + std::to_string(i)));
  lat.validate();
  return lat;
}

PullbackAction read_action(const Json &j) {
  if (j.contains("builtin")) {
    const std::string b = j.at("builtin").get<std::string>();
    if (b == "cremona") return cremona_blowup_action();
    if (b == "coxeter-e10") return coxeter_e10_action();
    throw ValidationError("unknown builtin action '" + b + "' at /action/builtin");
  }
  PullbackAction a;
  const Json &ms = require(j, "matrices", "/action");
  for (const auto &[key, val] : ms.items()) {
    unsigned p = 0;
    try {
      p = static_cast<unsigned>(std::stoul(key));
    } catch (const std::exception &) {
      throw ValidationError("codimension keys must be integers at /action/matrices");
    }
    a.by_codim[p] = read_rat_matrix(val, "/action/matrices/" + key);
  }
  a.validate();
  return a;
}

Json spectral_json(const SpectralReport &s) {
  Json moduli = Json::array();
  for (const Interval &v : s.root_moduli) moduli.push_back(interval(v, kCertified));
  return {{"char_poly", {{"flag", kExact}, {"value", int_list(s.char_poly)}}},
          {"radius", interval(s.radius, kCertified)},
          {"root_moduli", moduli}};
}

Report run_lattice(const JobSpec &job) {
  const Json &pl = job.payload;
  if (!pl.contains("lattice") && !pl.contains("action"))
    throw ValidationError("lattice job needs /lattice or /action");
  Report r;
  r.doc = header(job);
  r.doc["results"] = Json::object();
  std::ostringstream t;
  bool pass = true;
  const char *status = "PASS";

  if (pl.contains("lattice")) {
    const CycleLattice lat = read_lattice(pl.at("lattice"));
    const Inertia in = hodge_signature(lat.pairing);
    Json L{{"rank", lat.rank()},
           {"labels", lat.labels},
           {"pairing", exact_matrix(lat.pairing)},
           {"signature",
            {{"flag", kExact}, {"positive", in.positive}, {"negative", in.negative}, {"zero", in.zero}}}};
    t << "lattice of rank " << lat.rank() << ", signature (" << in.positive << ", " << in.negative
      << ", " << in.zero << ")\n";
    if (pl.contains("norm_vectors")) {
      Json norms = Json::array();
      const Json &vs = pl.at("norm_vectors");
      for (std::size_t i = 0; i < vs.size(); ++i) {
        const auto v = read_rat_vector(vs[i], "/norm_vectors/" + std::to_string(i));
        const NormOneResult n = norm_one(lat, v);
        Json v1 = Json::array(), v2 = Json::array(), dual = Json::array();
        for (const Rat &q : n.v1) v1.push_back(rat_value(q));
        for (const Rat &q : n.v2) v2.push_back(rat_value(q));
        for (const Rat &q : n.dual) dual.push_back(rat_value(q));
        norms.push_back({{"norm", exact(n.value)}, {"v1", v1}, {"v2", v2}, {"dual_certificate", dual}});
        t << "||v" << i << "||_1 = " << n.value.get_str() << "\n";
      }
      L["norms"] = norms;
    }
    r.doc["results"]["lattice"] = L;
  }

  if (pl.contains("action")) {
    const PullbackAction a = read_action(pl.at("action"));
    Json A{{"provenance", a.provenance}};
    Json spectra = Json::object();
    for (const auto &[p, M] : a.by_codim) spectra[std::to_string(p)] = spectral_json(spectral_data(a, p));
    A["spectra"] = spectra;
    const Interval lambda2 =
        pl.at("action").contains("lambda2")
            ? Interval::of(read_rat(pl.at("action").at("lambda2"), "/action/lambda2"))
            : Interval::point(1.0);
    const SimplicityResult s = simplicity_check(a, lambda2);
    A["simplicity"] = {{"verdict", to_string(s.verdict)},
                       {"r1", interval(s.r1, kCertified)},
                       {"simple", s.simple},
                       {"max_other", interval(s.max_other, kCertified)},
                       {"lambda2", interval(lambda2, kExact)},
                       {"detail", s.detail}};
    t << "action (" << a.provenance << "): r1 " << fmt(s.r1, 10) << ", simplicity "
      << to_string(s.verdict) << "\n";
    if (s.verdict == Verdict::Fail) pass = false;
    if (s.verdict == Verdict::HypothesisNotMet) status = "HYPOTHESIS_NOT_MET";
    if (pl.contains("lattice2")) {
      const CycleLattice lat2 = read_lattice(pl.at("lattice2"));
      Json cone;
      try {
        const ConeCheckResult c = cone_preservation_r1r2_check(a, lat2);
        cone = {{"verdict", to_string(c.verdict)},
                {"r1", interval(c.r1, kCertified)},
                {"r2", interval(c.r2, kCertified)},
                {"detail", c.detail}};
        if (c.verdict == Verdict::Fail) pass = false;
      } catch (const ConeNotPreserved &e) {
        cone = {{"verdict", to_string(Verdict::HypothesisNotMet)}, {"detail", e.what()}};
      }
      A["cone_check"] = cone;
      t << "cone check: " << cone["verdict"].get<std::string>() << "\n";
    }
    r.doc["results"]["action"] = A;
  }
  r.doc["provenance"] = {"pairings, signatures and norms are exact rational computations",
                         "spectral radii are certified root enclosures"};
  if (!pass)
    finish(r, "FAIL", kPropertyFail);
  else
    finish(r, status, kOk);
  r.table = t.str();
  return r;
}

std::size_t read_split(const JobSpec &job) {
  const Json &s = require(job.payload, "split");
  if (!s.is_number_integer() || s.get<long long>() < 1)
    throw ValidationError("split must be a positive integer at /split");
  return s.get<std::size_t>();
}

Report run_relative(const JobSpec &job) {
  const AmbientSpace space = read_space(job);
  const SemiConjugacy sc = build_semiconjugacy(read_map(job, space), read_split(job));
  std::vector<std::size_t> ps;
  if (job.payload.contains("p")) {
    for (const Json &p : job.payload.at("p")) ps.push_back(p.get<std::size_t>());
  } else {
    for (std::size_t p = 0; p <= sc.fiber_dim(); ++p) ps.push_back(p);
  }

  Report r;
  r.doc = header(job);
  std::ostringstream t;
  t << "f = " << sc.f.to_string() << " over g = " << sc.g.to_string() << " (split "
    << sc.split << ", witnessed)\n";
  Json per_p = Json::array();
  Json skipped = Json::array();
  bool pass = true;
  bool truncated = false;
  std::vector<std::pair<std::size_t, Interval>> lams;
  for (std::size_t p : ps) {
    RelativeDegreeReport rep;
    try {
      rep = relative_degree_sequence(sc, p, job.options.n_max, job.options.seed, job.options.caps);
    } catch (const Unsupported &e) {
      skipped.push_back({{"p", p}, {"reason", e.what()}});
      t << "p=" << p << ": unsupported (" << e.what() << ")\n";
      continue;
    }
    const auto viol = rep.submultiplicativity_violations();
    pass = pass && viol.empty();
    truncated = truncated || rep.truncated_at.has_value();
    Json samples = Json::array(), rejected = Json::array(), v = Json::array();
    for (const auto &s : rep.fiber_samples) samples.push_back(int_list(s));
    for (const auto &s : rep.rejected_samples) rejected.push_back(int_list(s));
    for (const auto &[n, m] : viol) v.push_back({n, m});
    Json entry{{"p", p},
               {"entries", {{"flag", kHeuristic}, {"value", int_list(rep.entries)}}},
               {"lambda", lambda_json(rep.lambda)},
               {"fiber_samples", samples},
               {"rejected_samples", rejected},
               {"submultiplicativity_violations", v}};
    entry["lambda"]["estimate"]["flag"] = kHeuristic;
    entry["lambda"]["upper_bound"]["flag"] = kHeuristic;
    if (rep.truncated_at) entry["truncated"] = {{"at", *rep.truncated_at}, {"reason", rep.truncation_reason}};
    per_p.push_back(entry);
    lams.emplace_back(p, rep.lambda.best_estimate);
    t << "p=" << p << ": degrees";
    for (const Int &d : rep.entries) t << " " << d;
    t << "; lambda " << fmt(rep.lambda.best_estimate) << "\n";
  }
  Json concavity = Json::array();
  for (std::size_t i = 1; i + 1 < lams.size(); ++i) {
    if (lams[i - 1].first + 1 != lams[i].first || lams[i].first + 1 != lams[i + 1].first) continue;
    const Interval sq = lams[i].second * lams[i].second;
    const Interval nb = lams[i - 1].second * lams[i + 1].second;
    const bool ok = sq.hi >= nb.lo - job.options.tol;
    pass = pass && ok;
    concavity.push_back({{"p", lams[i].first}, {"pass", ok}});
  }
  r.doc["results"] = {{"f", strings_json(sc.f.to_strings())},
                      {"g", strings_json(sc.g.to_strings())},
                      {"split", sc.split},
                      {"witnessed", sc.witnessed},
                      {"submult_constant", exact(relative_bound_constant(sc))},
                      {"relative_degrees", per_p},
                      {"unsupported", skipped},
                      {"log_concavity", concavity}};
  r.doc["provenance"] = {"pi o f = g o pi verified by symbolic composition",
                         "fiber degrees use random base points with two-sample agreement; heuristic"};
  if (!pass)
    finish(r, "FAIL", kPropertyFail);
  else if (truncated)
    finish(r, "TRUNCATED", kTruncated);
  else
    finish(r, "PASS", kOk);
  r.table = t.str();
  return r;
}

Json formula_json(const ProductFormulaReport &pf, std::ostringstream &t) {
  Json rows = Json::array();
  for (const ProductFormulaRow &row : pf.rows) {
    rows.push_back({{"p", row.p},
                    {"lhs", interval(row.lhs, kCertified)},
                    {"rhs", interval(row.rhs, kCertified)},
                    {"argmax_j", row.argmax},
                    {"residual", {{"flag", kCertified}, {"value", row.residual}}},
                    {"pass", row.pass}});
    t << "p=" << row.p << ": lambda_p(f) " << fmt(row.lhs) << " vs max_j " << fmt(row.rhs)
      << " (j=" << row.argmax << ") " << (row.pass ? "PASS" : "FAIL") << "\n";
  }
  return rows;
}

Json intervals_json(const std::vector<Interval> &v, const char *flag) {
  Json out = Json::array();
  for (const Interval &x : v) out.push_back(interval(x, flag));
  return out;
}

Report run_product_formula(const JobSpec &job) {
  Report r;
  r.doc = header(job);
  std::ostringstream t;
  const std::size_t split = read_split(job);
  ProductFormulaReport pf;
  if (job.payload.contains("matrix")) {
    const IntMatrix A = read_int_matrix(job.payload.at("matrix"), "/matrix");
    if (split < 1 || split >= A.rows()) throw ValidationError("split must lie strictly inside the matrix");
    IntMatrix P(split, A.rows()), B(split, split);
    for (std::size_t i = 0; i < split; ++i) {
      P(i, i) = 1;
      for (std::size_t j = 0; j < split; ++j) B(i, j) = A(i, j);
    }
    const MonomialSemiConjugacy sc(A, P, B);
    pf = product_formula_check(sc);
    t << "monomial semi-conjugacy A = " << matrix_text(A) << " over B = " << matrix_text(B) << "\n";
    r.doc["results"] = {{"model", "monomial"},
                        {"lambda_f", intervals_json(monomial_dynamical_degrees(MonomialMap(A)), kCertified)},
                        {"lambda_g", intervals_json(monomial_dynamical_degrees(MonomialMap(B)), kCertified)},
                        {"lambda_rel", intervals_json(monomial_relative_degrees(sc), kCertified)}};
  } else {
    const AmbientSpace space = read_space(job);
    if (space.factors() != std::vector<unsigned>{1, 1} || split != 1)
      throw Unsupported("map-based product formula checks support P^1 x P^1 over P^1");
    const SemiConjugacy sc = build_semiconjugacy(read_map(job, space), split);
    const unsigned n = job.options.n_max;
    const DegreeSequence sf = iterate_degrees(sc.f, n, job.options.caps);
    const DegreeSequence sg = iterate_degrees(sc.g, n, job.options.caps);
    const Interval l1f = lambda_estimate(sf, 1, job.options.tol).best_estimate;
    const Interval l1g = lambda_estimate(sg, 1, job.options.tol).best_estimate;
    const auto e = static_cast<double>(topological_degree(sc.f, job.options.seed));
    const std::vector<Interval> lf{Interval::point(1), l1f, Interval::point(e)};
    const std::vector<Interval> lg{Interval::point(1), l1g};
    const std::vector<Interval> lrel = relative_lambdas(sc, n, job.options.seed, job.options.caps);
    pf = product_formula_verify(sc, lf, lg, lrel, job.options.tol);
    const FibrationVerdict probe = surface_primitivity_probe(sc, lf, job.options.tol);
    t << "f = " << sc.f.to_string() << " over g = " << sc.g.to_string() << "\n";
    t << "surface primitivity probe: " << to_string(probe) << "\n";
    r.doc["results"] = {{"model", "skew product"},
                        {"lambda_f", intervals_json(lf, kHeuristic)},
                        {"lambda_g", intervals_json(lg, kHeuristic)},
                        {"lambda_rel", intervals_json(lrel, kHeuristic)},
                        {"primitivity_probe", to_string(probe)}};
    if (sf.truncated() || sg.truncated()) r.doc["results"]["truncated"] = true;
  }
  r.doc["results"]["rows"] = formula_json(pf, t);
  r.doc["results"]["pass"] = pf.pass;
  r.doc["provenance"] = {"monomial degrees are certified compound spectral radii",
                         "skew-product degrees combine symbolic iteration with sampled fibers"};
  finish(r, pf.pass ? "PASS" : "FAIL", pf.pass ? kOk : kPropertyFail);
  r.table = t.str();
  return r;
}

} // namespace

Report run_job(const JobSpec &job) {
  if (job.options.n_max < 1) throw ValidationError("n_max must be at least 1");
  if (job.kind == "degrees") return run_degrees(job);
  if (job.kind == "monomial") return run_monomial(job);
  if (job.kind == "lattice") return run_lattice(job);
  if (job.kind == "relative") return run_relative(job);
  if (job.kind == "product-formula") return run_product_formula(job);
  if (job.kind == "property-suite") {
    const Json &s = require(job.payload, "suite");
    if (!s.is_string()) throw ValidationError("suite must be a string at /suite");
    return run_suite(s.get<std::string>(), job.options.seed);
  }
  throw ValidationError("unknown job kind '" + job.kind + "'");
}

} // namespace dyndeg::cli
