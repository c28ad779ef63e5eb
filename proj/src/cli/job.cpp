#include "common.hpp"

#include <iomanip>
#include <set>

namespace dyndeg::cli {
namespace {

std::pair<std::size_t, std::size_t> line_col(const std::string &text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const std::set<std::string> &known_kinds() {
  static const std::set<std::string> k{"degrees",  "monomial",        "lattice",
                                       "relative", "product-formula", "property-suite"};
  return k;
}

template <class T> T read_option(const Json &opts, const char *key, T fallback) {
  if (!opts.contains(key)) return fallback;
  const Json &v = opts.at(key);
  if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw ValidationError(std::string("option ") + key + " must be a number");
  } else {
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw ValidationError(std::string("option ") + key + " must be a nonnegative integer");
  }
  return v.get<T>();
}

} // namespace

Json int_value(const Int &z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Json rat_value(const Rat &q) {
  Rat c = q;
  c.canonicalize();
  if (c.get_den() == 1) return int_value(c.get_num());
  return c.get_str();
}

Json exact(const Int &z) { return {{"flag", kExact}, {"value", int_value(z)}}; }
Json exact(const Rat &q) { return {{"flag", kExact}, {"value", rat_value(q)}}; }

Json exact_matrix(const IntMatrix &m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_value(m(i, j)));
    rows.push_back(row);
  }
  return {{"flag", kExact}, {"value", rows}};
}

Json exact_matrix(const RatMatrix &m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_value(m(i, j)));
    rows.push_back(row);
  }
  return {{"flag", kExact}, {"value", rows}};
}

Json interval(const Interval &v, const char *flag) {
  return {{"flag", flag}, {"lo", v.lo}, {"hi", v.hi}};
}

Json int_list(const std::vector<Int> &v) {
  Json out = Json::array();
  for (const Int &z : v) out.push_back(int_value(z));
  return out;
}

std::string fmt(double x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

std::string fmt(const Interval &v, int digits) {
  return "[" + fmt(v.lo, digits) + ", " + fmt(v.hi, digits) + "]";
}

const Json &require(const Json &obj, const std::string &key, const std::string &path) {
  if (!obj.is_object() || !obj.contains(key))
    throw ValidationError("missing field " + path + "/" + key);
  return obj.at(key);
}

Int read_int(const Json &j, const std::string &path) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Int z;
    if (z.set_str(j.get<std::string>(), 10) == 0) return z;
  }
  throw ValidationError("expected an integer at " + path);
}

Rat read_rat(const Json &j, const std::string &path) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) {
    Rat q;
    if (q.set_str(j.get<std::string>(), 10) == 0 && q.get_den() != 0) {
      q.canonicalize();
      return q;
    }
  }
  throw ValidationError("expected an exact rational at " + path);
}

IntMatrix read_int_matrix(const Json &j, const std::string &path) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ValidationError("expected a row-major integer matrix at " + path);
  const std::size_t cols = j[0].size();
  std::vector<std::vector<Int>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string rp = path + "/" + std::to_string(i);
    if (!j[i].is_array() || j[i].size() != cols) throw ValidationError("ragged matrix row at " + rp);
    std::vector<Int> row;
    for (std::size_t c = 0; c < cols; ++c) row.push_back(read_int(j[i][c], rp + "/" + std::to_string(c)));
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows);
}

RatMatrix read_rat_matrix(const Json &j, const std::string &path) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ValidationError("expected a row-major rational matrix at " + path);
  std::vector<std::vector<Rat>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != j[0].size())
      throw ValidationError("ragged matrix row at " + path + "/" + std::to_string(i));
    rows.push_back(read_rat_vector(j[i], path + "/" + std::to_string(i)));
  }
  return RatMatrix::from_rows(rows);
}

std::vector<Rat> read_rat_vector(const Json &j, const std::string &path) {
  if (!j.is_array()) throw ValidationError("expected a list of rationals at " + path);
  std::vector<Rat> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_rat(j[i], path + "/" + std::to_string(i)));
  return v;
}

AmbientSpace read_space(const JobSpec &job) {
  const Json &s = require(job.payload, "space");
  std::vector<unsigned> factors;
  auto positive = [](const Json &k) { return k.is_number_integer() && k.get<long long>() > 0; };
  if (positive(s)) {
    factors.push_back(s.get<unsigned>());
  } else if (s.is_array() && !s.empty()) {
    for (const Json &k : s) {
      if (!positive(k))
        throw ValidationError("space factors must be positive integers at /space");
      factors.push_back(k.get<unsigned>());
    }
  } else {
    throw ValidationError("space must be a positive integer or a list of them at /space");
  }
  return AmbientSpace(factors);
}

RationalMap read_map(const JobSpec &job, const AmbientSpace &space) {
  const Json &m = require(job.payload, "map");
  if (!m.is_array() || m.size() != space.num_factors())
    throw ValidationError("map needs one component list per factor at /map");
  std::vector<std::vector<std::string>> comps;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i].is_array()) throw ValidationError("expected a list of strings at /map/" + std::to_string(i));
    std::vector<std::string> tuple;
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      const std::string path = "/map/" + std::to_string(i) + "/" + std::to_string(j);
      if (!m[i][j].is_string()) throw ValidationError("expected a polynomial string at " + path);
      const std::string expr = m[i][j].get<std::string>();
      try {
        (void)parse_expression(expr, space);
      } catch (const Error &e) {
        if (e.kind() != "SyntaxError" && e.kind() != "UnknownVariable" &&
            e.kind() != "HomogeneityError")
          throw;
        const std::string quoted = Json(expr).dump();
        const std::size_t at = job.source.find(quoted);
        std::size_t line = 0, col = 0;
        if (at != std::string::npos) {
          std::tie(line, col) = line_col(job.source, at + 1);
          col += e.column().value_or(1) - 1;
        }
        throw JobParseError(e.kind() + " in " + path + ": " + e.what(), line, col);
      }
      tuple.push_back(expr);
    }
    comps.push_back(std::move(tuple));
  }
  return RationalMap::parse(space, space, comps);
}

long draw(std::mt19937_64 &rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

Json lambda_json(const Lambda1Report &rep) {
  Json bounds = Json::array();
  for (const UpperBound &b : rep.upper_bounds) {
    Json e{{"n", b.n}, {"kind", b.kind}, {"value", interval(b.value, kCertified)}};
    if (b.kind == "row_sum") e["base"] = exact(b.base);
    bounds.push_back(e);
  }
  Json ratios = Json::array();
  for (double r : rep.ratios) ratios.push_back(r);
  return {{"estimate", interval(rep.best_estimate, kHeuristic)},
          {"upper_bound", interval({1.0, rep.best_estimate.hi}, kCertified)},
          {"ratios_converged", rep.certified},
          {"ratios", {{"flag", kHeuristic}, {"value", ratios}}},
          {"submult_constant", exact(rep.submult_constant)},
          {"upper_bounds", bounds}};
}

Json options_json(const JobOptions &o) {
  return {{"n_max", o.n_max},
          {"tol", o.tol},
          {"seed", o.seed},
          {"max_terms", o.caps.max_terms},
          {"max_coeff_bits", o.caps.max_coeff_bits}};
}

JobSpec parse_job(const std::string &text) {
  JobSpec job;
  job.source = text;
  try {
    job.payload = Json::parse(text);
  } catch (const Json::parse_error &e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw JobParseError("malformed job file: " + std::string(e.what()), line, col);
  }
  if (!job.payload.is_object()) throw ValidationError("job file must be a JSON object");
  const Json &kind = require(job.payload, "kind");
  if (!kind.is_string() || !known_kinds().count(kind.get<std::string>()))
    throw ValidationError("unknown job kind at /kind");
  job.kind = kind.get<std::string>();
  if (job.payload.contains("options")) {
    const Json &o = job.payload.at("options");
    if (!o.is_object()) throw ValidationError("options must be an object at /options");
    job.options.n_max = read_option(o, "n_max", job.options.n_max);
    job.options.tol = read_option(o, "tol", job.options.tol);
    job.options.seed = read_option(o, "seed", job.options.seed);
    job.options.caps.max_terms = read_option(o, "max_terms", job.options.caps.max_terms);
    job.options.caps.max_coeff_bits =
        read_option(o, "max_coeff_bits", job.options.caps.max_coeff_bits);
  }
  return job;
}

void apply_overrides(JobSpec &job, const OptionOverrides &o) {
  if (o.n_max) job.options.n_max = *o.n_max;
  if (o.tol) job.options.tol = *o.tol;
  if (o.seed) job.options.seed = *o.seed;
  if (o.max_terms) job.options.caps.max_terms = *o.max_terms;
  if (o.max_coeff_bits) job.options.caps.max_coeff_bits = *o.max_coeff_bits;
}

std::string Report::serialize() const { return doc.dump(2) + "\n"; }

int exit_code_for(const Error &e) {
  static const std::set<std::string> input{
      "SyntaxError",      "HomogeneityError", "UnknownVariable", "ParseError",
      "ValidationError",  "UnknownSuite",     "SpaceMismatch",   "DimensionMismatch",
      "ZeroMap",          "SingularMatrix",   "NotInvariant",    "NotTriangular",
      "ShapeMismatch",    "Unsupported"};
  if (e.kind() == "ResourceLimit") return kTruncated;
  if (input.count(e.kind())) return kInputError;
  return kComputationError;
}

Report error_report(const Error &e) {
  Report r;
  r.exit_code = exit_code_for(e);
  Json err{{"kind", e.kind()}, {"message", e.what()}};
  if (const auto *located = dynamic_cast<const JobParseError *>(&e)) err["line"] = located->line();
  if (e.column()) err["column"] = *e.column();
  r.doc = {{"format", "dyndeg-report/1"}, {"status", "ERROR"}, {"exit_code", r.exit_code},
           {"error", err}};
  std::ostringstream os;
  os << "error: " << e.kind();
  if (const auto *located = dynamic_cast<const JobParseError *>(&e))
    os << " at line " << located->line() << ", column " << e.column().value_or(0);
  os << ": " << e.what() << "\n";
  r.table = os.str();
  return r;
}

} // namespace dyndeg::cli
