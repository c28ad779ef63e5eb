#pragma once

#include "dyndeg/degseq.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace dyndeg::cli {

using Json = nlohmann::json;

// Process exit status, one class per outcome.
enum ExitCode : int {
  kOk = 0,
  kPropertyFail = 1,
  kTruncated = 2,
  kInputError = 3,
  kComputationError = 4,
};

// ParseError located in a job file (1-based line and column).
class JobParseError : public ParseError {
public:
  JobParseError(const std::string &what, std::size_t line, std::size_t column)
      : ParseError(what, column), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

struct JobOptions {
  unsigned n_max = 6;
  double tol = 1e-2;
  std::uint64_t seed = 1;
  ResourceCaps caps;
};

struct JobSpec {
  std::string kind; // degrees, monomial, lattice, relative, product-formula, property-suite
  Json payload;
  JobOptions options;
  std::string source; // raw job text, for error locations
};

// Overrides from the command line; unset fields keep the job's values.
struct OptionOverrides {
  std::optional<unsigned> n_max;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_terms;
  std::optional<std::size_t> max_coeff_bits;
};

JobSpec parse_job(const std::string &text);
void apply_overrides(JobSpec &job, const OptionOverrides &o);

struct Report {
  Json doc;          // machine-readable report
  std::string table; // human-readable summary
  int exit_code = kOk;

  // Deterministic serialization: sorted keys, two-space indent.
  std::string serialize() const;
};

Report run_job(const JobSpec &job);

// Degrees job for the Cremona involution with n_max = 6, seed 1.
JobSpec cremona_degrees_job();

// Suites: oracle-vs-symbolic, lambda-convergence, log-concavity,
// submultiplicativity, cremona-golden, linear-conjugacy, product-formula,
// relative-well-definedness, hodge-signature, simplicity, norm-axioms, all.
Report run_suite(const std::string &name, std::uint64_t seed);
const std::vector<std::string> &suite_names();

int exit_code_for(const Error &e);
Report error_report(const Error &e);

} // namespace dyndeg::cli
