#include "dyndeg/cli.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace dyndeg;
using namespace dyndeg::cli;

namespace {

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read job file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int emit(const Report &r, const std::string &out) {
  if (out == "-") {
    std::cout << r.serialize();
  } else {
    std::cout << r.table;
    if (!out.empty()) {
      std::ofstream f(out, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot write " << out << "\n";
        return kInputError;
      }
      f << r.serialize();
    }
  }
  return r.exit_code;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Degree growth and dynamical degrees of rational maps"};
  app.require_subcommand(1);

  OptionOverrides ov;
  std::string out;
  std::string job_path;
  std::string suite_name;
  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--n-max", ov.n_max, "Number of iterates");
    sub->add_option("--tol", ov.tol, "Tolerance for convergence and interval comparisons");
    sub->add_option("--seed", ov.seed, "Seed for every random choice");
    sub->add_option("--max-terms", ov.max_terms, "Term cap per iterate");
    sub->add_option("--max-coeff-bits", ov.max_coeff_bits, "Coefficient size cap in bits");
    sub->add_option("--out", out, "Write the JSON report here ('-' prints it instead of the table)");
  };

  const std::vector<std::pair<std::string, std::string>> job_commands{
      {"degrees", "degrees"},
      {"monomial", "monomial"},
      {"lattice", "lattice"},
      {"relative", "relative"},
      {"check-product-formula", "product-formula"}};
  std::map<CLI::App *, std::string> kinds;
  for (const auto &[cmd, kind] : job_commands) {
    CLI::App *sub = app.add_subcommand(cmd, "Run a " + kind + " job file");
    sub->add_option("job", job_path, "Job file (JSON)")->required();
    add_common(sub);
    kinds[sub] = kind;
  }
  CLI::App *suite = app.add_subcommand("suite", "Run a property suite");
  suite->add_option("name", suite_name, "Suite name or 'all'")->required();
  add_common(suite);

  CLI11_PARSE(app, argc, argv);

  try {
    if (suite->parsed()) return emit(run_suite(suite_name, ov.seed.value_or(1)), out);
    for (const auto &[sub, kind] : kinds) {
      if (!sub->parsed()) continue;
      JobSpec job = parse_job(read_file(job_path));
      if (job.kind != kind)
        throw ValidationError("job kind '" + job.kind + "' does not match subcommand " +
                              sub->get_name());
      apply_overrides(job, ov);
      return emit(run_job(job), out);
    }
  } catch (const Error &e) {
    const Report r = error_report(e);
    std::cerr << r.table;
    if (!out.empty() && out != "-") {
      std::ofstream f(out, std::ios::binary);
      f << r.serialize();
    } else if (out == "-") {
      std::cout << r.serialize();
    }
    return r.exit_code;
  }
  return kInputError;
}
