#include "doctest.h"

#include "dyndeg/cli.hpp"

#include <fstream>
#include <sstream>

using namespace dyndeg;
using namespace dyndeg::cli;

namespace {

std::string slurp(const std::string &rel) {
  std::ifstream in(std::string(DYNDEG_SOURCE_DIR) + "/" + rel, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Report run_file(const std::string &rel, const OptionOverrides &o = {}) {
  JobSpec job = parse_job(slurp(rel));
  apply_overrides(job, o);
  return run_job(job);
}

} // namespace

TEST_CASE("parse errors carry line and column") {
  try {
    run_file("tests/data/malformed_polynomial.json");
    FAIL("expected a parse error");
  } catch (const JobParseError &e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 25);
    CHECK(exit_code_for(e) == kInputError);
  }
  try {
    parse_job(slurp("tests/data/malformed_json.json"));
    FAIL("expected a parse error");
  } catch (const JobParseError &e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 35);
  }
}

TEST_CASE("job validation") {
  CHECK_THROWS_AS(parse_job("[1, 2]"), ValidationError);
  CHECK_THROWS_AS(parse_job(R"({"kind": "nonsense"})"), ValidationError);
  CHECK_THROWS_AS(parse_job(R"({"kind": "degrees", "options": {"n_max": -1}})"), ValidationError);
  const JobSpec job = parse_job(R"({"kind": "degrees", "space": 2, "map": [["x0", "x1", "x3"]]})");
  try {
    run_job(job);
    FAIL("expected an error");
  } catch (const JobParseError &e) {
    CHECK(e.line() == 1);
    CHECK(exit_code_for(e) == kInputError);
  }
}

TEST_CASE("overrides replace job options") {
  JobSpec job = parse_job(slurp("jobs/quadratic_p2.json"));
  CHECK(job.options.n_max == 5);
  OptionOverrides o;
  o.n_max = 3;
  o.seed = 7;
  apply_overrides(job, o);
  CHECK(job.options.n_max == 3);
  CHECK(job.options.seed == 7);
  CHECK(job.options.tol == doctest::Approx(1e-2));
}

TEST_CASE("degrees job") {
  const Report r = run_file("jobs/quadratic_p2.json");
  CHECK(r.exit_code == kOk);
  const Json &table = r.doc["results"]["table"];
  REQUIRE(table.size() == 6);
  for (std::size_t n = 0; n < table.size(); ++n) {
    CHECK(table[n]["d_n"]["flag"] == "EXACT");
    CHECK(table[n]["d_n"]["value"] == (1 << n));
  }
  CHECK(r.doc["results"]["lambda1"]["upper_bound"]["hi"] == doctest::Approx(2.0));
}

TEST_CASE("term cap truncates with exit 2") {
  OptionOverrides o;
  o.max_terms = 30;
  const Report r = run_file("jobs/quadratic_p2.json", o);
  CHECK(r.exit_code == kTruncated);
  CHECK(r.doc["status"] == "TRUNCATED");
  CHECK(r.doc["results"]["table"].size() == 4);
}

TEST_CASE("monomial job lambdas") {
  const Report r = run_file("jobs/golden_monomial.json");
  CHECK(r.exit_code == kOk);
  const Json &l = r.doc["results"]["lambdas"];
  REQUIRE(l.size() == 3);
  CHECK(l[0]["value"] == 1);
  CHECK(l[1]["flag"] == "CERTIFIED_INTERVAL");
  CHECK(l[1]["lo"].get<double>() <= 2.6180339887498949);
  CHECK(l[1]["hi"].get<double>() >= 2.6180339887498949);
  CHECK(l[2]["value"] == 1);
}

TEST_CASE("cremona report matches golden bytes") {
  const Report a = run_job(cremona_degrees_job());
  CHECK(a.exit_code == kOk);
  CHECK(a.serialize() == slurp("tests/golden/cremona_degrees.json"));
  CHECK(a.serialize() == run_file("jobs/cremona_degrees.json").serialize());
}

TEST_CASE("suites") {
  CHECK_THROWS_AS(run_suite("nosuch", 1), Error);
  try {
    run_suite("nosuch", 1);
  } catch (const Error &e) {
    CHECK(e.kind() == "UnknownSuite");
    CHECK(exit_code_for(e) == kInputError);
  }
  CHECK(suite_names().size() >= 11);
  const Report r = run_suite("norm-axioms", 1);
  CHECK(r.exit_code == kOk);
  CHECK(r.serialize() == run_suite("norm-axioms", 1).serialize());
}

TEST_CASE("error report") {
  const Report r = error_report(JobParseError("bad", 3, 9));
  CHECK(r.exit_code == kInputError);
  CHECK(r.doc["status"] == "ERROR");
  CHECK(r.doc["error"]["line"] == 3);
  CHECK(r.doc["error"]["column"] == 9);
  CHECK(r.table.find("line 3, column 9") != std::string::npos);
}
