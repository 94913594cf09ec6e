// End-to-end checks of the command-line tool: output schemas, seed
// determinism, exit codes. The binary path and schema location come in
// through compile definitions.

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "schema_check.h"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_tool(const std::string& args) {
  const std::string cmd = std::string(XORMC_BIN_PATH) + " " + args + " 2>/dev/null";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
  res.exit_code = WEXITSTATUS(pclose(pipe));
  return res;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/xormc_clitest_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

nlohmann::json load_schema() {
  std::ifstream in(XORMC_SCHEMA_PATH);
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

void check_against_schema(const std::string& json_text) {
  const nlohmann::json schema = load_schema();
  const nlohmann::json doc = nlohmann::json::parse(json_text);
  std::string why;
  const bool ok = xormc::test::validate_schema(schema, doc, &why);
  INFO("schema violation: ", why);
  CHECK(ok);
}

}  // namespace

TEST_CASE("json outputs validate against the shipped schema") {
  const std::string eq = write_temp("eq.cnf", "p cnf 2 2\n1 -2 0\n-1 2 0\n");
  const std::string weighted =
      write_temp("w.cnf", "c p weight 1 0.75 0\np cnf 2 1\n1 2 0\n");

  for (const std::string args : {
           "count --seed 5 --format json " + eq,
           "sample --samples 6 --seed 5 --format json " + eq,
           "mis --seed 5 --format json " + eq,
           "wcount --seed 5 --format json " + weighted,
           "wsample --samples 6 --seed 5 --format json " + weighted,
           "exact --seed 5 --format json " + weighted,
           "validate --seed 5 --samples 400 --format json " + eq,
       }) {
    const RunResult res = run_tool(args);
    REQUIRE(res.exit_code == 0);
    check_against_schema(res.out);
  }
}

TEST_CASE("seeded runs are byte identical") {
  const std::string eq = write_temp("det.cnf", "p cnf 6 2\n1 -2 0\n3 4 5 0\n");
  for (const std::string args : {
           "count --seed 11 " + eq,
           "sample --samples 20 --seed 11 " + eq,
           "sample --samples 20 --seed 11 --mode multi " + eq,
       }) {
    const RunResult a = run_tool(args);
    const RunResult b = run_tool(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("worker count does not change sample output") {
  const std::string f = write_temp("par.cnf", "p cnf 9 1\n1 2 3 0\n");
  const RunResult w1 = run_tool("sample --samples 40 --seed 13 --workers 1 " + f);
  const RunResult w4 = run_tool("sample --samples 40 --seed 13 --workers 4 " + f);
  CHECK(w1.exit_code == 0);
  CHECK(w1.out == w4.out);
}

TEST_CASE("mis output is consumable as an ind annotation") {
  const std::string eq = write_temp("mis.cnf", "p cnf 2 2\n1 -2 0\n-1 2 0\n");
  const RunResult res = run_tool("mis --seed 1 " + eq);
  CHECK(res.exit_code == 0);
  const bool one = res.out.find("c ind 1 0") != std::string::npos;
  const bool two = res.out.find("c ind 2 0") != std::string::npos;
  CHECK((one || two));
}

TEST_CASE("exit codes distinguish error classes") {
  CHECK(run_tool("count --seed 1 /tmp/xormc_no_such_file.cnf").exit_code == 2);

  const std::string bad = write_temp("bad.cnf", "p cnf 1\n1 0\n");
  CHECK(run_tool("count --seed 1 " + bad).exit_code == 2);

  const std::string unsat = write_temp("unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  CHECK(run_tool("sample --samples 1 --seed 1 " + unsat).exit_code == 3);
  // Counting an unsat formula is a result, not an error.
  CHECK(run_tool("count --seed 1 " + unsat).exit_code == 0);

  const std::string big = write_temp("big.cnf", "p cnf 30 1\n1 2 3 0\n");
  CHECK(run_tool("exact --seed 1 " + big).exit_code == 3);

  CHECK(run_tool("count").exit_code == 1);            // missing input
  CHECK(run_tool("no-such-command x").exit_code == 1);
}

TEST_CASE("seed is echoed when randomized") {
  const std::string eq = write_temp("seedless.cnf", "p cnf 1 1\n1 0\n");
  const RunResult res = run_tool("count " + eq);
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("seed: ") != std::string::npos);
}
