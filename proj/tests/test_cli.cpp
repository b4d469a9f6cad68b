#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  json out;
};

RunResult run(const std::string& args, bool parse = true) {
  std::string out_path = "cli_out.json";
  std::string cmd = std::string(CM_CLI_PATH) + " " + args + " > " + out_path + " 2> cli_err.txt";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(rc);
  if (parse && r.exit_code == 0) {
    std::ifstream f(out_path);
    f >> r.out;
  }
  return r;
}

}  // namespace

TEST_CASE("eval j at i recognizes 1728") {
  auto r = run("eval j --tau 0,1");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.at("recognized") == "1728");
  CHECK(r.out.at("bits").get<long>() == 128);
  CHECK(std::stod(r.out.at("value_re").get<std::string>()) == doctest::Approx(1728.0));
}

TEST_CASE("eval j by discriminant") {
  auto r = run("eval j --disc -163");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.at("recognized") == "-262537412640768000");
}

TEST_CASE("eval fricke recognizes 1/4") {
  auto r = run("eval fricke --disc -4 --index 0,1/2 --k 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.at("recognized") == "1/4");
}

TEST_CASE("eval hauptmodul values") {
  auto t = run("eval t --level 2 --tau 0,1");
  REQUIRE(t.exit_code == 0);
  CHECK(t.out.at("recognized") == "512");
  auto s = run("eval s --level 2 --tau 0,1");
  REQUIRE(s.exit_code == 0);
  CHECK(s.out.at("recognized") == "520");
}

TEST_CASE("hilbert polynomial JSON schema") {
  auto r = run("hilbert --disc -15");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.at("disc").get<long>() == -15);
  CHECK(r.out.at("level").is_null());
  CHECK(r.out.at("monic").get<bool>());
  auto coeffs = r.out.at("coeffs");
  REQUIRE(coeffs.size() == 3);
  CHECK(coeffs[0] == "-121287375");
  CHECK(coeffs[1] == "191025");
  CHECK(coeffs[2] == "1");
}

TEST_CASE("ringpoly") {
  auto r = run("ringpoly --disc -4 --level 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.at("level").get<long>() == 2);
  auto coeffs = r.out.at("coeffs");
  REQUIRE(coeffs.size() == 2);
  CHECK(coeffs[0] == "-287496");
}

TEST_CASE("raygen 1733") {
  auto r = run("raygen --disc -4 --modulus 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.at("recognized") == "1733");
  CHECK(r.out.at("p").get<long>() == 5);
  CHECK(r.out.at("k").get<long>() == 2);
  auto poly = r.out.at("minpoly");
  CHECK(poly.at("coeffs")[0] == "-1733");
  CHECK(poly.at("coeffs")[1] == "1");
}

TEST_CASE("orbit command") {
  auto r = run("orbit --disc -4 --index 0,1/5 --k 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.at("cosets").get<long>() == 4);
  CHECK(r.out.at("conjugates").size() >= 1);
  CHECK(r.out.at("conjugates").size() <= 4);
}

TEST_CASE("list-hauptmoduln") {
  auto r = run("list-hauptmoduln");
  REQUIRE(r.exit_code == 0);
  bool found = false;
  for (const auto& e : r.out.at("hauptmoduln"))
    if (e.at("group") == "Gamma0" && e.at("level").get<long>() == 2 &&
        e.at("eta_exponent").get<long>() == 24)
      found = true;
  CHECK(found);
}

TEST_CASE("verify suites pass") {
  auto t = run("verify transform --samples 3");
  CHECK(t.exit_code == 0);
  CHECK(t.out.at("passed").get<bool>());
  auto k = run("verify kernel --disc -4 --level 5");
  CHECK(k.exit_code == 0);
  auto m = run("verify main2 --disc -4 --level 2");
  CHECK(m.exit_code == 0);
}

TEST_CASE("exit codes") {
  CHECK(run("eval j", false).exit_code == 2);          // missing --tau/--disc
  CHECK(run("nonsense", false).exit_code != 0);        // unknown subcommand
  CHECK(run("hilbert --disc -5", false).exit_code == 2);
  CHECK(run("raygen --disc -15 --modulus 3", false).exit_code == 4);
}

TEST_CASE("env cap forces precision exhaustion") {
  // pi is not recognizable; a tiny cap makes escalating evaluation give up
  std::string cmd = std::string("CM_MODULI_MAX_BITS=256 ") + CM_CLI_PATH +
                    " raygen --disc -7 --modulus 7 > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  // either succeeds fast or reports precision exhaustion; must not crash
  int code = WEXITSTATUS(rc);
  CHECK((code == 0 || code == 3));
}

TEST_CASE("output file option") {
  std::remove("cli_file.json");
  auto r = run("-o cli_file.json eval j --tau 0,1", false);
  REQUIRE(r.exit_code == 0);
  std::ifstream f("cli_file.json");
  REQUIRE(f.good());
  json j;
  f >> j;
  CHECK(j.at("recognized") == "1728");
}
