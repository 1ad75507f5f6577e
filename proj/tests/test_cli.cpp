#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <string>

#include "pkfactor/parse.hpp"
#include "pkfactor/ring.hpp"

using namespace pkfactor;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(PKFACTOR_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("factor exit codes distinguish results from errors", "[cli]") {
  SECTION("reducible input exits 0") {
    auto r = run_cli("factor -p 3 -k 2 \"x^2+10*x+21\"");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("x+3") != std::string::npos);
    REQUIRE(r.out.find("x+7") != std::string::npos);
  }
  SECTION("irreducible input exits 2") {
    auto r = run_cli("factor -p 3 -k 2 \"x^2+3\"");
    REQUIRE(r.code == 2);
    REQUIRE(r.out.find("IRREDUCIBLE") != std::string::npos);
  }
  SECTION("parse failure exits 1") {
    REQUIRE(run_cli("factor -p 3 -k 2 \"x^^2\"").code == 1);
  }
  SECTION("composite p exits 1") {
    REQUIRE(run_cli("factor -p 4 -k 2 \"x^2+1\"").code == 1);
  }
  SECTION("k above 4 exits 1") {
    REQUIRE(run_cli("factor -p 3 -k 5 \"x^2+1\"").code == 1);
  }
}

TEST_CASE("factoring the mod-27 example via the CLI", "[cli]") {
  auto r = run_cli("factor -p 3 -k 3 \"x^3+12*x^2+3*x+36\" --format json");
  REQUIRE(r.code == 0);
  auto j = r.out;
  // one of the three monic linear factors must appear
  bool has_linear = j.find("\"x+3\"") != std::string::npos ||
                    j.find("\"x+12\"") != std::string::npos ||
                    j.find("\"x+21\"") != std::string::npos;
  REQUIRE(has_linear);
  // and the reported factors really divide f mod 27
  std::size_t fpos = j.find("\"factors\":[\"");
  REQUIRE(fpos != std::string::npos);
  std::size_t start = fpos + 12;
  std::size_t end = j.find('"', start);
  DensePoly g = parse_poly(j.substr(start, end - start), 27);
  DensePoly f = parse_poly("x^3+12*x^2+3*x+36", 27);
  REQUIRE(divrem(f, g).second.is_zero());
}

TEST_CASE("same seed gives byte-identical JSON", "[cli]") {
  std::string args = "lifts -p 3 -k 4 -g x --expand 10 \"x^2+3*x\" --format json --seed 7";
  auto r1 = run_cli(args);
  auto r2 = run_cli(args);
  REQUIRE(r1.code == 0);
  REQUIRE(r1.out == r2.out);
  REQUIRE(r1.out.find("\"count\":6") != std::string::npos);
  REQUIRE(r1.out.find("\"seed\":7") != std::string::npos);
}

TEST_CASE("lift listing matches the expected sets", "[cli]") {
  auto r = run_cli("lifts -p 3 -k 2 -g x --expand 10 \"x^2+3*x\" --format json");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("\"count\":3") != std::string::npos);
  for (const char* lift : {"\"x\"", "\"x+3\"", "\"x+6\""})
    REQUIRE(r.out.find(lift) != std::string::npos);
  auto r27 = run_cli("lifts -p 3 -k 3 -g x --expand 10 \"x^3+12*x^2+3*x+36\" --format json");
  REQUIRE(r27.code == 0);
  REQUIRE(r27.out.find("\"count\":3") != std::string::npos);
  for (const char* lift : {"\"x+3\"", "\"x+12\"", "\"x+21\""})
    REQUIRE(r27.out.find(lift) != std::string::npos);
}

TEST_CASE("roots subcommand solves over the local ring", "[cli]") {
  auto r = run_cli("roots -p 3 --phi x -l 2 \"y^2\" --format json");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("\"reps\":[{\"v\":\"0\",\"j\":1}]") != std::string::npos);
  REQUIRE(r.out.find("\"count\":3") != std::string::npos);
  // a reducible phi is rejected
  REQUIRE(run_cli("roots -p 3 --phi \"x^2\" -l 2 \"y\"").code == 1);
}

TEST_CASE("count subcommand reports both conventions", "[cli]") {
  auto r = run_cli("count -p 3 -k 3 \"x^2+3*x\" --format json");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("\"count\":8") != std::string::npos);
  REQUIRE(r.out.find("\"nontrivial\":6") != std::string::npos);
  REQUIRE(run_cli("count -p 3 -k 2 \"x^2+3*x\"").code == 1);
}

TEST_CASE("verify sweeps and catches injected faults", "[cli]") {
  auto ok = run_cli("verify --pmax 3 --degmax 3 --kmax 3 --samples 5");
  REQUIRE(ok.code == 0);
  REQUIRE(ok.out.find("verify: OK") != std::string::npos);
  auto bad = run_cli("verify --pmax 3 --degmax 3 --kmax 3 --samples 5 --inject-fault");
  REQUIRE(bad.code == 1);
  REQUIRE(bad.out.find("MISMATCH") != std::string::npos);
  REQUIRE(bad.out.find("reproduce: pkfactor factor") != std::string::npos);
}
