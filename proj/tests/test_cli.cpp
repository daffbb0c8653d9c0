#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "dominet/netcore.hpp"

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

std::string binary() {
  const char* bin = std::getenv("DOMINET_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "DOMINET_BIN must point at the CLI binary");
  return bin;
}

std::string fixture_dir() {
  const char* dir = std::getenv("DOMINET_FIXTURES");
  REQUIRE_MESSAGE(dir != nullptr, "DOMINET_FIXTURES must point at tests/data");
  return dir;
}

CommandResult run(const std::string& args, bool merge_stderr = true) {
  CommandResult result;
  const std::string command = binary() + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t got;
  while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help text is golden and lists every flag") {
  std::string all_help = run("--help").output;
  for (const char* sub : {"dominant", "induce", "landscape", "verify", "clover-gen", "ensemble",
                          "extremal", "analytic"})
    all_help += run(std::string(sub) + " --help").output;
  all_help += run("extremal cycle --help").output;
  all_help += run("extremal debruijn --help").output;
  all_help += run("extremal chain --help").output;
  all_help += run("analytic eta --help").output;

  for (const char* flag : {"--net", "--set", "--minimal", "--out", "--n", "--p", "--q", "--runs",
                           "--seed", "--workers", "--format", "--ell", "--period", "--verbose"})
    CHECK_MESSAGE(all_help.find(flag) != std::string::npos, flag);

  CHECK(all_help == read_file(fixture_dir() + "/help_golden.txt"));
}

TEST_CASE("dominant --minimal on the fig1 fixture") {
  const CommandResult r = run("dominant --net " + fixture_dir() + "/fig1.bn --minimal");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "minimum dominant sets: 4 (size 2)\n1 2\n1 4\n2 3\n3 4\n");
}

TEST_CASE("dominant --set report") {
  const CommandResult r =
      run("dominant --net " + fixture_dir() + "/fig1.bn --set 1,2 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "chain,0,1 2\nchain,1,1 2 3 4\nchain,2,1 2 3 4 5\narc,1,1,2\narc,1,2,2\narc,2,2,2\n");
}

TEST_CASE("verify prints semiconjugacy OK and bounds, exits 0") {
  const CommandResult r = run("verify --net " + fixture_dir() + "/fig1.bn --set 1,2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("semiconjugacy: OK") != std::string::npos);
  CHECK(r.output.find("clause,observed,bound,satisfied") != std::string::npos);
  CHECK(r.output.find("components,2,2,yes") != std::string::npos);
}

TEST_CASE("landscape csv") {
  const CommandResult r =
      run("landscape --net " + fixture_dir() + "/fig1.bn --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("component,period,basin_size,mean_transient,max_transient\n", 0) == 0);
  CHECK(r.output.find("0,8,16,") != std::string::npos);

  const CommandResult induced =
      run("landscape --net " + fixture_dir() + "/fig3.bn --set 1 --format csv");
  CHECK(induced.exit_code == 0);
  CHECK(induced.output.find("0,1,4,") != std::string::npos);
}

TEST_CASE("induce emits the induced network format") {
  const CommandResult r = run("induce --net " + fixture_dir() + "/fig1.bn --set 1,2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("inducednet 1\nell 2\nnodes 2\n", 0) == 0);
  CHECK(r.output.find("node 1 in 1 table 1010\n") != std::string::npos);
}

TEST_CASE("ensemble writes one data row per cell") {
  const std::string out = std::string(std::getenv("DOMINET_TMP") ? std::getenv("DOMINET_TMP")
                                                                 : "/tmp") +
                          "/dominet_cli_stats.csv";
  const CommandResult r = run(
      "ensemble --n 10 --p 0.3 --q 0.3 --runs 20 --seed 7 --out " + out);
  CHECK(r.exit_code == 0);
  const std::string csv = read_file(out);
  int rows = -1;  // discount header
  for (char c : csv) rows += c == '\n';
  CHECK(rows == 1);
  std::remove(out.c_str());
}

TEST_CASE("same argv gives byte-identical output") {
  const std::string args = "ensemble --n 8 --p 0.4 --q 0.5 --runs 30 --seed 3 --verbose";
  CHECK(run(args).output == run(args).output);
}

TEST_CASE("clover-gen emits a parseable signed network") {
  const CommandResult r = run("clover-gen --n 9 --p 0.4 --q 0.5 --seed 12");
  CHECK(r.exit_code == 0);
  const dominet::NetworkDocument doc = dominet::parse_document(r.output);
  CHECK(doc.net.vertex_count() == 9);
  CHECK(!doc.signs.empty());
}

TEST_CASE("extremal and analytic subcommands") {
  const CommandResult debruijn = run("extremal debruijn --ell 2");
  CHECK(debruijn.exit_code == 0);
  CHECK(dominet::parse_network(debruijn.output).vertex_count() == 2);

  const CommandResult cycle = run("extremal cycle --period 3");
  CHECK(cycle.exit_code == 0);
  CHECK(dominet::parse_network(cycle.output).vertex_count() == 3);

  const CommandResult chain = run("extremal chain --n 5");
  CHECK(chain.exit_code == 0);
  CHECK(dominet::parse_network(chain.output).graph().has_arc(1, 1));

  const CommandResult eta = run("analytic eta --ell 2 --q 0.3");
  CHECK(eta.exit_code == 0);
  CHECK(eta.output.find("0.58") != std::string::npos);

  const CommandResult ell1 = run("analytic ell1 --n 10 --p 0.3");
  CHECK(ell1.exit_code == 0);
  CHECK(ell1.output.rfind("length,probability\n", 0) == 0);
  CHECK(ell1.output.find("expectation,") != std::string::npos);

  const CommandResult maxell = run("analytic maxell --n 10 --p 0.3");
  CHECK(maxell.exit_code == 0);
  CHECK(maxell.output.find("finite_sum,5.14") != std::string::npos);
}

TEST_CASE("failed landscape bounds use exit code 2 and the bound-violation prefix") {
  // For {1,2} on a 3-cycle the induced history space outgrows the
  // configuration space, so some induced basin must outgrow its partner
  // and the basin-size lower bound fails.
  const CommandResult r = run("verify --net " + fixture_dir() + "/cyc3.bn --set 1,2");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("bound-violation:") != std::string::npos);
  CHECK(r.output.find("e.lower,0.5,1,no") != std::string::npos);
  CHECK(r.output.find("e.image,0,0,yes") != std::string::npos);
}

TEST_CASE("failures use exit code 1 and an error prefix") {
  const CommandResult unknown = run("dominant --net nope.bn --bogus-flag");
  CHECK(unknown.exit_code == 1);
  CHECK(unknown.output.find("error:") != std::string::npos);

  const CommandResult missing = run("dominant --net /does/not/exist.bn --minimal");
  CHECK(missing.exit_code == 1);
  CHECK(missing.output.find("error:") != std::string::npos);

  const CommandResult badset = run("dominant --net " + fixture_dir() + "/fig1.bn");
  CHECK(badset.exit_code == 1);
}

}  // TEST_SUITE
