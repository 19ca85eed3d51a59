// Copyright 2026 The concomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// End-to-end checks of the concomp binary. The binary path arrives as
// argv[1] from ctest.
#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "concomp/interactive.hpp"
#include "doctest.h"

namespace {

std::string g_cli;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args, std::string* out = nullptr,
        const std::string& env = "") {
  std::string cmd = env + " " + g_cli + " " + args +
                    " >/tmp/cli_stdout.txt 2>/tmp/cli_stderr.txt";
  int rc = std::system(cmd.c_str());
  if (out) *out = slurp("/tmp/cli_stdout.txt");
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("passing campaign exits 0") {
  CHECK(run("verify coupling --trials 5 --seed 3") == 0);
  CHECK(run("verify blackwell --trials 5 --seed 3") == 0);
}

TEST_CASE("property violation exits 1") {
  // an impossible tolerance turns ordinary rounding into violations
  CHECK(run("verify chain-rule --trials 20 --seed 7 --tol 1e-300") == 1);
}

TEST_CASE("usage and input errors exit 2") {
  CHECK(run("verify no-such-campaign") == 2);
  CHECK(run("tradeoff") == 2);
  CHECK(run("reduce --mech /no/such/file.json") == 2);
  CHECK(run("frobnicate") == 2);
}

TEST_CASE("help exits 0") {
  CHECK(run("--help") == 0);
}

TEST_CASE("tradeoff CSV has the randomized-response kink") {
  std::string csv;
  CHECK(run("tradeoff --eps 0.6931471805599453", &csv) == 0);
  CHECK(csv.find("alpha,beta\n") == 0);
  CHECK(csv.find("\n0.333333333333,0.333333333333\n") != std::string::npos);
}

TEST_CASE("reduce and rdp subcommands on randomized response") {
  auto m = concomp::randomized_response(std::log(2.0));
  std::ofstream("/tmp/cli_rr.json") << m.to_json().dump();
  // a two-query variant so the adversary has more than one strategy
  using concomp::FiniteDistribution;
  using concomp::Label;
  auto bern = [](double p1) {
    return FiniteDistribution({Label::atom("a"), Label::atom("b")},
                              {1.0 - p1, p1});
  };
  auto m2 = concomp::Mechanism::from_rounds(
      {"0", "1"}, {{{"q", "r"}, {"a", "b"}}},
      {{"0|q", bern(1.0 / 3.0)},
       {"1|q", bern(2.0 / 3.0)},
       {"0|r", bern(0.25)},
       {"1|r", bern(0.5)}},
      false);
  std::ofstream("/tmp/cli_rr2.json") << m2.to_json().dump();
  CHECK(run("reduce --mech /tmp/cli_rr.json --x 0 --x-prime 1") == 0);
  CHECK(run("rdp --mech /tmp/cli_rr.json --mech /tmp/cli_rr.json "
            "--x 0 --x-prime 1 --alpha 2") == 0);
}

TEST_CASE("CONCOMP_GUARD override") {
  CHECK(run("verify reduction --trials 5 --seed 7", nullptr,
            "CONCOMP_GUARD=2") == 2);
  CHECK(run("verify coupling --trials 5 --seed 7", nullptr,
            "CONCOMP_GUARD=abc") == 2);
  CHECK(run("reduce --mech /tmp/cli_rr2.json --x 0 --x-prime 1", nullptr,
            "CONCOMP_GUARD=1") == 2);
}

TEST_CASE("reports are byte-identical across reruns and thread counts") {
  std::string base;
  CHECK(run("verify measures --trials 30 --seed 11", &base) == 0);
  for (const char* extra :
       {"", " --threads 2", " --threads 3", " --threads 8"}) {
    std::string again;
    CHECK(run(std::string("verify measures --trials 30 --seed 11") + extra,
              &again) == 0);
    CHECK(again == base);
  }
  std::string rdp_base, rdp_again;
  CHECK(run("verify rdp --trials 10 --seed 5", &rdp_base) == 0);
  CHECK(run("verify rdp --trials 10 --seed 5 --threads 4", &rdp_again) == 0);
  CHECK(rdp_base == rdp_again);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-concomp-binary>\n");
    return 1;
  }
  g_cli = argv[1];
  doctest::Context ctx;
  ctx.applyCommandLine(1, argv);
  return ctx.run();
}
