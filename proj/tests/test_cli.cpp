// Copyright 2026 The QPN Engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <sstream>

#include "doctest.h"
#include "qpn/cli.hpp"
#include "qpn/io.hpp"
#include "support.hpp"

using namespace qpn;
using test::data_path;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

TEST_CASE("argument parsing") {
  cli::CliConfig c;
  bool help = false;
  std::ostringstream out, err;
  REQUIRE(cli::parse_args({"--mode", "classical", "query", "--network", "n.json", "--from", "A",
                           "--to", "B"},
                          c, help, out, err) == cli::kOk);
  CHECK(c.subcommand == "query");
  CHECK(c.mode == Mode::Classical);
  CHECK(c.output == cli::OutputFormat::Text);

  cli::CliConfig d;
  REQUIRE(cli::parse_args({"propagate", "--network", "n.json", "--observe", "A=+", "--output",
                           "json", "--trails"},
                          d, help, out, err) == cli::kOk);
  CHECK(d.mode == Mode::Sound);
  CHECK(d.output == cli::OutputFormat::Json);
  CHECK(d.trails);

  cli::CliConfig e;
  CHECK(cli::parse_args({"dsep", "--network", "n", "--a", "A", "--b", "B", "--given", "C,D"}, e,
                        help, out, err) == cli::kOk);
  CHECK(e.given == std::vector<std::string>{"C", "D"});
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"check", "--network", data_path("two_node.json"), "--dist",
                 data_path("table1.json")})
            .code == 0);
  CHECK(run_cli({"find-counterexample", "--network", data_path("two_node_binary.json"),
                 "--claim", "Y->X:+", "--trials", "500"})
            .code == 1);
  const auto bad = run_cli({"check", "--network", data_path("two_node.json"), "--dist",
                            data_path("bad_mass.json")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("bad_mass.json:6: MassNotOne") != std::string::npos);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"nonsense"}).code == 2);
  CHECK(run_cli({"query", "--network", data_path("two_node.json")}).code == 2);
  CHECK(run_cli({"--mode", "fuzzy", "demo", "table1"}).code == 2);
  CHECK(run_cli({"propagate", "--network", data_path("two_node.json"), "--observe", "X=0"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({"demo", "table1"}).code == 0);
  CHECK(run_cli({"demo", "shuttle", "--fault-prob", "0.2"}).code == 0);
  CHECK(run_cli({"demo", "shuttle", "--fault-prob", "1.5"}).code == 2);
}

TEST_CASE("check against a violated network exits 1") {
  const auto r = run_cli({"check", "--network", data_path("two_node_reversed.json"), "--dist",
                          data_path("table1.json")});
  CHECK(r.code == 1);
  CHECK(r.out.find("NOT satisfied") != std::string::npos);
  const auto mismatch = run_cli({"check", "--network", data_path("figure1.json"), "--dist",
                                 data_path("table1.json")});
  CHECK(mismatch.code == 2);
}

TEST_CASE("cli output equals direct library calls") {
  const auto shuttle = data_path("shuttle.json");
  const auto r = run_cli({"--output", "json", "--mode", "classical", "propagate", "--network",
                          shuttle, "--observe", "HeOxTempProbe=+"});
  REQUIRE(r.code == 0);
  CHECK(r.out == pretty(to_json(propagate(shuttle_qpn(), "HeOxTempProbe", Sign::Plus,
                                          Mode::Classical), false)));
  const auto j = Json::parse(r.out);
  CHECK(j["signs"]["HeOxTemp"] == "+");
  CHECK(j["signs"]["HighOxTemp"] == "+");
  CHECK(j["signs"]["OxTankLeak"] == "+");
  CHECK(j["signs"]["OxPressureProbe"] == "-");
  CHECK(j["signs"]["HeOxValveProblem"] == "0");

  const auto check = run_cli({"--output", "json", "check", "--network", data_path("two_node.json"),
                              "--dist", data_path("table1.json")});
  CHECK(check.out == pretty(to_json(satisfies_qpn(table1_fixture(), two_node_qpn()))));

  const auto q = run_cli({"--output", "json", "query", "--network", data_path("figure1.json"),
                          "--from", "X1", "--to", "X3"});
  CHECK(q.out == pretty(to_json(query(figure1_qpn(), "X1", "X3", Mode::Sound))));

  const auto red = run_cli({"--output", "json", "reduce", "--network", data_path("figure1.json"),
                            "--node", "X2"});
  CHECK(red.out == pretty(to_json(reduce_vertex(figure1_qpn(), "X2"))));

  const auto rev = run_cli({"--output", "json", "--mode", "classical", "reverse", "--network",
                            data_path("two_node.json"), "--edge", "X,Y"});
  CHECK(rev.out == pretty(to_json(reverse_edge(two_node_qpn(), "X", "Y", Mode::Classical))));

  const auto fce = run_cli({"--output", "json", "find-counterexample", "--network",
                            data_path("two_node.json"), "--claim", "Y->X:+", "--seed", "42",
                            "--trials", "100000"});
  CHECK(fce.code == 0);
  CHECK(fce.out == pretty(to_json(find_counterexample(two_node_qpn(), parse_claim("Y->X:+"), 42,
                                                      100000))));

  const auto dep = run_cli({"--output", "json", "dependence", "--dist", data_path("table1.json"),
                            "--x", "X", "--y", "Y"});
  const auto dj = Json::parse(dep.out);
  const auto t = table1_fixture();
  CHECK(dj["forward"] == to_json(influence_sign(t, "X", "Y")));
  CHECK(dj["reverse"] == to_json(influence_sign(t, "Y", "X")));
  CHECK(dj["mlrp"] == to_json(mlrp_check(t, "X", "Y")));
  CHECK(dj["tp2"] == to_json(tp2_check(t, "X", "Y")));
  CHECK(dj["association"] == to_json(association_check(t, "X", "Y")));
  CHECK(dj["forward"]["verdict"] == "positive");
  CHECK(dj["reverse"]["verdict"] == "ambiguous");
  CHECK(dj["mlrp"]["holds"] == false);
  CHECK(dj["tp2"]["holds"] == false);
  CHECK(dj["association"]["holds"] == true);

  const auto ds = run_cli({"--output", "json", "dsep", "--network", shuttle, "--a",
                           "HeOxTempProbe", "--b", "HeOxValveProblem"});
  CHECK(Json::parse(ds.out)["d_separated"] == true);
}

TEST_CASE("text output mentions the trails when asked") {
  const auto plain = run_cli({"propagate", "--network", data_path("figure1.json"), "--observe",
                              "X1=+"});
  const auto traced = run_cli({"--trails", "propagate", "--network", data_path("figure1.json"),
                               "--observe", "X1=+"});
  CHECK(plain.out.find("X1 -[+]-> X2") == std::string::npos);
  CHECK(traced.out.find("X1 -[+]-> X2 -[-]-> X3") != std::string::npos);
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::vector<std::string>> commands = {
      {"demo", "table1"},
      {"--output", "json", "demo", "shuttle", "--trails"},
      {"--output", "json", "find-counterexample", "--network", data_path("two_node.json"),
       "--claim", "Y->X:+"},
      {"dependence", "--dist", data_path("table1.json"), "--x", "Y", "--y", "X"},
  };
  for (const auto& args : commands) {
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}
