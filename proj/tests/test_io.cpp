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


#include <string>

#include "doctest.h"
#include "qpn/error.hpp"
#include "qpn/io.hpp"
#include "support.hpp"

using namespace qpn;

namespace {

std::string message_of(auto&& fn, ErrorKind expected) {
  try {
    fn();
  } catch (const Error& e) {
    CHECK(e.kind() == expected);
    return e.what();
  }
  FAIL("no error raised");
  return {};
}

}  // namespace

TEST_CASE("shipped files load and match the built-in fixtures") {
  CHECK(load_network(test::data_path("shuttle.json")) == shuttle_qpn());
  CHECK(load_network(test::data_path("figure1.json")) == figure1_qpn());
  CHECK(load_network(test::data_path("two_node.json")) == two_node_qpn());
  CHECK(load_network(test::data_path("two_node_binary.json")) == two_node_qpn(true));
  CHECK(load_distribution(test::data_path("table1.json")) == table1_fixture());
}

TEST_CASE("round trip through json") {
  const auto dag = shuttle_qpn();
  CHECK(parse_network(to_json(dag).dump()) == dag);
  const auto t = table1_fixture();
  CHECK(parse_distribution(to_json(t).dump()) == t);
}

TEST_CASE("diagnostics name file, line and invariant") {
  const auto m1 = message_of([] { load_distribution(test::data_path("bad_mass.json")); },
                             ErrorKind::MassNotOne);
  CHECK(m1.find("bad_mass.json:6: MassNotOne") != std::string::npos);

  const auto m2 = message_of([] { load_network(test::data_path("cyclic.json")); },
                             ErrorKind::CycleDetected);
  CHECK(m2.find("cyclic.json:") != std::string::npos);

  const std::string unknown_key = R"({
  "variables": [
    {"name": "A", "support": [0, 1]},
    {"name": "B", "support": [0, 1], "color": "red"}
  ],
  "edges": []
})";
  const auto m3 = message_of([&] { parse_network(unknown_key, "net.json"); }, ErrorKind::ParseError);
  CHECK(m3.rfind("net.json:4:", 0) == 0);
  CHECK(m3.find("color") != std::string::npos);

  const std::string bad_sign = R"({
  "variables": [{"name": "A", "support": [0, 1]}, {"name": "B", "support": [0, 1]}],
  "edges": [
    {"from": "A", "to": "B", "sign": "+"},
    {"from": "B", "to": "A", "sign": "0"}
  ]
})";
  const auto m4 = message_of([&] { parse_network(bad_sign, "s.json"); }, ErrorKind::InvalidEdge);
  CHECK(m4.rfind("s.json:5:", 0) == 0);

  const std::string malformed = "{\n  \"variables\": [\n  ,\n]}";
  const auto m5 = message_of([&] { parse_network(malformed, "m.json"); }, ErrorKind::ParseError);
  CHECK(m5.rfind("m.json:3:", 0) == 0);

  const std::string missing = R"({"variables": [{"name": "A", "support": [0, 1]}]})";
  message_of([&] { parse_network(missing, "x.json"); }, ErrorKind::ParseError);

  const std::string wrong_count = R"({
  "variables": [{"name": "A", "support": [0, 1]}],
  "probabilities": [0.2, 0.3, 0.5]
})";
  const auto m6 = message_of([&] { parse_distribution(wrong_count, "d.json"); },
                             ErrorKind::ShapeMismatch);
  CHECK(m6.rfind("d.json:3:", 0) == 0);

  const std::string negative = R"({
  "variables": [{"name": "A", "support": [0, 1]}],
  "probabilities": [1.5, -0.5]
})";
  message_of([&] { parse_distribution(negative, "n.json"); }, ErrorKind::NegativeMass);

  const std::string bad_support = R"({
  "variables": [{"name": "A", "support": [1, 0]}],
  "probabilities": [0.5, 0.5]
})";
  message_of([&] { parse_distribution(bad_support, "b.json"); }, ErrorKind::ShapeMismatch);

  message_of([] { load_network("/nonexistent/file.json"); }, ErrorKind::ParseError);
}

TEST_CASE("json renderings use sorted keys and stable values") {
  const auto v = to_json(influence_sign(table1_fixture(), "Y", "X"));
  CHECK(v["verdict"] == "ambiguous");
  CHECK(v["witness"]["high_level"] == 3.0);
  const auto p = to_json(propagate(shuttle_qpn(), "HeOxTempProbe", Sign::Plus, Mode::Classical), true);
  CHECK(p["signs"]["OxPressureProbe"] == "-");
  CHECK(p["mode"] == "classical");
  CHECK(p.contains("trails"));
  const auto q = to_json(query(figure1_qpn(), "X1", "X3", Mode::Sound));
  CHECK(q["sign"] == "-");
  CHECK(q["transcript"][0]["op"] == "reduce");
  const std::string dumped = p.dump();
  CHECK(dumped.find("\"evidence\"") < dumped.find("\"mode\""));
}
