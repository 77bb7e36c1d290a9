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


#include "doctest.h"
#include "qpn/error.hpp"
#include "qpn/semantics.hpp"
#include "support.hpp"

using namespace qpn;
using test::levels;

TEST_CASE("two-node qpn against table 1") {
  const auto t = table1_fixture();
  const auto ok = satisfies_qpn(t, two_node_qpn());
  CHECK(ok.satisfied);
  CHECK(ok.edge_checks.size() == 1);
  CHECK(ok.markov_checks.size() == 2);

  const Qpn reversed({VariableSpec{"X", {1, 2, 3}}, VariableSpec{"Y", {1, 2, 3}}},
                     {{"Y", "X", Sign::Plus}});
  const auto bad = satisfies_qpn(t, reversed);
  CHECK_FALSE(bad.satisfied);
  REQUIRE(bad.edge_violations.size() == 1);
  CHECK(bad.edge_violations[0].verdict.verdict == Verdict::Ambiguous);
  CHECK(bad.markov_violations.empty());

  const Qpn question({VariableSpec{"X", {1, 2, 3}}, VariableSpec{"Y", {1, 2, 3}}},
                     {{"Y", "X", Sign::Question}});
  CHECK(satisfies_qpn(t, question).satisfied);

  const Qpn negative({VariableSpec{"X", {1, 2, 3}}, VariableSpec{"Y", {1, 2, 3}}},
                     {{"X", "Y", Sign::Minus}});
  CHECK_FALSE(satisfies_qpn(t, negative).satisfied);
}

TEST_CASE("empty edge set needs independence") {
  const Qpn none({VariableSpec{"X", {1, 2, 3}}, VariableSpec{"Y", {1, 2, 3}}}, {});
  const auto r = satisfies_qpn(table1_fixture(), none);
  CHECK_FALSE(r.satisfied);
  CHECK_FALSE(r.markov_violations.empty());
  std::vector<double> p;
  for (double a : {0.2, 0.8})
    for (double b : {0.5, 0.3, 0.2}) p.push_back(a * b);
  const Qpn none2({levels("A", 2), levels("B", 3)}, {});
  CHECK(satisfies_qpn(JointTable({levels("A", 2), levels("B", 3)}, p), none2).satisfied);
}

TEST_CASE("markov violation on a chain") {
  // X3 depends on X1 even given X2.
  ConditionalTables cpts(3);
  cpts[0] = {0.3, 0.3, 0.4};
  cpts[1] = {0.6, 0.3, 0.1, 0.3, 0.4, 0.3, 0.1, 0.3, 0.6};
  const Qpn full({VariableSpec{"X1", {1, 2, 3}}, VariableSpec{"X2", {1, 2, 3}},
                  VariableSpec{"X3", {1, 2, 3}}},
                 {{"X1", "X2", Sign::Plus}, {"X2", "X3", Sign::Plus}, {"X1", "X3", Sign::Plus}});
  for (int x1 = 0; x1 < 3; ++x1)
    for (int x2 = 0; x2 < 3; ++x2) {
      const double up = 0.1 + 0.1 * x1 + 0.1 * x2;
      cpts[2].insert(cpts[2].end(), {0.5 - up / 2, 0.5 - up / 2, up});
    }
  const auto t = factorized_table(full, cpts);
  const auto chain = figure1_qpn();
  const auto violations = markov_check(t, chain);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].variable == "X3");
  CHECK(violations[0].max_deviation > kEpsCi);
  CHECK(markov_checks(t, chain).size() == 3);
  CHECK(satisfies_qpn(t, full).satisfied);
}

TEST_CASE("shape mismatch between table and network") {
  const auto t = table1_fixture();
  CHECK_THROWS_AS(satisfies_qpn(t, two_node_qpn(true)), Error);
  CHECK_THROWS_AS(satisfies_qpn(t, figure1_qpn()), Error);
}

TEST_CASE("edge sign admission") {
  CHECK(edge_sign_admits(Sign::Plus, Verdict::Zero));
  CHECK(edge_sign_admits(Sign::Plus, Verdict::Positive));
  CHECK_FALSE(edge_sign_admits(Sign::Plus, Verdict::Negative));
  CHECK_FALSE(edge_sign_admits(Sign::Minus, Verdict::Ambiguous));
  for (auto v : {Verdict::Positive, Verdict::Negative, Verdict::Zero, Verdict::Ambiguous})
    CHECK(edge_sign_admits(Sign::Question, v));
}

TEST_CASE("ci deviation") {
  CHECK(ci_deviation(table1_fixture(), {"X"}, {"Y"}, {}) > 0.01);
  const auto sh = shuttle_distribution();
  CHECK(ci_deviation(sh, {"HeOxTempProbe"}, {"OxTankLeak"}, {"HeOxTemp"}) < kEpsCi);
  CHECK(ci_deviation(sh, {"HeOxTempProbe"}, {"OxTankLeak"}, {}) > kEpsCi);
}

TEST_CASE("property: product distributions satisfy every dag's markov conditions") {
  Rng rng = stream_rng(41, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto dag = test::random_dag(rng, 5);
    ConditionalTables cpts(dag.size());
    for (std::size_t v = 0; v < dag.size(); ++v) {
      const auto& var = dag.variables()[v];
      std::size_t rows = 1;
      for (const auto& p : dag.parents(var.name)) rows *= dag.variable(p).size();
      const auto slice = sample_simplex(rng, var.size());
      for (std::size_t r = 0; r < rows; ++r) cpts[v].insert(cpts[v].end(), slice.begin(), slice.end());
    }
    const auto t = factorized_table(dag, cpts);
    CHECK(markov_check(t, dag).empty());
    CHECK(satisfies_qpn(t, dag).satisfied);
  }
}

TEST_CASE("property: random monotone constructions satisfy their qpn") {
  Rng rng = stream_rng(43, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const auto dag = test::random_dag(rng, 5);
    const auto t = random_monotone_table(dag, rng);
    const auto report = satisfies_qpn(t, dag);
    CHECK(report.satisfied);
  }
}
