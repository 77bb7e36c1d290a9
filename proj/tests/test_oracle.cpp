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


// d-separation claims checked against the numbers of random factorized
// distributions.

#include "doctest.h"
#include "qpn/semantics.hpp"
#include "support.hpp"

using namespace qpn;

namespace {

std::vector<std::vector<std::string>> subsets(const std::vector<std::string>& pool) {
  std::vector<std::vector<std::string>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << pool.size()); ++mask) {
    std::vector<std::string> s;
    for (std::size_t k = 0; k < pool.size(); ++k)
      if (mask >> k & 1) s.push_back(pool[k]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

TEST_CASE("every d-separated triple is numerically independent") {
  Rng rng = stream_rng(101, 0);
  std::size_t separated = 0, connected_dependent = 0, connected = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto dag = test::random_dag(rng, test::uniform_index(rng, 3, 5), 3, 0.5);
    const auto t = random_factorized_table(dag, rng);
    CHECK(markov_check(t, dag).empty());
    const auto& vars = dag.variables();
    for (std::size_t a = 0; a < vars.size(); ++a) {
      for (std::size_t b = a + 1; b < vars.size(); ++b) {
        std::vector<std::string> rest;
        for (std::size_t z = 0; z < vars.size(); ++z)
          if (z != a && z != b) rest.push_back(vars[z].name);
        for (const auto& given : subsets(rest)) {
          const double dev = ci_deviation(t, {vars[a].name}, {vars[b].name}, given);
          if (d_separated(dag, vars[a].name, vars[b].name, NameSet(given.begin(), given.end()))) {
            ++separated;
            CHECK(dev <= kEpsCi);
          } else {
            ++connected;
            if (dev > kEpsCi) ++connected_dependent;
          }
        }
      }
    }
  }
  CHECK(separated > 50);
  // Generic parameters make every d-connected pair dependent.
  CHECK(connected_dependent == connected);
}
