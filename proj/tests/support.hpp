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


// Hand-rolled generators shared by the unit, property and acceptance tests.

#ifndef QPN_TESTS_SUPPORT_HPP
#define QPN_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qpn/dependence.hpp"
#include "qpn/distribution.hpp"
#include "qpn/graph.hpp"
#include "qpn/random.hpp"
#include "qpn/scenarios.hpp"

namespace qpn::test {

inline std::string data_path(const std::string& name) {
  return std::string(QPN_TEST_DATA) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

inline VariableSpec levels(std::string name, std::size_t k) {
  VariableSpec v{std::move(name), {}};
  for (std::size_t i = 0; i < k; ++i) v.support.push_back(static_cast<double>(i));
  return v;
}

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Sign random_edge_sign(Rng& rng) {
  static constexpr Sign kEdgeSigns[] = {Sign::Plus, Sign::Minus, Sign::Question};
  return kEdgeSigns[uniform_index(rng, 0, 2)];
}

// Nodes V0..V{n-1}; edges only go from lower to higher index, so the
// declaration order is a topological order.
inline SignedDag random_dag(Rng& rng, std::size_t n, std::size_t max_levels = 3,
                            double edge_prob = 0.4, std::size_t max_parents = 3) {
  std::vector<VariableSpec> vars;
  for (std::size_t i = 0; i < n; ++i)
    vars.push_back(levels("V" + std::to_string(i), uniform_index(rng, 2, max_levels)));
  std::bernoulli_distribution coin(edge_prob);
  std::vector<SignedEdge> edges;
  for (std::size_t j = 1; j < n; ++j) {
    std::size_t parents = 0;
    for (std::size_t i = 0; i < j; ++i) {
      if (parents < max_parents && coin(rng)) {
        edges.push_back({vars[i].name, vars[j].name, random_edge_sign(rng)});
        ++parents;
      }
    }
  }
  return SignedDag(std::move(vars), std::move(edges));
}

inline JointTable random_table(Rng& rng, std::vector<VariableSpec> vars) {
  std::size_t cells = 1;
  for (const auto& v : vars) cells *= v.size();
  return JointTable(std::move(vars), sample_simplex(rng, cells));
}

inline JointTable random_grid(Rng& rng, std::size_t m, std::size_t n) {
  return random_table(rng, {levels("X", m), levels("Y", n)});
}

// Log-supermodular construction p(x|y) proportional to exp(a_x b_y + c_x)
// with increasing a and b; normalizing each column keeps MLRP.
inline Likelihood random_mlrp_likelihood(Rng& rng, std::size_t m, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0), c(-1.0, 1.0);
  std::vector<double> a(m), b(n), off(m);
  for (auto& v : a) v = u(rng) * 2.0;
  for (auto& v : b) v = u(rng) * 2.0;
  for (auto& v : off) v = c(rng);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  Likelihood lik{levels("X", m), levels("Y", n), std::vector<double>(m * n)};
  for (std::size_t yi = 0; yi < n; ++yi) {
    double total = 0.0;
    for (std::size_t xi = 0; xi < m; ++xi) {
      const double w = std::exp(a[xi] * b[yi] + off[xi]);
      lik.values[xi * n + yi] = w;
      total += w;
    }
    for (std::size_t xi = 0; xi < m; ++xi) lik.values[xi * n + yi] /= total;
  }
  return lik;
}

inline bool positive_like(Verdict v) { return v == Verdict::Positive; }

}  // namespace qpn::test

#endif  // QPN_TESTS_SUPPORT_HPP
