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

// Built-in networks and distributions, random table generators and the
// randomized counterexample search.

#ifndef QPN_SCENARIOS_HPP
#define QPN_SCENARIOS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpn/dependence.hpp"
#include "qpn/distribution.hpp"
#include "qpn/graph.hpp"
#include "qpn/parallel.hpp"
#include "qpn/random.hpp"
#include "qpn/semantics.hpp"

namespace qpn {

/// The 3x3 joint of (X, Y) on {1,2,3}^2 in which X positively influences Y
/// but Y does not positively influence X.
JointTable table1_fixture();

/// X1 -> X2 (+), X2 -> X3 (-), ternary supports.
Qpn figure1_qpn();

/// X -> Y (+) on {1,2,3} each, or on {0,1} each when `binary`.
Qpn two_node_qpn(bool binary = false);

/// Space-shuttle propulsion network: HeOxTemp, HeOxTempProbe (both on
/// 0..9), HighOxTemp, OxTankLeak, OxPressureProbe (0..2) and
/// HeOxValveProblem.
Qpn shuttle_qpn();

/// Discretized shuttle distribution. HeOxTemp is uniform on 0..9 and the
/// probe reads it exactly unless it is faulty (probability fault_prob), in
/// which case it reads uniformly on 5..9. The remaining conditionals:
///   P(HighOxTemp = 1 | t)        = 0.05 + 0.09 t
///   P(OxTankLeak = 1 | t, h)     = 0.01 + 0.02 t + 0.2 h
///   P(OxPressureProbe | leak, valve) over (low, normal, high):
///     no leak, valve ok:  (0.1, 0.3, 0.6)     leak, valve ok:  (0.5, 0.3, 0.2)
///     no leak, valve bad: (0.4, 0.4, 0.2)     leak, valve bad: (0.7, 0.2, 0.1)
///   P(HeOxValveProblem = 1)      = 0.02
/// Throws BadProbability unless 0 < fault_prob < 1.
JointTable shuttle_distribution(double fault_prob = 0.05);

/// Conditional tables for a DAG-factorized joint: cpts[v] (declaration
/// index) is row-major over (parents of v in declaration order, v).
using ConditionalTables = std::vector<std::vector<double>>;

/// Product of the conditionals, laid out in the DAG's declaration order.
JointTable factorized_table(const SignedDag& dag, const ConditionalTables& cpts);

/// Every conditional slice drawn uniformly from the simplex.
JointTable random_factorized_table(const SignedDag& dag, Rng& rng);

/// A random DAG-factorized table satisfying every edge sign by construction.
/// Each node's parent configurations are ranked by a random positive
/// combination of signed parent levels (? edges get a random orientation),
/// and pointwise-sorted random cdfs are assigned along that ranking.
JointTable random_monotone_table(const Qpn& qpn, Rng& rng);

/// The assertion "influence_sign(source -> target, no context) = claimed".
struct Claim {
  std::string source;
  std::string target;
  Sign claimed = Sign::Plus;
};

/// Parses "<source>-><target>:<sign>". Throws InvalidArgument.
Claim parse_claim(std::string_view text);
std::string to_string(const Claim& claim);

/// Whether a verdict refutes a claimed sign. A Zero verdict is consistent
/// with + and -.
bool contradicts(Sign claimed, Verdict verdict);

struct CounterexampleReport {
  bool found = false;
  std::optional<JointTable> table;
  std::optional<SatisfactionReport> qpn_report;
  std::optional<InfluenceVerdict> claim_verdict;
  std::size_t trials_used = 0;
  std::uint64_t seed = 0;
};

/// Rejection search: trial t draws random_factorized_table from
/// stream_rng(seed, t), keeps it if it satisfies the QPN, and stops at the
/// first kept table whose verdict contradicts the claim. Throws
/// UnknownVariable or InvalidArgument.
CounterexampleReport find_counterexample(const Qpn& qpn, const Claim& claim,
                                         std::uint64_t seed, std::size_t trials,
                                         Execution exec = Execution::Parallel);

}  // namespace qpn

#endif  // QPN_SCENARIOS_HPP
