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

// Does a concrete joint distribution satisfy a QPN? It must obey the DAG's
// local Markov conditions and every signed edge's influence constraint.

#ifndef QPN_SEMANTICS_HPP
#define QPN_SEMANTICS_HPP

#include <string>
#include <vector>

#include "qpn/dependence.hpp"
#include "qpn/distribution.hpp"
#include "qpn/graph.hpp"

namespace qpn {

/// Tolerance for conditional-independence deviations.
inline constexpr double kEpsCi = 1e-7;

struct MarkovCheck {
  std::string variable;
  std::vector<std::string> parents;
  std::vector<std::string> nondescendants;  // excluding parents
  double max_deviation = 0.0;
  bool ok = true;
};

struct EdgeCheck {
  SignedEdge edge;
  std::vector<std::string> context;  // parents(to) \ {from}
  InfluenceVerdict verdict;
  bool ok = true;
};

struct SatisfactionReport {
  std::vector<MarkovCheck> markov_checks;  // one per variable, declaration order
  std::vector<EdgeCheck> edge_checks;      // one per edge, declaration order
  std::vector<MarkovCheck> markov_violations;
  std::vector<EdgeCheck> edge_violations;
  bool satisfied = true;
};

/// max over cells of |p(a, b | z) - p(a | z) p(b | z)|, skipping z with
/// p(z) <= kEpsProb. Sets must be disjoint; a and b non-empty.
double ci_deviation(const JointTable& table, const std::vector<std::string>& a,
                    const std::vector<std::string>& b,
                    const std::vector<std::string>& z);

/// Local Markov property: every variable independent of its non-descendants
/// given its parents. Returns one entry per variable; throws ShapeMismatch
/// when the table and the DAG disagree on variables or supports.
std::vector<MarkovCheck> markov_checks(const JointTable& table, const SignedDag& dag);
std::vector<MarkovCheck> markov_check(const JointTable& table, const SignedDag& dag);

/// True iff the verdict is compatible with the edge sign. A Zero verdict is
/// compatible with + and -, and ? accepts anything.
bool edge_sign_admits(Sign sign, Verdict verdict);

SatisfactionReport satisfies_qpn(const JointTable& table, const Qpn& qpn);

}  // namespace qpn

#endif  // QPN_SEMANTICS_HPP
