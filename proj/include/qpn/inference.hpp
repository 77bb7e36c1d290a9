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

// Qualitative inference over a QPN.
//
// Two modes share every algorithm and differ only where an influence is used
// against its edge direction. Classical mode reuses the edge's sign there,
// which assumes influences are symmetric. That holds only when both endpoints
// are binary, so Sound mode uses the sign only in that case and ? otherwise.

#ifndef QPN_INFERENCE_HPP
#define QPN_INFERENCE_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qpn/graph.hpp"
#include "qpn/sign.hpp"

namespace qpn {

enum class Mode { Classical, Sound };

std::string_view to_string(Mode mode);

struct TrailContribution {
  Trail trail;
  Sign sign = Sign::Zero;
};

struct PropagationResult {
  std::map<std::string, Sign> node_signs;  // includes the evidence node
  std::string evidence_node;
  Sign evidence_sign = Sign::Plus;
  Mode mode = Mode::Sound;
  std::map<std::string, std::vector<TrailContribution>> trail_log;
};

/// Sign contributed by one trail step in the given mode.
Sign step_sign(const Qpn& qpn, const TrailStep& step, Mode mode);

/// Propagates a qualitative observation (+ or -) along every active trail
/// from the observed node. A node's sign is the sign_sum over its trails of
/// obs_sign times the product of the step signs; nodes without an active
/// trail get 0. Throws UnknownVariable or BadEvidenceSign.
PropagationResult propagate(const Qpn& qpn, std::string_view observed, Sign obs_sign,
                            Mode mode);

/// Removes a node with at most one parent. The parent is connected to each
/// child with the chained sign (combined with any existing edge), and every
/// pair of unlinked children gets a ? edge in topological order.
/// Throws TooManyParents or UnknownVariable.
Qpn reduce_vertex(const Qpn& qpn, std::string_view v);

/// Deletes a node and its incident edges. Only meaningful for barren
/// (childless) nodes, whose removal is exact marginalization.
Qpn remove_vertex(const Qpn& qpn, std::string_view v);

/// Arc reversal of i -> j. The reversed edge keeps its sign in Classical
/// mode; in Sound mode it keeps it only when i and j are both binary. j
/// inherits i's parents and i inherits j's other parents, each new edge
/// signed ?. Edges from parents shared by i and j become ?, and in Sound
/// mode a non-binary i also loses the signs of its remaining parent edges.
/// Throws NoSuchEdge or WouldCreateCycle.
Qpn reverse_edge(const Qpn& qpn, std::string_view i, std::string_view j, Mode mode);

struct QueryStep {
  enum class Kind { RemoveBarren, Reduce, Reverse };
  Kind kind = Kind::Reduce;
  std::string node;   // the removed/reduced node, or the tail of the reversed edge
  std::string other;  // head of the reversed edge
  std::vector<SignedEdge> edges_after;
};

std::string_view to_string(QueryStep::Kind kind);

struct QueryResult {
  Sign sign = Sign::Zero;
  std::vector<QueryStep> transcript;
  Qpn final_qpn;
};

/// Marginal influence of `decision` on `target` by graph transformation.
/// Returns 0 at once when the two are d-separated. Otherwise, repeatedly:
/// remove the first barren node in topological order; else reduce the
/// lowest-ranked node with at most one parent; else pick the highest-ranked
/// remaining node and reverse its edge to its earliest child, continuing
/// with that node until it is barren. Stops when only the two query nodes
/// remain. Throws UnknownVariable, OverlappingSets or Stuck.
QueryResult query(const Qpn& qpn, std::string_view decision, std::string_view target,
                  Mode mode);

}  // namespace qpn

#endif  // QPN_INFERENCE_HPP
