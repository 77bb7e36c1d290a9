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

// Signed directed acyclic graphs and their d-separation structure.

#ifndef QPN_GRAPH_HPP
#define QPN_GRAPH_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qpn/distribution.hpp"
#include "qpn/sign.hpp"

namespace qpn {

/// A Zero influence is represented by the absence of an edge, so `sign` is
/// one of +, - or ?.
struct SignedEdge {
  std::string from;
  std::string to;
  Sign sign = Sign::Question;

  friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

enum class Direction { WithEdge, AgainstEdge };

struct TrailStep {
  SignedEdge edge;
  Direction direction = Direction::WithEdge;

  friend bool operator==(const TrailStep&, const TrailStep&) = default;
};

/// A simple undirected path; steps[k] joins nodes[k] and nodes[k + 1].
struct Trail {
  std::vector<std::string> nodes;
  std::vector<TrailStep> steps;

  friend bool operator==(const Trail&, const Trail&) = default;
};

using NameSet = std::set<std::string, std::less<>>;

class SignedDag {
 public:
  SignedDag() = default;
  /// Validates names, supports, edges and acyclicity. Throws
  /// DuplicateVariable, ShapeMismatch, UnknownVariable, InvalidEdge,
  /// DuplicateEdge or CycleDetected.
  SignedDag(std::vector<VariableSpec> variables, std::vector<SignedEdge> edges);

  const std::vector<VariableSpec>& variables() const { return variables_; }
  const std::vector<SignedEdge>& edges() const { return edges_; }
  std::size_t size() const { return variables_.size(); }

  bool contains(std::string_view name) const;
  /// Declaration index. Throws UnknownVariable.
  std::size_t index_of(std::string_view name) const;
  const VariableSpec& variable(std::string_view name) const;
  std::optional<SignedEdge> edge(std::string_view from, std::string_view to) const;

  /// Results are in declaration order.
  std::vector<std::string> parents(std::string_view v) const;
  std::vector<std::string> children(std::string_view v) const;
  std::vector<std::string> descendants(std::string_view v) const;

  /// Kahn order, ties broken by declaration order.
  const std::vector<std::string>& topological_order() const { return topo_; }
  std::size_t topological_rank(std::string_view v) const;

  friend bool operator==(const SignedDag& a, const SignedDag& b) {
    return a.variables_ == b.variables_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<VariableSpec> variables_;
  std::vector<SignedEdge> edges_;
  std::vector<std::vector<std::size_t>> parents_;   // by declaration index
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::string> topo_;
  std::vector<std::size_t> topo_rank_;
};

/// A QPN is fully described by its signed DAG.
using Qpn = SignedDag;

/// True iff every trail between a and b is blocked by `given`. Throws
/// UnknownVariable, or OverlappingSets when a == b or a, b are in `given`.
bool d_separated(const SignedDag& dag, std::string_view a, std::string_view b,
                 const NameSet& given);

/// All active simple trails between two nodes, sorted by node sequence.
std::vector<Trail> active_trails(const SignedDag& dag, std::string_view from,
                                 std::string_view to, const NameSet& given);

/// Active simple trails from `from` to every other node, keyed by endpoint.
/// Each list is sorted by node sequence.
std::vector<std::pair<std::string, std::vector<Trail>>> active_trails_from(
    const SignedDag& dag, std::string_view from, const NameSet& given);

}  // namespace qpn

#endif  // QPN_GRAPH_HPP
