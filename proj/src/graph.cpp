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

#include "qpn/graph.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <queue>

#include "qpn/error.hpp"

namespace qpn {

SignedDag::SignedDag(std::vector<VariableSpec> variables,
                     std::vector<SignedEdge> edges)
    : variables_(std::move(variables)), edges_(std::move(edges)) {
  const std::size_t n = variables_.size();
  for (std::size_t k = 0; k < n; ++k) {
    validate(variables_[k]);
    for (std::size_t m = 0; m < k; ++m)
      if (variables_[m].name == variables_[k].name)
        fail(ErrorKind::DuplicateVariable,
             "variable '" + variables_[k].name + "' declared twice");
  }

  parents_.assign(n, {});
  children_.assign(n, {});
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : edges_) {
    const auto from = index_of(e.from);
    const auto to = index_of(e.to);
    if (from == to) fail(ErrorKind::InvalidEdge, "self-loop on '" + e.from + "'");
    if (e.sign == Sign::Zero)
      fail(ErrorKind::InvalidEdge,
           "edge " + e.from + "->" + e.to + " has sign 0; omit the edge instead");
    if (!seen.insert({from, to}).second)
      fail(ErrorKind::DuplicateEdge, "edge " + e.from + "->" + e.to + " declared twice");
    parents_[to].push_back(from);
    children_[from].push_back(to);
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(parents_[v].begin(), parents_[v].end());
    std::sort(children_[v].begin(), children_[v].end());
  }

  std::vector<std::size_t> indegree(n);
  for (std::size_t v = 0; v < n; ++v) indegree[v] = parents_[v].size();
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);
  topo_rank_.assign(n, 0);
  while (!ready.empty()) {
    const auto v = ready.top();
    ready.pop();
    topo_rank_[v] = topo_.size();
    topo_.push_back(variables_[v].name);
    for (auto c : children_[v])
      if (--indegree[c] == 0) ready.push(c);
  }
  if (topo_.size() != n) fail(ErrorKind::CycleDetected, "edge set contains a directed cycle");
}

bool SignedDag::contains(std::string_view name) const {
  return std::any_of(variables_.begin(), variables_.end(),
                     [&](const VariableSpec& v) { return v.name == name; });
}

std::size_t SignedDag::index_of(std::string_view name) const {
  for (std::size_t k = 0; k < variables_.size(); ++k)
    if (variables_[k].name == name) return k;
  fail(ErrorKind::UnknownVariable, "no variable '" + std::string(name) + "' in network");
}

const VariableSpec& SignedDag::variable(std::string_view name) const {
  return variables_[index_of(name)];
}

std::optional<SignedEdge> SignedDag::edge(std::string_view from,
                                          std::string_view to) const {
  for (const auto& e : edges_)
    if (e.from == from && e.to == to) return e;
  return std::nullopt;
}

std::vector<std::string> SignedDag::parents(std::string_view v) const {
  std::vector<std::string> out;
  for (auto p : parents_[index_of(v)]) out.push_back(variables_[p].name);
  return out;
}

std::vector<std::string> SignedDag::children(std::string_view v) const {
  std::vector<std::string> out;
  for (auto c : children_[index_of(v)]) out.push_back(variables_[c].name);
  return out;
}

std::vector<std::string> SignedDag::descendants(std::string_view v) const {
  std::vector<bool> seen(variables_.size(), false);
  std::deque<std::size_t> todo(children_[index_of(v)].begin(),
                               children_[index_of(v)].end());
  while (!todo.empty()) {
    const auto u = todo.front();
    todo.pop_front();
    if (seen[u]) continue;
    seen[u] = true;
    for (auto c : children_[u]) todo.push_back(c);
  }
  std::vector<std::string> out;
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (seen[k]) out.push_back(variables_[k].name);
  return out;
}

std::size_t SignedDag::topological_rank(std::string_view v) const {
  return topo_rank_[index_of(v)];
}

namespace {

void check_query(const SignedDag& dag, std::string_view a, std::string_view b,
                 const NameSet& given) {
  dag.index_of(a);
  dag.index_of(b);
  for (const auto& z : given) dag.index_of(z);
  if (a == b) fail(ErrorKind::OverlappingSets, "trail endpoints must differ");
  if (given.contains(a) || given.contains(b))
    fail(ErrorKind::OverlappingSets, "trail endpoints must not be in the conditioning set");
}

// Nodes that are in `given` or have a descendant in it.
std::vector<bool> opens_collider(const SignedDag& dag, const NameSet& given) {
  std::vector<bool> open(dag.size(), false);
  std::deque<std::size_t> todo;
  for (const auto& z : given) todo.push_back(dag.index_of(z));
  while (!todo.empty()) {
    const auto u = todo.front();
    todo.pop_front();
    if (open[u]) continue;
    open[u] = true;
    for (const auto& p : dag.parents(dag.variables()[u].name))
      todo.push_back(dag.index_of(p));
  }
  return open;
}

class TrailSearch {
 public:
  TrailSearch(const SignedDag& dag, const NameSet& given)
      : dag_(dag), given_(given), open_(opens_collider(dag, given)),
        on_path_(dag.size(), false) {
    for (std::size_t v = 0; v < dag.size(); ++v) {
      const auto& name = dag.variables()[v].name;
      for (const auto& c : dag.children(name))
        neighbours_[v].push_back({dag.index_of(c), Direction::WithEdge});
      for (const auto& p : dag.parents(name))
        neighbours_[v].push_back({dag.index_of(p), Direction::AgainstEdge});
    }
  }

  // Calls visit(trail) for every active simple trail starting at `from`.
  template <class Visit>
  void run(std::size_t from, Visit&& visit) {
    trail_.nodes = {dag_.variables()[from].name};
    trail_.steps.clear();
    on_path_[from] = true;
    extend(from, std::nullopt, visit);
    on_path_[from] = false;
  }

 private:
  struct Hop {
    std::size_t node;
    Direction direction;
  };

  template <class Visit>
  void extend(std::size_t at, std::optional<Direction> arrived, Visit& visit) {
    const auto& name = dag_.variables()[at].name;
    for (const auto& hop : neighbours_[at]) {
      if (on_path_[hop.node]) continue;
      if (arrived) {
        // `at` is an interior node of the trail.
        const bool collider = *arrived == Direction::WithEdge &&
                              hop.direction == Direction::AgainstEdge;
        const bool active = collider ? open_[at] : !given_.contains(name);
        if (!active) continue;
      }
      const auto& next = dag_.variables()[hop.node].name;
      SignedEdge e = hop.direction == Direction::WithEdge ? *dag_.edge(name, next)
                                                          : *dag_.edge(next, name);
      trail_.nodes.push_back(next);
      trail_.steps.push_back({std::move(e), hop.direction});
      on_path_[hop.node] = true;
      visit(hop.node, trail_);
      extend(hop.node, hop.direction, visit);
      on_path_[hop.node] = false;
      trail_.nodes.pop_back();
      trail_.steps.pop_back();
    }
  }

  const SignedDag& dag_;
  const NameSet& given_;
  std::vector<bool> open_;
  std::vector<bool> on_path_;
  std::map<std::size_t, std::vector<Hop>> neighbours_;
  Trail trail_;
};

bool trail_less(const Trail& a, const Trail& b) { return a.nodes < b.nodes; }

}  // namespace

bool d_separated(const SignedDag& dag, std::string_view a, std::string_view b,
                 const NameSet& given) {
  check_query(dag, a, b, given);
  // Reachability over (node, arrived-from-child) states.
  const auto open = opens_collider(dag, given);
  const auto target = dag.index_of(b);
  std::vector<std::array<bool, 2>> visited(dag.size(), {false, false});
  std::deque<std::pair<std::size_t, bool>> todo{{dag.index_of(a), true}};
  while (!todo.empty()) {
    const auto [v, up] = todo.front();
    todo.pop_front();
    if (visited[v][up]) continue;
    visited[v][up] = true;
    const auto& name = dag.variables()[v].name;
    const bool observed = given.contains(name);
    if (!observed && v == target) return false;
    if (up && !observed) {
      for (const auto& p : dag.parents(name)) todo.push_back({dag.index_of(p), true});
      for (const auto& c : dag.children(name)) todo.push_back({dag.index_of(c), false});
    } else if (!up) {
      if (!observed)
        for (const auto& c : dag.children(name)) todo.push_back({dag.index_of(c), false});
      if (open[v])
        for (const auto& p : dag.parents(name)) todo.push_back({dag.index_of(p), true});
    }
  }
  return true;
}

std::vector<Trail> active_trails(const SignedDag& dag, std::string_view from,
                                 std::string_view to, const NameSet& given) {
  check_query(dag, from, to, given);
  const auto target = dag.index_of(to);
  std::vector<Trail> out;
  TrailSearch search(dag, given);
  search.run(dag.index_of(from), [&](std::size_t node, const Trail& t) {
    if (node == target) out.push_back(t);
  });
  std::sort(out.begin(), out.end(), trail_less);
  return out;
}

std::vector<std::pair<std::string, std::vector<Trail>>> active_trails_from(
    const SignedDag& dag, std::string_view from, const NameSet& given) {
  const auto source = dag.index_of(from);
  for (const auto& z : given) dag.index_of(z);
  if (given.contains(from))
    fail(ErrorKind::OverlappingSets, "trail source must not be in the conditioning set");
  std::vector<std::vector<Trail>> per_node(dag.size());
  TrailSearch search(dag, given);
  search.run(source, [&](std::size_t node, const Trail& t) {
    // Trails ending on an observed node are blocked at their endpoint.
    if (!given.contains(dag.variables()[node].name)) per_node[node].push_back(t);
  });
  std::vector<std::pair<std::string, std::vector<Trail>>> out;
  for (std::size_t v = 0; v < dag.size(); ++v) {
    if (v == source) continue;
    std::sort(per_node[v].begin(), per_node[v].end(), trail_less);
    out.emplace_back(dag.variables()[v].name, std::move(per_node[v]));
  }
  return out;
}

}  // namespace qpn
