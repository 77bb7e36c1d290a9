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

#include "qpn/inference.hpp"

#include <algorithm>
#include <deque>
#include <optional>

#include "qpn/error.hpp"

namespace qpn {

std::string_view to_string(Mode mode) {
  return mode == Mode::Classical ? "classical" : "sound";
}

std::string_view to_string(QueryStep::Kind kind) {
  switch (kind) {
    case QueryStep::Kind::RemoveBarren: return "remove_barren";
    case QueryStep::Kind::Reduce: return "reduce";
    case QueryStep::Kind::Reverse: return "reverse";
  }
  return "reduce";
}

namespace {

bool both_binary(const Qpn& qpn, std::string_view a, std::string_view b) {
  return qpn.variable(a).binary() && qpn.variable(b).binary();
}

bool contains(const std::vector<std::string>& names, std::string_view n) {
  return std::find(names.begin(), names.end(), n) != names.end();
}

std::vector<VariableSpec> without(const Qpn& qpn, std::string_view v) {
  std::vector<VariableSpec> out;
  for (const auto& var : qpn.variables())
    if (var.name != v) out.push_back(var);
  return out;
}

}  // namespace

Sign step_sign(const Qpn& qpn, const TrailStep& step, Mode mode) {
  if (step.direction == Direction::WithEdge || mode == Mode::Classical) return step.edge.sign;
  return both_binary(qpn, step.edge.from, step.edge.to) ? step.edge.sign : Sign::Question;
}

PropagationResult propagate(const Qpn& qpn, std::string_view observed, Sign obs_sign,
                            Mode mode) {
  qpn.index_of(observed);
  if (obs_sign != Sign::Plus && obs_sign != Sign::Minus)
    fail(ErrorKind::BadEvidenceSign, "evidence must be + or -");

  PropagationResult result;
  result.evidence_node = std::string(observed);
  result.evidence_sign = obs_sign;
  result.mode = mode;
  result.node_signs[result.evidence_node] = obs_sign;
  for (auto& [node, trails] : active_trails_from(qpn, observed, {})) {
    Sign total = Sign::Zero;
    auto& log = result.trail_log[node];
    for (auto& trail : trails) {
      Sign s = obs_sign;
      for (const auto& step : trail.steps) s = sign_product(s, step_sign(qpn, step, mode));
      total = sign_sum(total, s);
      log.push_back({std::move(trail), s});
    }
    result.node_signs[node] = total;
  }
  return result;
}

Qpn remove_vertex(const Qpn& qpn, std::string_view v) {
  qpn.index_of(v);
  std::vector<SignedEdge> edges;
  for (const auto& e : qpn.edges())
    if (e.from != v && e.to != v) edges.push_back(e);
  return Qpn(without(qpn, v), std::move(edges));
}

Qpn reduce_vertex(const Qpn& qpn, std::string_view v) {
  const auto parents = qpn.parents(v);
  if (parents.size() > 1)
    fail(ErrorKind::TooManyParents,
         "'" + std::string(v) + "' has " + std::to_string(parents.size()) + " parents");
  auto children = qpn.children(v);
  std::sort(children.begin(), children.end(), [&](const auto& a, const auto& b) {
    return qpn.topological_rank(a) < qpn.topological_rank(b);
  });

  std::vector<SignedEdge> edges;
  for (const auto& e : qpn.edges())
    if (e.from != v && e.to != v) edges.push_back(e);
  auto find = [&](std::string_view from, std::string_view to) -> SignedEdge* {
    for (auto& e : edges)
      if (e.from == from && e.to == to) return &e;
    return nullptr;
  };

  if (!parents.empty()) {
    const auto& p = parents.front();
    const Sign into = qpn.edge(p, v)->sign;
    for (const auto& c : children) {
      const Sign chained = sign_product(into, qpn.edge(v, c)->sign);
      if (auto* e = find(p, c)) {
        e->sign = sign_sum(e->sign, chained);
      } else {
        edges.push_back({p, c, chained});
      }
    }
  }
  for (std::size_t a = 0; a < children.size(); ++a) {
    for (std::size_t b = a + 1; b < children.size(); ++b) {
      if (!find(children[a], children[b]) && !find(children[b], children[a]))
        edges.push_back({children[a], children[b], Sign::Question});
    }
  }
  return Qpn(without(qpn, v), std::move(edges));
}

Qpn reverse_edge(const Qpn& qpn, std::string_view i, std::string_view j, Mode mode) {
  const auto arc = qpn.edge(i, j);
  if (!arc)
    fail(ErrorKind::NoSuchEdge, "no edge " + std::string(i) + "->" + std::string(j));

  // Any other directed path i ~> j would close a cycle once j -> i exists.
  std::deque<std::string> todo;
  for (const auto& c : qpn.children(i))
    if (c != j) todo.push_back(c);
  std::vector<std::string> seen;
  while (!todo.empty()) {
    auto u = todo.front();
    todo.pop_front();
    if (u == j)
      fail(ErrorKind::WouldCreateCycle, "another directed path leads from " + std::string(i) +
                                            " to " + std::string(j));
    if (contains(seen, u)) continue;
    seen.push_back(u);
    for (const auto& c : qpn.children(u)) todo.push_back(c);
  }

  const auto parents_i = qpn.parents(i);
  auto parents_j = qpn.parents(j);
  std::erase(parents_j, std::string(i));
  const bool sound = mode == Mode::Sound;
  const bool i_binary = qpn.variable(i).binary();

  std::vector<SignedEdge> edges;
  for (const auto& e : qpn.edges()) {
    if (e.from == i && e.to == j) {
      const Sign s = (!sound || both_binary(qpn, i, j)) ? e.sign : Sign::Question;
      edges.push_back({std::string(j), std::string(i), s});
      continue;
    }
    SignedEdge copy = e;
    const bool shared = contains(parents_i, e.from) && contains(parents_j, e.from);
    if ((e.to == j || e.to == i) && shared) copy.sign = Sign::Question;
    if (e.to == i && sound && !i_binary) copy.sign = Sign::Question;
    edges.push_back(std::move(copy));
  }
  for (const auto& p : parents_i)
    if (!contains(parents_j, p)) edges.push_back({p, std::string(j), Sign::Question});
  for (const auto& q : parents_j)
    if (!contains(parents_i, q)) edges.push_back({q, std::string(i), Sign::Question});
  return Qpn(qpn.variables(), std::move(edges));
}

QueryResult query(const Qpn& qpn, std::string_view decision, std::string_view target,
                  Mode mode) {
  QueryResult result;
  result.final_qpn = qpn;
  if (d_separated(qpn, decision, target, {})) return result;

  const std::string d(decision), t(target);
  Qpn cur = qpn;
  std::optional<std::string> eliminating;
  auto record = [&](QueryStep::Kind kind, std::string node, std::string other) {
    result.transcript.push_back({kind, std::move(node), std::move(other), cur.edges()});
  };

  // Every step either removes a node or moves one edge off the node being
  // eliminated, so this bound is never reached on a valid DAG.
  const std::size_t budget = 4 * (qpn.size() + 1) * (qpn.size() + 1) * (qpn.size() + 1);
  for (std::size_t step = 0; step < budget; ++step) {
    if (cur.size() == 2) {
      if (auto e = cur.edge(d, t)) {
        result.sign = e->sign;
        result.final_qpn = cur;
        return result;
      }
      if (cur.edge(t, d)) {
        cur = reverse_edge(cur, t, d, mode);
        record(QueryStep::Kind::Reverse, t, d);
        continue;
      }
      result.sign = Sign::Zero;
      result.final_qpn = cur;
      return result;
    }

    const auto& order = cur.topological_order();
    auto eligible = [&](const std::string& v) { return v != d && v != t; };

    auto barren = std::find_if(order.begin(), order.end(), [&](const std::string& v) {
      return eligible(v) && cur.children(v).empty();
    });
    if (barren != order.end()) {
      const std::string v = *barren;
      cur = remove_vertex(cur, v);
      if (eliminating == v) eliminating.reset();
      record(QueryStep::Kind::RemoveBarren, v, {});
      continue;
    }

    auto reducible = std::find_if(order.begin(), order.end(), [&](const std::string& v) {
      return eligible(v) && cur.parents(v).size() <= 1;
    });
    if (reducible != order.end()) {
      const std::string v = *reducible;
      cur = reduce_vertex(cur, v);
      if (eliminating == v) eliminating.reset();
      record(QueryStep::Kind::Reduce, v, {});
      continue;
    }

    if (!eliminating) {
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (eligible(*it)) {
          eliminating = *it;
          break;
        }
      }
    }
    if (!eliminating) break;
    auto children = cur.children(*eliminating);
    const auto first = std::min_element(children.begin(), children.end(),
                                        [&](const auto& a, const auto& b) {
                                          return cur.topological_rank(a) <
                                                 cur.topological_rank(b);
                                        });
    const std::string child = *first;
    cur = reverse_edge(cur, *eliminating, child, mode);
    record(QueryStep::Kind::Reverse, *eliminating, child);
  }

  std::string residual;
  for (const auto& e : cur.edges())
    residual += " " + e.from + "->" + e.to + ":" + std::string(to_string(e.sign));
  fail(ErrorKind::Stuck, "no applicable operation; residual edges:" + residual);
}

}  // namespace qpn
