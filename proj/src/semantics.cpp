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

#include "qpn/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qpn/error.hpp"

namespace qpn {

double ci_deviation(const JointTable& table, const std::vector<std::string>& a,
                    const std::vector<std::string>& b,
                    const std::vector<std::string>& z) {
  if (a.empty() || b.empty())
    fail(ErrorKind::InvalidArgument, "independence test needs two non-empty sets");
  std::vector<std::string> order = z;
  order.insert(order.end(), a.begin(), a.end());
  order.insert(order.end(), b.begin(), b.end());
  if (std::set<std::string>(order.begin(), order.end()).size() != order.size())
    fail(ErrorKind::OverlappingSets, "independence test sets must be disjoint");
  const auto local = permute(marginalize(table, order), order);

  auto block = [&](const std::vector<std::string>& names) {
    std::size_t n = 1;
    for (const auto& s : names) n *= table.variable(s).size();
    return n;
  };
  const std::size_t nz = block(z), na = block(a), nb = block(b);
  const auto p = local.probabilities();

  double worst = 0.0;
  std::vector<double> pa(na), pb(nb);
  for (std::size_t zi = 0; zi < nz; ++zi) {
    const std::size_t base = zi * na * nb;
    double pz = 0.0;
    std::fill(pa.begin(), pa.end(), 0.0);
    std::fill(pb.begin(), pb.end(), 0.0);
    for (std::size_t ai = 0; ai < na; ++ai) {
      for (std::size_t bi = 0; bi < nb; ++bi) {
        const double q = p[base + ai * nb + bi];
        pa[ai] += q;
        pb[bi] += q;
        pz += q;
      }
    }
    if (pz <= kEpsProb) continue;
    for (std::size_t ai = 0; ai < na; ++ai) {
      for (std::size_t bi = 0; bi < nb; ++bi) {
        const double joint = p[base + ai * nb + bi] / pz;
        const double prod = (pa[ai] / pz) * (pb[bi] / pz);
        worst = std::max(worst, std::abs(joint - prod));
      }
    }
  }
  return worst;
}

namespace {

void require_matching(const JointTable& table, const SignedDag& dag) {
  if (table.rank() != dag.size())
    fail(ErrorKind::ShapeMismatch, "table and network declare different variable counts");
  for (const auto& v : dag.variables()) {
    const auto k = table.find(v.name);
    if (!k) fail(ErrorKind::ShapeMismatch, "table lacks network variable '" + v.name + "'");
    if (table.variables()[*k].support != v.support)
      fail(ErrorKind::ShapeMismatch, "support of '" + v.name + "' differs between table and network");
  }
  if (table.cell_count() != table.expected_cell_count())
    fail(ErrorKind::ShapeMismatch, "table entry count does not match its supports");
}

}  // namespace

std::vector<MarkovCheck> markov_checks(const JointTable& table, const SignedDag& dag) {
  require_matching(table, dag);
  std::vector<MarkovCheck> out;
  for (const auto& v : dag.variables()) {
    MarkovCheck check;
    check.variable = v.name;
    check.parents = dag.parents(v.name);
    const auto desc = dag.descendants(v.name);
    for (const auto& u : dag.variables()) {
      if (u.name == v.name) continue;
      if (std::find(desc.begin(), desc.end(), u.name) != desc.end()) continue;
      if (std::find(check.parents.begin(), check.parents.end(), u.name) != check.parents.end())
        continue;
      check.nondescendants.push_back(u.name);
    }
    if (!check.nondescendants.empty()) {
      check.max_deviation = ci_deviation(table, {v.name}, check.nondescendants, check.parents);
      check.ok = check.max_deviation <= kEpsCi;
    }
    out.push_back(std::move(check));
  }
  return out;
}

std::vector<MarkovCheck> markov_check(const JointTable& table, const SignedDag& dag) {
  auto all = markov_checks(table, dag);
  std::erase_if(all, [](const MarkovCheck& c) { return c.ok; });
  return all;
}

bool edge_sign_admits(Sign sign, Verdict verdict) {
  switch (sign) {
    case Sign::Plus: return verdict == Verdict::Positive || verdict == Verdict::Zero;
    case Sign::Minus: return verdict == Verdict::Negative || verdict == Verdict::Zero;
    case Sign::Zero: return verdict == Verdict::Zero;
    case Sign::Question: return true;
  }
  return false;
}

SatisfactionReport satisfies_qpn(const JointTable& table, const Qpn& qpn) {
  SatisfactionReport report;
  report.markov_checks = markov_checks(table, qpn);
  for (const auto& c : report.markov_checks)
    if (!c.ok) report.markov_violations.push_back(c);

  for (const auto& e : qpn.edges()) {
    EdgeCheck check;
    check.edge = e;
    for (const auto& p : qpn.parents(e.to))
      if (p != e.from) check.context.push_back(p);
    // "?" edges are unconstrained but their verdict is still reported.
    check.verdict = influence_sign(table, e.from, e.to, check.context);
    check.ok = edge_sign_admits(e.sign, check.verdict.verdict);
    if (!check.ok) report.edge_violations.push_back(check);
    report.edge_checks.push_back(std::move(check));
  }
  report.satisfied = report.markov_violations.empty() && report.edge_violations.empty();
  return report;
}

}  // namespace qpn
