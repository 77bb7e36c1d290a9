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

#include "qpn/scenarios.hpp"

#include <algorithm>
#include <numeric>

#include "qpn/error.hpp"

namespace qpn {

namespace {

VariableSpec levels(std::string name, int lo, int hi) {
  VariableSpec v{std::move(name), {}};
  for (int k = lo; k <= hi; ++k) v.support.push_back(k);
  return v;
}

}  // namespace

JointTable table1_fixture() {
  return JointTable({levels("X", 1, 3), levels("Y", 1, 3)},
                    {0.2, 0.05, 0.075,  //
                     0.15, 0.15, 0.1,   //
                     0.075, 0.1, 0.1});
}

Qpn figure1_qpn() {
  return Qpn({levels("X1", 1, 3), levels("X2", 1, 3), levels("X3", 1, 3)},
             {{"X1", "X2", Sign::Plus}, {"X2", "X3", Sign::Minus}});
}

Qpn two_node_qpn(bool binary) {
  const int lo = binary ? 0 : 1;
  const int hi = binary ? 1 : 3;
  return Qpn({levels("X", lo, hi), levels("Y", lo, hi)}, {{"X", "Y", Sign::Plus}});
}

Qpn shuttle_qpn() {
  return Qpn({levels("HeOxTemp", 0, 9), levels("HeOxTempProbe", 0, 9),
              levels("HighOxTemp", 0, 1), levels("OxTankLeak", 0, 1),
              levels("OxPressureProbe", 0, 2), levels("HeOxValveProblem", 0, 1)},
             {{"HeOxTemp", "HeOxTempProbe", Sign::Plus},
              {"HeOxTemp", "HighOxTemp", Sign::Plus},
              {"HeOxTemp", "OxTankLeak", Sign::Plus},
              {"HighOxTemp", "OxTankLeak", Sign::Plus},
              {"OxTankLeak", "OxPressureProbe", Sign::Minus},
              {"HeOxValveProblem", "OxPressureProbe", Sign::Minus}});
}

JointTable shuttle_distribution(double fault_prob) {
  if (!(fault_prob > 0.0 && fault_prob < 1.0))
    fail(ErrorKind::BadProbability, "fault probability must lie in (0, 1)");
  const auto qpn = shuttle_qpn();
  ConditionalTables cpts(qpn.size());

  cpts[0].assign(10, 0.1);
  for (int t = 0; t < 10; ++t) {
    for (int p = 0; p < 10; ++p) {
      double q = p >= 5 ? fault_prob / 5.0 : 0.0;
      if (p == t) q += 1.0 - fault_prob;
      cpts[1].push_back(q);
    }
  }
  for (int t = 0; t < 10; ++t) {
    const double high = 0.05 + 0.09 * t;
    cpts[2].insert(cpts[2].end(), {1.0 - high, high});
  }
  for (int t = 0; t < 10; ++t) {
    for (int h = 0; h < 2; ++h) {
      const double leak = 0.01 + 0.02 * t + 0.2 * h;
      cpts[3].insert(cpts[3].end(), {1.0 - leak, leak});
    }
  }
  // Parents in declaration order: OxTankLeak, HeOxValveProblem.
  cpts[4] = {0.1, 0.3, 0.6,   // no leak, valve ok
             0.4, 0.4, 0.2,   // no leak, valve problem
             0.5, 0.3, 0.2,   // leak, valve ok
             0.7, 0.2, 0.1};  // leak, valve problem
  cpts[5] = {0.98, 0.02};
  return factorized_table(qpn, cpts);
}

JointTable factorized_table(const SignedDag& dag, const ConditionalTables& cpts) {
  const std::size_t n = dag.size();
  if (cpts.size() != n) fail(ErrorKind::ShapeMismatch, "one conditional table per variable");
  std::vector<std::vector<std::size_t>> parent_pos(n);
  std::vector<std::size_t> shape(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& var = dag.variables()[v];
    shape[v] = var.size();
    std::size_t rows = 1;
    for (const auto& p : dag.parents(var.name)) {
      parent_pos[v].push_back(dag.index_of(p));
      rows *= dag.variable(p).size();
    }
    if (cpts[v].size() != rows * var.size())
      fail(ErrorKind::ShapeMismatch, "conditional table of '" + var.name + "' has wrong size");
  }

  std::vector<double> probs;
  probs.reserve(std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                                std::multiplies<>()));
  std::vector<std::size_t> index(n, 0);
  do {
    double p = 1.0;
    for (std::size_t v = 0; v < n && p > 0.0; ++v) {
      std::size_t row = 0;
      for (auto q : parent_pos[v]) row = row * shape[q] + index[q];
      p *= cpts[v][row * shape[v] + index[v]];
    }
    probs.push_back(p);
  } while (next_index(index, shape));
  return JointTable(dag.variables(), std::move(probs));
}

namespace {

std::size_t parent_rows(const SignedDag& dag, const std::string& v) {
  std::size_t rows = 1;
  for (const auto& p : dag.parents(v)) rows *= dag.variable(p).size();
  return rows;
}

}  // namespace

JointTable random_factorized_table(const SignedDag& dag, Rng& rng) {
  ConditionalTables cpts(dag.size());
  for (std::size_t v = 0; v < dag.size(); ++v) {
    const auto& var = dag.variables()[v];
    const std::size_t rows = parent_rows(dag, var.name);
    for (std::size_t r = 0; r < rows; ++r) {
      const auto slice = sample_simplex(rng, var.size());
      cpts[v].insert(cpts[v].end(), slice.begin(), slice.end());
    }
  }
  return factorized_table(dag, cpts);
}

JointTable random_monotone_table(const Qpn& qpn, Rng& rng) {
  std::uniform_real_distribution<double> weight(0.5, 1.5);
  std::bernoulli_distribution coin(0.5);
  ConditionalTables cpts(qpn.size());
  for (std::size_t v = 0; v < qpn.size(); ++v) {
    const auto& var = qpn.variables()[v];
    const auto parents = qpn.parents(var.name);
    std::vector<std::size_t> shape;
    std::vector<double> coef;
    for (const auto& p : parents) {
      const auto& pv = qpn.variable(p);
      shape.push_back(pv.size());
      Sign s = qpn.edge(p, var.name)->sign;
      if (s == Sign::Question) s = coin(rng) ? Sign::Plus : Sign::Minus;
      const double dir = s == Sign::Plus ? 1.0 : -1.0;
      coef.push_back(dir * weight(rng) / static_cast<double>(pv.size() - 1));
    }
    const std::size_t rows = parent_rows(qpn, var.name);

    std::vector<double> score(rows, 0.0);
    std::vector<std::size_t> index(parents.size(), 0);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t k = 0; k < parents.size(); ++k)
        score[r] += coef[k] * static_cast<double>(index[k]);
      next_index(index, shape);
    }
    std::vector<std::size_t> rank(rows);
    std::iota(rank.begin(), rank.end(), 0);
    std::stable_sort(rank.begin(), rank.end(),
                     [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });

    // Pointwise-sorted cdfs stay valid cdfs and are FSD-ordered; the
    // highest score gets the pointwise smallest cdf.
    const std::size_t k = var.size();
    std::vector<std::vector<double>> cdfs(rows);
    for (auto& c : cdfs) {
      c = sample_simplex(rng, k);
      std::partial_sum(c.begin(), c.end(), c.begin());
      c.back() = 1.0;
    }
    for (std::size_t level = 0; level < k; ++level) {
      std::vector<double> column(rows);
      for (std::size_t r = 0; r < rows; ++r) column[r] = cdfs[r][level];
      std::sort(column.begin(), column.end(), std::greater<>());
      for (std::size_t r = 0; r < rows; ++r) cdfs[r][level] = column[r];
    }
    cpts[v].assign(rows * k, 0.0);
    for (std::size_t pos = 0; pos < rows; ++pos) {
      const auto& c = cdfs[pos];
      double* out = &cpts[v][rank[pos] * k];
      for (std::size_t level = 0; level < k; ++level)
        out[level] = c[level] - (level ? c[level - 1] : 0.0);
    }
  }
  return factorized_table(qpn, cpts);
}

Claim parse_claim(std::string_view text) {
  const auto arrow = text.find("->");
  const auto colon = text.rfind(':');
  if (arrow == std::string_view::npos || colon == std::string_view::npos || colon < arrow)
    fail(ErrorKind::InvalidArgument,
         "claim '" + std::string(text) + "' is not of the form <source>-><target>:<sign>");
  Claim c;
  c.source = std::string(text.substr(0, arrow));
  c.target = std::string(text.substr(arrow + 2, colon - arrow - 2));
  const auto sign = parse_sign(text.substr(colon + 1));
  if (!sign || *sign == Sign::Question)
    fail(ErrorKind::InvalidArgument, "claimed sign must be +, - or 0");
  if (c.source.empty() || c.target.empty() || c.source == c.target)
    fail(ErrorKind::InvalidArgument, "claim needs two distinct variable names");
  c.claimed = *sign;
  return c;
}

std::string to_string(const Claim& claim) {
  return claim.source + "->" + claim.target + ":" + std::string(to_string(claim.claimed));
}

bool contradicts(Sign claimed, Verdict verdict) {
  switch (claimed) {
    case Sign::Plus: return verdict == Verdict::Negative || verdict == Verdict::Ambiguous;
    case Sign::Minus: return verdict == Verdict::Positive || verdict == Verdict::Ambiguous;
    case Sign::Zero: return verdict != Verdict::Zero;
    case Sign::Question: return false;
  }
  return false;
}

CounterexampleReport find_counterexample(const Qpn& qpn, const Claim& claim,
                                         std::uint64_t seed, std::size_t trials,
                                         Execution exec) {
  qpn.index_of(claim.source);
  qpn.index_of(claim.target);
  if (claim.source == claim.target)
    fail(ErrorKind::InvalidArgument, "claim needs two distinct variables");
  if (claim.claimed == Sign::Question)
    fail(ErrorKind::InvalidArgument, "a ? claim cannot be contradicted");
  if (trials == 0) fail(ErrorKind::InvalidArgument, "trials must be positive");

  struct Hit {
    JointTable table;
    SatisfactionReport report;
    InfluenceVerdict verdict;
  };
  auto trial = [&](std::size_t t) -> std::optional<Hit> {
    auto rng = stream_rng(seed, t);
    auto table = random_factorized_table(qpn, rng);
    auto report = satisfies_qpn(table, qpn);
    if (!report.satisfied) return std::nullopt;
    auto verdict = influence_sign(table, claim.source, claim.target);
    if (!contradicts(claim.claimed, verdict.verdict)) return std::nullopt;
    return Hit{std::move(table), std::move(report), std::move(verdict)};
  };

  CounterexampleReport out;
  out.seed = seed;
  auto hit = first_success<Hit>(trials, trial, exec);
  if (!hit) {
    out.trials_used = trials;
    return out;
  }
  out.found = true;
  out.trials_used = hit->first + 1;
  out.table = std::move(hit->second.table);
  out.qpn_report = std::move(hit->second.report);
  out.claim_verdict = std::move(hit->second.verdict);
  return out;
}

}  // namespace qpn
