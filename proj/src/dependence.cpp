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

#include "qpn/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "qpn/error.hpp"
#include "qpn/random.hpp"

namespace qpn {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Positive: return "positive";
    case Verdict::Negative: return "negative";
    case Verdict::Zero: return "zero";
    case Verdict::Ambiguous: return "ambiguous";
  }
  return "ambiguous";
}

namespace {

// Bivariate table laid out as [x][y].
struct Grid {
  VariableSpec x;
  VariableSpec y;
  std::vector<double> p;

  std::size_t rows() const { return x.size(); }
  std::size_t cols() const { return y.size(); }
  double at(std::size_t xi, std::size_t yi) const { return p[xi * y.size() + yi]; }
};

Grid bivariate(const JointTable& table, std::string_view x, std::string_view y) {
  if (x == y) fail(ErrorKind::InvalidArgument, "dependence checks need two distinct variables");
  const std::string xs(x), ys(y);
  auto m = permute(marginalize(table, {xs, ys}), {xs, ys});
  return Grid{m.variables()[0], m.variables()[1],
              std::vector<double>(m.probabilities().begin(), m.probabilities().end())};
}

struct Comparison {
  std::vector<std::size_t> context;
  std::size_t high = 0;
  std::size_t low = 0;
  DominanceOrder order = DominanceOrder::Equal;
  Cdf cdf_high;
  Cdf cdf_low;
};

InfluenceWitness make_witness(const Comparison& c,
                              const std::vector<VariableSpec>& context_vars,
                              const VariableSpec& vi) {
  InfluenceWitness w;
  for (std::size_t k = 0; k < context_vars.size(); ++k)
    w.context[context_vars[k].name] = context_vars[k].support[c.context[k]];
  w.high_level = vi.support[c.high];
  w.low_level = vi.support[c.low];
  w.order = c.order;
  w.cdf_high = c.cdf_high.cumulative;
  w.cdf_low = c.cdf_low.cumulative;
  const auto& hi = c.cdf_high.cumulative;
  const auto& lo = c.cdf_low.cumulative;
  w.support_point = c.cdf_high.support.back();
  for (std::size_t k = 0; k < hi.size(); ++k) {
    const bool hit = c.order == DominanceOrder::Dominates ? hi[k] < lo[k] - kEpsProb
                                                          : hi[k] > lo[k] + kEpsProb;
    if (hit) {
      w.support_point = c.cdf_high.support[k];
      break;
    }
  }
  return w;
}

}  // namespace

InfluenceVerdict influence_sign(const JointTable& table, std::string_view i,
                                std::string_view j,
                                const std::vector<std::string>& context,
                                bool strict_witness) {
  const auto pi = table.position(i);
  const auto pj = table.position(j);
  if (pi == pj) fail(ErrorKind::ContextOverlap, "influence needs distinct variables");
  std::vector<std::size_t> ctx_pos;
  for (const auto& c : context) {
    const auto p = table.position(c);
    if (p == pi || p == pj)
      fail(ErrorKind::ContextOverlap, "context contains '" + c + "'");
    if (std::find(ctx_pos.begin(), ctx_pos.end(), p) != ctx_pos.end())
      fail(ErrorKind::ContextOverlap, "context lists '" + c + "' twice");
    ctx_pos.push_back(p);
  }
  std::sort(ctx_pos.begin(), ctx_pos.end());

  std::vector<std::string> order;
  std::vector<VariableSpec> ctx_vars;
  for (auto p : ctx_pos) {
    order.push_back(table.variables()[p].name);
    ctx_vars.push_back(table.variables()[p]);
  }
  order.emplace_back(i);
  order.emplace_back(j);
  const auto local = permute(marginalize(table, order), order);
  const auto& vi = table.variables()[pi];
  const auto& vj = table.variables()[pj];
  const std::size_t ni = vi.size(), nj = vj.size();

  std::vector<std::size_t> ctx_shape;
  for (const auto& v : ctx_vars) ctx_shape.push_back(v.size());
  std::vector<std::size_t> ctx_index(ctx_vars.size(), 0);

  InfluenceVerdict result;
  std::optional<Comparison> first_incomparable, first_dominates, first_dominated;
  bool dominates_first = false;

  std::size_t ctx_flat = 0;
  do {
    std::vector<Cdf> cdfs(ni);
    std::vector<bool> reachable(ni, false);
    for (std::size_t a = 0; a < ni; ++a) {
      const std::size_t base = (ctx_flat * ni + a) * nj;
      std::vector<double> pmf(local.probabilities().begin() + base,
                              local.probabilities().begin() + base + nj);
      double mass = 0.0;
      for (double q : pmf) mass += q;
      if (mass <= kEpsProb) {
        Assignment skipped;
        for (std::size_t k = 0; k < ctx_vars.size(); ++k)
          skipped[ctx_vars[k].name] = ctx_vars[k].support[ctx_index[k]];
        skipped[vi.name] = vi.support[a];
        result.skipped_contexts.push_back(std::move(skipped));
        continue;
      }
      for (double& q : pmf) q /= mass;
      cdfs[a] = cdf_from_pmf(vj.support, pmf);
      reachable[a] = true;
    }

    for (std::size_t gap = 1; gap < ni; ++gap) {
      for (std::size_t lo = 0; lo + gap < ni; ++lo) {
        const std::size_t hi = lo + gap;
        if (!reachable[hi] || !reachable[lo]) continue;
        const auto cmp = fsd_compare(cdfs[hi], cdfs[lo]);
        if (cmp == DominanceOrder::Equal) continue;
        auto record = [&](std::optional<Comparison>& slot) {
          if (!slot) slot = Comparison{ctx_index, hi, lo, cmp, cdfs[hi], cdfs[lo]};
        };
        if (cmp == DominanceOrder::Incomparable) {
          record(first_incomparable);
        } else if (cmp == DominanceOrder::Dominates) {
          if (!first_dominates && !first_dominated) dominates_first = true;
          record(first_dominates);
        } else {
          record(first_dominated);
        }
      }
    }
    ++ctx_flat;
  } while (next_index(ctx_index, ctx_shape));

  if (first_incomparable) {
    result.verdict = Verdict::Ambiguous;
    result.witness = make_witness(*first_incomparable, ctx_vars, vi);
  } else if (first_dominates && first_dominated) {
    result.verdict = Verdict::Ambiguous;
    result.witness = make_witness(dominates_first ? *first_dominated : *first_dominates,
                                  ctx_vars, vi);
  } else if (first_dominates) {
    result.verdict = Verdict::Positive;
    if (strict_witness) result.witness = make_witness(*first_dominates, ctx_vars, vi);
  } else if (first_dominated) {
    result.verdict = Verdict::Negative;
    if (strict_witness) result.witness = make_witness(*first_dominated, ctx_vars, vi);
  } else {
    result.verdict = Verdict::Zero;
  }
  return result;
}

MlrpResult mlrp_check(const JointTable& table, std::string_view x,
                      std::string_view y) {
  const auto g = bivariate(table, x, y);
  const std::size_t nx = g.rows(), ny = g.cols();
  std::vector<double> col(ny, 0.0);
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < ny; ++b) col[b] += g.at(a, b);
  for (std::size_t b = 0; b < ny; ++b) {
    if (col[b] <= kEpsProb) {
      std::ostringstream msg;
      msg << "level " << g.y.support[b] << " of '" << g.y.name << "' has no mass";
      fail(ErrorKind::ZeroColumn, msg.str());
    }
  }
  auto cond = [&](std::size_t a, std::size_t b) { return g.at(a, b) / col[b]; };

  for (std::size_t xh = nx; xh-- > 1;) {
    for (std::size_t xl = 0; xl < xh; ++xl) {
      for (std::size_t yh = ny; yh-- > 1;) {
        for (std::size_t yl = 0; yl < yh; ++yl) {
          const double lhs = cond(xh, yh) * cond(xl, yl);
          const double rhs = cond(xl, yh) * cond(xh, yl);
          if (lhs < rhs - kEpsProb) {
            MlrpWitness w;
            w.x = g.x.support[xh];
            w.x_prime = g.x.support[xl];
            w.y = g.y.support[yh];
            w.y_prime = g.y.support[yl];
            // Ratios may be infinite when a denominator vanishes.
            w.ratio_at_x = cond(xh, yh) / cond(xh, yl);
            w.ratio_at_x_prime = cond(xl, yh) / cond(xl, yl);
            return {false, w};
          }
        }
      }
    }
  }
  return {true, std::nullopt};
}

Tp2Result tp2_check(const JointTable& table, std::string_view x,
                    std::string_view y) {
  const auto g = bivariate(table, x, y);
  for (std::size_t a = 0; a < g.rows(); ++a) {
    for (std::size_t a2 = a + 1; a2 < g.rows(); ++a2) {
      for (std::size_t b = 0; b < g.cols(); ++b) {
        for (std::size_t b2 = b + 1; b2 < g.cols(); ++b2) {
          const double discordant = g.at(a, b2) * g.at(a2, b);
          const double concordant = g.at(a, b) * g.at(a2, b2);
          if (discordant > concordant + kEpsProb) {
            return {false, Tp2Witness{g.x.support[a], g.x.support[a2], g.y.support[b],
                                      g.y.support[b2], discordant, concordant}};
          }
        }
      }
    }
  }
  return {true, std::nullopt};
}

std::uint64_t upper_set_count(std::size_t m, std::size_t n) {
  // C(m + n, k) built up multiplicatively; every prefix is an integer.
  const std::size_t k = std::min(m, n);
  std::uint64_t c = 1;
  for (std::size_t t = 1; t <= k; ++t) {
    const std::uint64_t num = m + n - k + t;
    if (c > std::numeric_limits<std::uint64_t>::max() / num)
      return std::numeric_limits<std::uint64_t>::max();
    c = c * num / t;
  }
  return c;
}

namespace {

// Upper sets of an m x n grid as per-row thresholds: row a holds columns
// >= t[a], with t non-increasing in a. Enumerated in lexicographically
// descending order, from the empty set to the full grid.
std::vector<std::vector<std::size_t>> upper_sets(std::size_t m, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> t(m);
  auto rec = [&](auto&& self, std::size_t row, std::size_t cap) -> void {
    if (row == m) {
      out.push_back(t);
      return;
    }
    for (std::size_t v = cap + 1; v-- > 0;) {
      t[row] = v;
      self(self, row + 1, v);
    }
  };
  rec(rec, 0, n);
  return out;
}

struct Violation {
  double amount = 0.0;
  std::size_t u = 0;
  std::size_t v = 0;
  bool found = false;

  bool better_than(const Violation& other) const {
    if (!found) return false;
    if (!other.found) return true;
    if (amount != other.amount) return amount > other.amount;
    return std::pair{u, v} < std::pair{other.u, other.v};
  }
};

struct AssociationScan {
  std::vector<std::vector<std::size_t>> sets;
  std::vector<std::vector<double>> suffix;  // suffix[a][t] = sum_{b >= t} p(a, b)
  std::vector<double> mass;

  double intersection(std::size_t u, std::size_t v) const {
    double s = 0.0;
    for (std::size_t a = 0; a < suffix.size(); ++a)
      s += suffix[a][std::max(sets[u][a], sets[v][a])];
    return s;
  }

  void scan_row(std::size_t u, Violation& best) const {
    for (std::size_t v = 0; v < sets.size(); ++v) {
      const double deficit = mass[u] * mass[v] - intersection(u, v);
      if (deficit > kEpsProb) {
        Violation cand{deficit, u, v, true};
        if (cand.better_than(best)) best = cand;
      }
    }
  }
};

}  // namespace

AssociationResult association_check(const JointTable& table, std::string_view x,
                                    std::string_view y, Execution exec) {
  const auto g = bivariate(table, x, y);
  const std::size_t m = g.rows(), n = g.cols();
  const auto count = upper_set_count(m, n);
  if (count > kMaxUpperSets) {
    std::ostringstream msg;
    msg << m << "x" << n << " grid has " << count << " upper sets (limit "
        << kMaxUpperSets << ")";
    fail(ErrorKind::SupportTooLarge, msg.str());
  }

  AssociationScan scan;
  scan.sets = upper_sets(m, n);
  scan.suffix.assign(m, std::vector<double>(n + 1, 0.0));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t t = n; t-- > 0;) scan.suffix[a][t] = scan.suffix[a][t + 1] + g.at(a, t);
  scan.mass.resize(scan.sets.size());
  for (std::size_t u = 0; u < scan.sets.size(); ++u) scan.mass[u] = scan.intersection(u, u);

  Violation best;
  const auto rows = static_cast<std::ptrdiff_t>(scan.sets.size());
  if (exec == Execution::Serial) {
    for (std::ptrdiff_t u = 0; u < rows; ++u) scan.scan_row(static_cast<std::size_t>(u), best);
  } else {
#pragma omp parallel
    {
      Violation local;
#pragma omp for schedule(dynamic, 16) nowait
      for (std::ptrdiff_t u = 0; u < rows; ++u) scan.scan_row(static_cast<std::size_t>(u), local);
#pragma omp critical(qpn_association_merge)
      if (local.better_than(best)) best = local;
    }
  }

  if (!best.found) return {true, std::nullopt};
  auto cells = [&](std::size_t s) {
    std::vector<Cell> out;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = scan.sets[s][a]; b < n; ++b)
        out.emplace_back(g.x.support[a], g.y.support[b]);
    return out;
  };
  AssociationWitness w{cells(best.u), cells(best.v), scan.intersection(best.u, best.v),
                       scan.mass[best.u], scan.mass[best.v]};
  return {false, std::move(w)};
}

void validate(const Likelihood& likelihood) {
  validate(likelihood.x);
  validate(likelihood.y);
  if (likelihood.x.name == likelihood.y.name)
    fail(ErrorKind::DuplicateVariable, "likelihood variables share a name");
  if (likelihood.values.size() != likelihood.x.size() * likelihood.y.size())
    fail(ErrorKind::ShapeMismatch, "likelihood entry count does not match supports");
  for (std::size_t b = 0; b < likelihood.y.size(); ++b) {
    double total = 0.0;
    for (std::size_t a = 0; a < likelihood.x.size(); ++a) {
      const double p = likelihood.at(a, b);
      if (!std::isfinite(p) || p < 0.0) fail(ErrorKind::NegativeMass, "negative likelihood entry");
      total += p;
    }
    if (std::abs(total - 1.0) > kEpsProb) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "column " << b << " of p(" << likelihood.x.name << "|" << likelihood.y.name
          << ") sums to " << total;
      fail(ErrorKind::MassNotOne, msg.str());
    }
  }
}

Likelihood likelihood_from_joint(const JointTable& table, std::string_view x,
                                 std::string_view y) {
  const auto g = bivariate(table, x, y);
  Likelihood out{g.x, g.y, std::vector<double>(g.p.size())};
  for (std::size_t b = 0; b < g.cols(); ++b) {
    double col = 0.0;
    for (std::size_t a = 0; a < g.rows(); ++a) col += g.at(a, b);
    if (col <= kEpsProb) fail(ErrorKind::ZeroColumn, "conditioning level without mass");
    for (std::size_t a = 0; a < g.rows(); ++a) out.values[a * g.cols() + b] = g.at(a, b) / col;
  }
  return out;
}

JointTable joint_from_likelihood(const Likelihood& likelihood,
                                 std::span<const double> prior) {
  if (prior.size() != likelihood.y.size())
    fail(ErrorKind::ShapeMismatch, "prior length differs from the support of y");
  double total = 0.0;
  for (double q : prior) {
    if (!std::isfinite(q) || q < 0.0) fail(ErrorKind::BadProbability, "negative prior mass");
    total += q;
  }
  if (std::abs(total - 1.0) > kEpsProb) fail(ErrorKind::BadProbability, "prior does not sum to 1");
  std::vector<double> p(likelihood.values.size());
  for (std::size_t a = 0; a < likelihood.x.size(); ++a)
    for (std::size_t b = 0; b < likelihood.y.size(); ++b)
      p[a * likelihood.y.size() + b] = likelihood.at(a, b) * prior[b];
  return JointTable({likelihood.x, likelihood.y}, std::move(p));
}

MlrpResult mlrp_check(const Likelihood& likelihood) {
  validate(likelihood);
  const std::vector<double> uniform(likelihood.y.size(), 1.0 / likelihood.y.size());
  return mlrp_check(joint_from_likelihood(likelihood, uniform), likelihood.x.name,
                    likelihood.y.name);
}

namespace {

bool weakly_positive(Verdict v) { return v == Verdict::Positive || v == Verdict::Zero; }

}  // namespace

bool prop1_forward(const Likelihood& likelihood,
                   const std::vector<std::vector<double>>& priors) {
  if (!mlrp_check(likelihood).holds)
    fail(ErrorKind::NotMlrp, "likelihood p(" + likelihood.x.name + "|" + likelihood.y.name +
                                 ") does not satisfy MLRP");
  const auto& xn = likelihood.x.name;
  const auto& yn = likelihood.y.name;
  for (const auto& prior : priors) {
    const auto joint = joint_from_likelihood(likelihood, prior);
    if (!weakly_positive(influence_sign(joint, xn, yn).verdict)) return false;
    if (!weakly_positive(influence_sign(joint, yn, xn).verdict)) return false;
  }
  return true;
}

std::optional<std::vector<double>> prop1_witness_search(const Likelihood& likelihood,
                                                        std::uint64_t seed,
                                                        std::size_t trials,
                                                        Execution exec) {
  if (mlrp_check(likelihood).holds)
    fail(ErrorKind::IsMlrp, "likelihood satisfies MLRP; every prior gives positive influence");
  auto trial = [&](std::size_t t) -> std::optional<std::vector<double>> {
    auto rng = stream_rng(seed, t);
    auto prior = sample_simplex(rng, likelihood.y.size());
    const auto joint = joint_from_likelihood(likelihood, prior);
    if (influence_sign(joint, likelihood.x.name, likelihood.y.name).verdict == Verdict::Positive)
      return std::nullopt;
    return prior;
  };
  auto hit = first_success<std::vector<double>>(trials, trial, exec);
  if (!hit) return std::nullopt;
  return std::move(hit->second);
}

}  // namespace qpn
