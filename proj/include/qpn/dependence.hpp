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

// Pairwise positive-dependence notions on discrete tables, from strongest to
// weakest: MLRP (equivalently TP2 when every column has mass), FSD
// influence, and association.
//
// Influence is directional. Conditioning on larger values of i may shift j
// upward in the FSD sense while conditioning on larger j fails to shift i;
// the other three notions are symmetric in (x, y).

#ifndef QPN_DEPENDENCE_HPP
#define QPN_DEPENDENCE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qpn/distribution.hpp"
#include "qpn/parallel.hpp"

namespace qpn {

enum class Verdict { Positive, Negative, Zero, Ambiguous };

std::string_view to_string(Verdict v);

using Assignment = std::map<std::string, double>;

/// One comparison of cdf(j | i = high, context) against
/// cdf(j | i = low, context).
struct InfluenceWitness {
  Assignment context;
  double high_level = 0.0;
  double low_level = 0.0;
  DominanceOrder order = DominanceOrder::Incomparable;
  /// Level of j where the comparison breaks the expected direction (for
  /// Ambiguous) or where the strict dominance shows (for Positive/Negative).
  double support_point = 0.0;
  std::vector<double> cdf_high;
  std::vector<double> cdf_low;
};

struct InfluenceVerdict {
  Verdict verdict = Verdict::Zero;
  std::optional<InfluenceWitness> witness;
  /// Conditioning cells (i and context levels) with mass <= kEpsProb.
  std::vector<Assignment> skipped_contexts;
};

/// Does conditioning on larger values of i shift j upward (Positive) or
/// downward (Negative), uniformly over every context configuration?
///
/// Level pairs are compared in order of increasing distance, then
/// increasing lower level; the reported witness is the first comparison that
/// breaks the verdict. Positive and Negative need at least one strict
/// dominance; all-Equal comparisons give Zero. With `strict_witness` set, a
/// Positive or Negative verdict carries the first strict pair.
InfluenceVerdict influence_sign(const JointTable& table, std::string_view i,
                                std::string_view j,
                                const std::vector<std::string>& context = {},
                                bool strict_witness = false);

/// x >= x', y >= y' with p(x|y) p(x'|y') < p(x'|y) p(x|y').
struct MlrpWitness {
  double x = 0.0;
  double x_prime = 0.0;
  double y = 0.0;
  double y_prime = 0.0;
  double ratio_at_x = 0.0;        // p(x|y) / p(x|y')
  double ratio_at_x_prime = 0.0;  // p(x'|y) / p(x'|y')
};

struct MlrpResult {
  bool holds = true;
  std::optional<MlrpWitness> witness;
};

/// Throws ZeroColumn when some level of y carries no mass. Quadruples are
/// scanned from the outermost pairs inward (x descending, x' ascending,
/// y descending, y' ascending); the first failure is the witness.
MlrpResult mlrp_check(const JointTable& table, std::string_view x,
                      std::string_view y);

/// x < x', y < y' with p(x,y') p(x',y) > p(x,y) p(x',y').
struct Tp2Witness {
  double x = 0.0;
  double x_prime = 0.0;
  double y = 0.0;
  double y_prime = 0.0;
  double discordant = 0.0;  // p(x,y') p(x',y)
  double concordant = 0.0;  // p(x,y) p(x',y')
};

struct Tp2Result {
  bool holds = true;
  std::optional<Tp2Witness> witness;
};

Tp2Result tp2_check(const JointTable& table, std::string_view x,
                    std::string_view y);

using Cell = std::pair<double, double>;

struct AssociationWitness {
  std::vector<Cell> upper_u;
  std::vector<Cell> upper_v;
  double p_intersection = 0.0;
  double p_u = 0.0;
  double p_v = 0.0;
};

struct AssociationResult {
  bool holds = true;
  std::optional<AssociationWitness> witness;
};

inline constexpr std::uint64_t kMaxUpperSets = 1'000'000;

/// Checks P(U ∩ V) >= P(U) P(V) over every pair of upper sets of the
/// support grid; this is the covariance condition on monotone indicators,
/// which suffices for all bounded monotone functions. The witness is the
/// largest violation, ties going to the first pair in enumeration order.
/// Throws SupportTooLarge when the grid has more than kMaxUpperSets upper
/// sets.
AssociationResult association_check(const JointTable& table, std::string_view x,
                                    std::string_view y,
                                    Execution exec = Execution::Parallel);

/// Number of upper sets of an m x n grid, C(m + n, m); saturates at
/// UINT64_MAX.
std::uint64_t upper_set_count(std::size_t m, std::size_t n);

/// A likelihood p(x | y): one pmf over x for every level of y.
struct Likelihood {
  VariableSpec x;
  VariableSpec y;
  std::vector<double> values;  // values[xi * y.size() + yi] = p(x_xi | y_yi)

  double at(std::size_t xi, std::size_t yi) const { return values[xi * y.size() + yi]; }
};

/// Throws ShapeMismatch, NegativeMass or MassNotOne (per column).
void validate(const Likelihood& likelihood);

/// p(x | y) from a joint table. Throws ZeroColumn.
Likelihood likelihood_from_joint(const JointTable& table, std::string_view x,
                                 std::string_view y);

/// Joint over (x, y) given a prior pmf on y.
JointTable joint_from_likelihood(const Likelihood& likelihood,
                                 std::span<const double> prior);

MlrpResult mlrp_check(const Likelihood& likelihood);

/// MLRP implies positive influence in both directions for every prior.
/// Returns true iff every prior yields Positive-or-Zero for x -> y and
/// y -> x. Throws NotMlrp if the likelihood fails MLRP.
bool prop1_forward(const Likelihood& likelihood,
                   const std::vector<std::vector<double>>& priors);

/// Searches random priors (trial t draws from stream_rng(seed, t)) for one
/// under which x does not positively influence y. Throws IsMlrp when the
/// likelihood satisfies MLRP, since no such prior exists.
std::optional<std::vector<double>> prop1_witness_search(
    const Likelihood& likelihood, std::uint64_t seed, std::size_t trials,
    Execution exec = Execution::Parallel);

}  // namespace qpn

#endif  // QPN_DEPENDENCE_HPP
