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

// Exact discrete joint distributions over finitely many ordered variables.
//
// A JointTable stores one probability per cell of the product of the
// variables' supports, row-major over the declared variable order (the last
// variable varies fastest). Tables are plain values: every operation below
// returns a new table and never mutates its argument.

#ifndef QPN_DISTRIBUTION_HPP
#define QPN_DISTRIBUTION_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qpn {

/// Absolute tolerance for every probability comparison.
inline constexpr double kEpsProb = 1e-9;

struct VariableSpec {
  std::string name;
  std::vector<double> support;  // strictly increasing levels

  std::size_t size() const { return support.size(); }
  bool binary() const { return support.size() == 2; }
  std::optional<std::size_t> level_index(double level) const;

  friend bool operator==(const VariableSpec&, const VariableSpec&) = default;
};

class JointTable {
 public:
  JointTable() = default;
  JointTable(std::vector<VariableSpec> variables,
             std::vector<double> probabilities);

  const std::vector<VariableSpec>& variables() const { return variables_; }
  std::span<const double> probabilities() const { return probabilities_; }
  std::size_t rank() const { return variables_.size(); }
  std::size_t cell_count() const { return probabilities_.size(); }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws UnknownVariable.
  std::size_t position(std::string_view name) const;
  const VariableSpec& variable(std::string_view name) const;

  std::vector<std::size_t> shape() const;
  /// Product of support sizes; compare against cell_count() for shape checks.
  std::size_t expected_cell_count() const;

  double operator[](std::size_t flat) const { return probabilities_[flat]; }
  double at(std::span<const std::size_t> levels) const;

  friend bool operator==(const JointTable&, const JointTable&) = default;

 private:
  std::vector<VariableSpec> variables_;
  std::vector<double> probabilities_;
};

struct Cdf {
  std::vector<double> support;
  std::vector<double> cumulative;
};

enum class DominanceOrder { Dominates, DominatedBy, Equal, Incomparable };

std::string_view to_string(DominanceOrder order);

/// Checks a single variable: at least two levels, strictly increasing, finite.
void validate(const VariableSpec& variable);

/// Throws NegativeMass, MassNotOne or ShapeMismatch.
void validate(const JointTable& table);

/// Sums out every variable not named in `keep`. The result keeps the
/// table's variable order.
JointTable marginalize(const JointTable& table,
                       const std::vector<std::string>& keep);

/// Reorders the axes of a table; `order` must name every variable once.
JointTable permute(const JointTable& table,
                   const std::vector<std::string>& order);

/// Normalized distribution of the non-evidence variables given the evidence
/// levels. Evidence maps variable name to a support level value.
JointTable condition(const JointTable& table,
                     const std::map<std::string, double>& evidence);

/// Marginal cdf of one variable.
Cdf cdf_of(const JointTable& table, std::string_view variable);
Cdf cdf_from_pmf(std::vector<double> support, std::span<const double> pmf);

/// First-order stochastic dominance: f Dominates g when f <= g pointwise and
/// they differ somewhere by more than kEpsProb.
DominanceOrder fsd_compare(const Cdf& f, const Cdf& g);

/// Row-major odometer over a shape. Returns false after the last cell.
bool next_index(std::span<std::size_t> index,
                std::span<const std::size_t> shape);

}  // namespace qpn

#endif  // QPN_DISTRIBUTION_HPP
