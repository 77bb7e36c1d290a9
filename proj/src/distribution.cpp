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

#include "qpn/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "qpn/error.hpp"

namespace qpn {

namespace {

void require_shape(const JointTable& table) {
  if (table.cell_count() != table.expected_cell_count()) {
    std::ostringstream msg;
    msg << "table has " << table.cell_count() << " entries but its supports "
        << "span " << table.expected_cell_count() << " cells";
    fail(ErrorKind::ShapeMismatch, msg.str());
  }
}

std::vector<std::size_t> positions_of(const JointTable& table,
                                      const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(table.position(n));
  return out;
}

}  // namespace

std::optional<std::size_t> VariableSpec::level_index(double level) const {
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (std::abs(support[k] - level) <= 1e-9 * std::max(1.0, std::abs(level)))
      return k;
  }
  return std::nullopt;
}

JointTable::JointTable(std::vector<VariableSpec> variables,
                       std::vector<double> probabilities)
    : variables_(std::move(variables)),
      probabilities_(std::move(probabilities)) {}

std::optional<std::size_t> JointTable::find(std::string_view name) const {
  for (std::size_t k = 0; k < variables_.size(); ++k)
    if (variables_[k].name == name) return k;
  return std::nullopt;
}

std::size_t JointTable::position(std::string_view name) const {
  auto k = find(name);
  if (!k) fail(ErrorKind::UnknownVariable, "no variable '" + std::string(name) + "' in table");
  return *k;
}

const VariableSpec& JointTable::variable(std::string_view name) const {
  return variables_[position(name)];
}

std::vector<std::size_t> JointTable::shape() const {
  std::vector<std::size_t> s;
  s.reserve(variables_.size());
  for (const auto& v : variables_) s.push_back(v.size());
  return s;
}

std::size_t JointTable::expected_cell_count() const {
  std::size_t n = 1;
  for (const auto& v : variables_) n *= v.size();
  return n;
}

double JointTable::at(std::span<const std::size_t> levels) const {
  std::size_t flat = 0;
  for (std::size_t d = 0; d < variables_.size(); ++d)
    flat = flat * variables_[d].size() + levels[d];
  return probabilities_[flat];
}

std::string_view to_string(DominanceOrder order) {
  switch (order) {
    case DominanceOrder::Dominates: return "dominates";
    case DominanceOrder::DominatedBy: return "dominated_by";
    case DominanceOrder::Equal: return "equal";
    case DominanceOrder::Incomparable: return "incomparable";
  }
  return "incomparable";
}

bool next_index(std::span<std::size_t> index,
                std::span<const std::size_t> shape) {
  for (std::size_t d = index.size(); d-- > 0;) {
    if (++index[d] < shape[d]) return true;
    index[d] = 0;
  }
  return false;
}

void validate(const VariableSpec& variable) {
  if (variable.support.size() < 2)
    fail(ErrorKind::ShapeMismatch,
         "variable '" + variable.name + "' needs at least two support levels");
  for (std::size_t k = 0; k < variable.support.size(); ++k) {
    if (!std::isfinite(variable.support[k]))
      fail(ErrorKind::ShapeMismatch,
           "variable '" + variable.name + "' has a non-finite level");
    if (k > 0 && !(variable.support[k] > variable.support[k - 1]))
      fail(ErrorKind::ShapeMismatch,
           "support of '" + variable.name + "' is not strictly increasing");
  }
}

void validate(const JointTable& table) {
  std::set<std::string> seen;
  for (const auto& v : table.variables()) {
    validate(v);
    if (!seen.insert(v.name).second)
      fail(ErrorKind::DuplicateVariable, "variable '" + v.name + "' declared twice");
  }
  if (table.variables().empty())
    fail(ErrorKind::ShapeMismatch, "table declares no variables");
  require_shape(table);
  double total = 0.0;
  for (std::size_t k = 0; k < table.cell_count(); ++k) {
    const double p = table[k];
    if (!std::isfinite(p) || p < 0.0) {
      std::ostringstream msg;
      msg << "entry " << k << " is " << p;
      fail(ErrorKind::NegativeMass, msg.str());
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kEpsProb) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "entries sum to " << total;
    fail(ErrorKind::MassNotOne, msg.str());
  }
}

JointTable marginalize(const JointTable& table,
                       const std::vector<std::string>& keep) {
  require_shape(table);
  if (keep.empty())
    fail(ErrorKind::InvalidArgument, "marginalize needs at least one variable to keep");
  std::vector<bool> kept(table.rank(), false);
  for (auto p : positions_of(table, keep)) kept[p] = true;

  std::vector<VariableSpec> vars;
  std::vector<std::size_t> result_stride(table.rank(), 0);
  for (std::size_t d = 0; d < table.rank(); ++d)
    if (kept[d]) vars.push_back(table.variables()[d]);
  std::size_t stride = 1;
  for (std::size_t d = table.rank(); d-- > 0;) {
    if (kept[d]) {
      result_stride[d] = stride;
      stride *= table.variables()[d].size();
    }
  }

  std::vector<double> out(stride, 0.0);
  const auto shape = table.shape();
  std::vector<std::size_t> index(table.rank(), 0);
  std::size_t flat = 0;
  do {
    std::size_t r = 0;
    for (std::size_t d = 0; d < index.size(); ++d) r += index[d] * result_stride[d];
    out[r] += table[flat++];
  } while (next_index(index, shape));
  return JointTable(std::move(vars), std::move(out));
}

JointTable permute(const JointTable& table,
                   const std::vector<std::string>& order) {
  require_shape(table);
  if (order.size() != table.rank())
    fail(ErrorKind::InvalidArgument, "permute must name every variable exactly once");
  const auto pos = positions_of(table, order);
  if (std::set<std::size_t>(pos.begin(), pos.end()).size() != pos.size())
    fail(ErrorKind::InvalidArgument, "permute names a variable twice");

  std::vector<VariableSpec> vars;
  for (auto p : pos) vars.push_back(table.variables()[p]);
  // Stride of each source axis inside the permuted layout.
  std::vector<std::size_t> dest_stride(table.rank());
  std::size_t stride = 1;
  for (std::size_t k = pos.size(); k-- > 0;) {
    dest_stride[pos[k]] = stride;
    stride *= vars[k].size();
  }
  std::vector<double> out(table.cell_count());
  const auto shape = table.shape();
  std::vector<std::size_t> index(table.rank(), 0);
  std::size_t flat = 0;
  do {
    std::size_t r = 0;
    for (std::size_t d = 0; d < index.size(); ++d) r += index[d] * dest_stride[d];
    out[r] = table[flat++];
  } while (next_index(index, shape));
  return JointTable(std::move(vars), std::move(out));
}

JointTable condition(const JointTable& table,
                     const std::map<std::string, double>& evidence) {
  require_shape(table);
  std::vector<std::optional<std::size_t>> fixed(table.rank());
  for (const auto& [name, level] : evidence) {
    const auto p = table.position(name);
    auto k = table.variables()[p].level_index(level);
    if (!k) {
      std::ostringstream msg;
      msg << "level " << level << " is not in the support of '" << name << "'";
      fail(ErrorKind::UnknownLevel, msg.str());
    }
    fixed[p] = *k;
  }

  std::vector<VariableSpec> vars;
  std::vector<std::size_t> result_stride(table.rank(), 0);
  for (std::size_t d = 0; d < table.rank(); ++d)
    if (!fixed[d]) vars.push_back(table.variables()[d]);
  std::size_t stride = 1;
  for (std::size_t d = table.rank(); d-- > 0;) {
    if (!fixed[d]) {
      result_stride[d] = stride;
      stride *= table.variables()[d].size();
    }
  }

  std::vector<double> out(stride, 0.0);
  double mass = 0.0;
  const auto shape = table.shape();
  std::vector<std::size_t> index(table.rank(), 0);
  std::size_t flat = 0;
  do {
    bool match = true;
    std::size_t r = 0;
    for (std::size_t d = 0; d < index.size(); ++d) {
      if (fixed[d]) {
        match = match && index[d] == *fixed[d];
      } else {
        r += index[d] * result_stride[d];
      }
    }
    if (match) {
      out[r] += table[flat];
      mass += table[flat];
    }
    ++flat;
  } while (next_index(index, shape));

  if (mass <= kEpsProb) {
    std::ostringstream msg;
    msg << "conditioning event has probability " << mass;
    fail(ErrorKind::ZeroProbabilityEvidence, msg.str());
  }
  for (auto& p : out) p /= mass;
  return JointTable(std::move(vars), std::move(out));
}

Cdf cdf_from_pmf(std::vector<double> support, std::span<const double> pmf) {
  if (support.size() != pmf.size())
    fail(ErrorKind::SupportMismatch, "pmf length differs from support size");
  Cdf cdf{std::move(support), std::vector<double>(pmf.size())};
  std::partial_sum(pmf.begin(), pmf.end(), cdf.cumulative.begin());
  return cdf;
}

Cdf cdf_of(const JointTable& table, std::string_view variable) {
  const auto& spec = table.variable(variable);
  const auto marginal = marginalize(table, {spec.name});
  return cdf_from_pmf(spec.support, marginal.probabilities());
}

DominanceOrder fsd_compare(const Cdf& f, const Cdf& g) {
  if (f.support != g.support || f.cumulative.size() != g.cumulative.size())
    fail(ErrorKind::SupportMismatch, "FSD comparison requires identical supports");
  bool f_below = true;  // f <= g everywhere
  bool g_below = true;
  bool equal = true;
  for (std::size_t k = 0; k < f.cumulative.size(); ++k) {
    const double diff = f.cumulative[k] - g.cumulative[k];
    if (diff > kEpsProb) f_below = false;
    if (diff < -kEpsProb) g_below = false;
    if (std::abs(diff) > kEpsProb) equal = false;
  }
  if (equal) return DominanceOrder::Equal;
  if (f_below) return DominanceOrder::Dominates;
  if (g_below) return DominanceOrder::DominatedBy;
  return DominanceOrder::Incomparable;
}

}  // namespace qpn
