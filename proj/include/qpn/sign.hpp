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

// The four-valued qualitative sign domain {+, -, 0, ?}.
//
// Signs are ordered by information content: 0 (no influence) is below the
// two definite signs, which are both below ? (unknown). sign_sum is the join
// of that order and combines parallel trails; sign_product chains influences
// along a trail.

#ifndef QPN_SIGN_HPP
#define QPN_SIGN_HPP

#include <array>
#include <optional>
#include <string_view>

namespace qpn {

enum class Sign { Plus, Minus, Zero, Question };

inline constexpr std::array<Sign, 4> kAllSigns = {Sign::Plus, Sign::Minus,
                                                  Sign::Zero, Sign::Question};

constexpr Sign sign_product(Sign a, Sign b) {
  if (a == Sign::Zero || b == Sign::Zero) return Sign::Zero;
  if (a == Sign::Question || b == Sign::Question) return Sign::Question;
  return a == b ? Sign::Plus : Sign::Minus;
}

constexpr Sign sign_sum(Sign a, Sign b) {
  if (a == Sign::Zero) return b;
  if (b == Sign::Zero) return a;
  return a == b ? a : Sign::Question;
}

/// True iff a ⊑ b in the order 0 ⊑ {+,-} ⊑ ?.
constexpr bool sign_leq(Sign a, Sign b) { return sign_sum(a, b) == b; }

constexpr Sign negate(Sign s) {
  switch (s) {
    case Sign::Plus: return Sign::Minus;
    case Sign::Minus: return Sign::Plus;
    default: return s;
  }
}

/// "+", "-", "0" or "?".
std::string_view to_string(Sign s);
std::optional<Sign> parse_sign(std::string_view text);

}  // namespace qpn

#endif  // QPN_SIGN_HPP
