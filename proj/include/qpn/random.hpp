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

#ifndef QPN_RANDOM_HPP
#define QPN_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace qpn {

using Rng = std::mt19937_64;

/// Independent generator for stream `stream` of a seeded family. Trial k of
/// a search always draws from stream_rng(seed, k), whichever thread runs it.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

/// Uniform draw from the open probability simplex of dimension k.
inline std::vector<double> sample_simplex(Rng& rng, std::size_t k) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> p(k);
  double total = 0.0;
  for (auto& x : p) {
    x = exp1(rng);
    total += x;
  }
  for (auto& x : p) x /= total;
  return p;
}

}  // namespace qpn

#endif  // QPN_RANDOM_HPP
