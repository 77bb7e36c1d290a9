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

// OpenMP kernels shared by the randomized searches. Each kernel has a serial
// reference path; both paths return identical results for the same input.

#ifndef QPN_PARALLEL_HPP
#define QPN_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qpn {

enum class Execution { Serial, Parallel };

inline int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Runs trial(0), trial(1), ... until one returns a value, and reports the
/// lowest succeeding index with its value. `trial` must be a pure function
/// of its index. The parallel path evaluates trials in blocks and scans each
/// block in index order, so it finds the same first success as the serial
/// loop.
template <class T, class Trial>
std::optional<std::pair<std::size_t, T>> first_success(std::size_t trials,
                                                       Trial&& trial,
                                                       Execution exec) {
  if (exec == Execution::Serial || worker_count() == 1) {
    for (std::size_t t = 0; t < trials; ++t) {
      if (auto r = trial(t)) return std::pair<std::size_t, T>{t, std::move(*r)};
    }
    return std::nullopt;
  }

  const std::size_t block = 64 * static_cast<std::size_t>(worker_count());
  std::vector<std::optional<T>> slot(block);
  for (std::size_t start = 0; start < trials; start += block) {
    const std::size_t count = std::min(block, trials - start);
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(count); ++k) {
      try {
        slot[k] = trial(start + static_cast<std::size_t>(k));
      } catch (...) {
#pragma omp critical(qpn_first_success_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    for (std::size_t k = 0; k < count; ++k) {
      if (slot[k]) return std::pair<std::size_t, T>{start + k, std::move(*slot[k])};
    }
  }
  return std::nullopt;
}

}  // namespace qpn

#endif  // QPN_PARALLEL_HPP
