// Copyright 2026 The mge Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace mge {

/// Folds indices [0, n) into an accumulator using up to `jobs` threads.
///
/// Each thread folds one contiguous block into its own Acc; the partial
/// results are merged with `+=` in block order. With a commutative and
/// associative `+=` the result does not depend on `jobs`.
template <class Acc, class Fn>
Acc parallel_fold(std::size_t n, unsigned jobs, Fn fold_one) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(jobs == 0 ? 1 : jobs, n));
  if (workers == 1) {
    Acc acc{};
    for (std::size_t i = 0; i < n; ++i) fold_one(acc, i);
    return acc;
  }

  std::vector<Acc> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = n * w / workers;
      const std::size_t end = n * (w + 1) / workers;
      threads.emplace_back([&, w, begin, end] {
        try {
          for (std::size_t i = begin; i < end; ++i) fold_one(partial[w], i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  Acc acc{};
  for (auto& p : partial) acc += p;
  return acc;
}

}  // namespace mge
