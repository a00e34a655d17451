// Copyright 2026 The Authors.
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

#ifndef FLATSPAN_COMBINATORICS_H_
#define FLATSPAN_COMBINATORICS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace flatspan {

// C(n, r) in 64 bits; callers stay at desk scale.
std::uint64_t Binomial(std::uint64_t n, std::uint64_t r);

// Calls fn(indices) for every r-subset of {0..n-1} in lexicographic order.
// Stops early when fn returns false.
template <typename Fn>
void ForEachCombination(size_t n, size_t r, Fn&& fn) {
  if (r > n) return;
  std::vector<size_t> idx(r);
  for (size_t i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    if (!fn(static_cast<const std::vector<size_t>&>(idx))) return;
    size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace flatspan

#endif  // FLATSPAN_COMBINATORICS_H_
