// Copyright 2026 The soeval Authors
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

#include <cstdint>

namespace soeval::metrics {

/// Unbiased pass@k: 1 - C(n-c, k) / C(n, k), the probability that a uniformly drawn k-subset of
/// the n samples contains at least one of the c correct ones.
///
/// Evaluated as 1 - prod_{i=n-c+1}^{n} (1 - k/i), which never forms a binomial coefficient.
/// Returns exactly 1.0 when n - c < k and exactly c/n when k == 1.
/// Throws std::domain_error unless 1 <= k <= n and c <= n; k > n is never clamped.
double pass_at_k(std::uint64_t n, std::uint64_t c, std::uint64_t k);

}  // namespace soeval::metrics
