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

#include "soeval/metrics/pass_at_k.hpp"

#include <stdexcept>
#include <string>

namespace soeval::metrics {

double pass_at_k(std::uint64_t n, std::uint64_t c, std::uint64_t k) {
  if (n == 0 || k == 0 || k > n || c > n) {
    throw std::domain_error("pass@k undefined for n=" + std::to_string(n) + ", c=" + std::to_string(c) +
                            ", k=" + std::to_string(k));
  }
  if (n - c < k) return 1.0;
  if (k == 1) return static_cast<double>(c) / static_cast<double>(n);
  double miss = 1.0;
  const auto kd = static_cast<double>(k);
  for (std::uint64_t i = n - c + 1; i <= n; ++i) miss *= 1.0 - kd / static_cast<double>(i);
  return 1.0 - miss;
}

}  // namespace soeval::metrics
