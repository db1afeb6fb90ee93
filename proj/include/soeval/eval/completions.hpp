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
#include <filesystem>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "soeval/util/jsonl.hpp"

namespace soeval::eval {

/// Identity of one sample within a run.
struct SampleKey {
  std::string task_id;
  double temperature = 0.0;
  std::uint32_t sample_index = 0;

  auto operator<=>(const SampleKey&) const = default;
};

std::string describe(const SampleKey& key);  // "HumanEval/0@T=0.2#3"

struct Completion {
  std::string task_id;
  std::uint32_t sample_index = 0;
  double temperature = 0.0;
  double top_p = 0.95;
  std::string text;
  bool error = false;  // generation failed after retries; text is empty

  SampleKey key() const { return {task_id, temperature, sample_index}; }
};

util::OrderedJson completion_to_json(const Completion& c);
Completion completion_from_json(const util::Json& j);

/// Reads a completions file. Throws InputError on schema errors or a duplicated
/// (task_id, temperature, sample_index).
std::vector<Completion> load_completions(const std::filesystem::path& path);

}  // namespace soeval::eval
