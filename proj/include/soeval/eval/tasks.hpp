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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace soeval::eval {

enum class Suite { HumanEval, MBPP };

std::string_view suite_name(Suite suite);  // "humaneval", "mbpp"
std::optional<Suite> parse_suite(std::string_view name);

/// One benchmark problem.
///
/// HumanEval: `prompt_body` is the signature plus docstring, `test_code` defines check(candidate)
/// and `entry_point` names the function. MBPP: `prompt_body` is the NL statement and `test_list`
/// holds standalone assert lines. `reference_solution` is the suite's canonical code.
struct EvalTask {
  std::string task_id;
  Suite suite = Suite::HumanEval;
  std::string prompt_body;
  std::string test_code;
  std::vector<std::string> test_list;
  std::optional<std::string> entry_point;
  std::string reference_solution;
};

/// Problem counts of the published suites (164 HumanEval, 500 MBPP evaluation).
std::size_t standard_suite_size(Suite suite);

/// Loads a suite in its published JSONL schema. Throws InputError naming the line on a missing
/// field. Extra fields are ignored.
std::vector<EvalTask> load_suite(const std::filesystem::path& path, Suite suite);

/// Guesses the suite from the first record's fields ("entry_point" vs "test_list").
Suite detect_suite(const std::filesystem::path& path);

/// Warning text when the loaded count differs from the standard suite size.
std::optional<std::string> suite_size_warning(Suite suite, std::size_t loaded);

/// HumanEval: preamble + prompt_body verbatim. MBPP: preamble + statement + one line per assert
/// + a trailing newline as the completion cue. A non-empty preamble is followed by a newline.
std::string build_prompt(const EvalTask& task, std::string_view preamble = {});

struct TruncationRules {
  std::vector<std::string> stop_sequences;

  /// HumanEval continues a function body: stop at the next top-level def/class/main guard/print.
  /// MBPP completions define whole functions, so top-level defs are kept and asserts stop.
  static TruncationRules defaults_for(Suite suite);
};

/// Cuts at the earliest occurrence of any stop sequence. Bytes before it are untouched.
std::string_view truncate_completion(std::string_view text, std::span<const std::string> stop_sequences);

/// One self-contained Python program: HumanEval = prompt + completion + tests + check(entry);
/// MBPP = completion + asserts.
std::string assemble_program(const EvalTask& task, std::string_view completion, const TruncationRules& rules);

}  // namespace soeval::eval
