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

#include "soeval/eval/tasks.hpp"

#include <fstream>

#include "soeval/util/error.hpp"
#include "soeval/util/jsonl.hpp"

namespace soeval::eval {
namespace {

std::string field_text(const util::Json& j, const char* key, const std::filesystem::path& path, std::size_t line) {
  if (!j.contains(key)) {
    throw InputError(path.string() + ":" + std::to_string(line) + ": missing required field \"" + key + "\"");
  }
  const auto& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw InputError(path.string() + ":" + std::to_string(line) + ": field \"" + key + "\" has the wrong type");
}

}  // namespace

std::string_view suite_name(Suite suite) { return suite == Suite::HumanEval ? "humaneval" : "mbpp"; }

std::optional<Suite> parse_suite(std::string_view name) {
  if (name == "humaneval") return Suite::HumanEval;
  if (name == "mbpp") return Suite::MBPP;
  return std::nullopt;
}

std::size_t standard_suite_size(Suite suite) { return suite == Suite::HumanEval ? 164 : 500; }

std::vector<EvalTask> load_suite(const std::filesystem::path& path, Suite suite) {
  std::vector<EvalTask> tasks;
  util::for_each_jsonl(path, [&](std::size_t line, const util::Json& j) {
    if (!j.is_object()) throw InputError(path.string() + ":" + std::to_string(line) + ": expected an object");
    EvalTask task;
    task.suite = suite;
    task.task_id = field_text(j, "task_id", path, line);
    if (suite == Suite::HumanEval) {
      task.prompt_body = field_text(j, "prompt", path, line);
      task.test_code = field_text(j, "test", path, line);
      task.entry_point = field_text(j, "entry_point", path, line);
      task.reference_solution = field_text(j, "canonical_solution", path, line);
    } else {
      task.prompt_body = field_text(j, "text", path, line);
      task.reference_solution = field_text(j, "code", path, line);
      if (!j.contains("test_list") || !j.at("test_list").is_array() || j.at("test_list").empty()) {
        throw InputError(path.string() + ":" + std::to_string(line) + ": missing required field \"test_list\"");
      }
      for (const auto& t : j.at("test_list")) {
        if (!t.is_string()) throw InputError(path.string() + ":" + std::to_string(line) + ": test_list entry is not a string");
        task.test_list.push_back(t.get<std::string>());
      }
    }
    tasks.push_back(std::move(task));
  });
  return tasks;
}

Suite detect_suite(const std::filesystem::path& path) {
  std::optional<Suite> found;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::string line;
  while (!found && std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto j = util::Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) break;
    if (j.contains("entry_point")) found = Suite::HumanEval;
    else if (j.contains("test_list")) found = Suite::MBPP;
    else break;
  }
  if (!found) throw InputError("cannot tell the suite kind of " + path.string() + "; pass it explicitly");
  return *found;
}

std::optional<std::string> suite_size_warning(Suite suite, std::size_t loaded) {
  const auto expected = standard_suite_size(suite);
  if (loaded == expected) return std::nullopt;
  return "loaded " + std::to_string(loaded) + " " + std::string(suite_name(suite)) + " tasks; the standard suite has " +
         std::to_string(expected);
}

std::string build_prompt(const EvalTask& task, std::string_view preamble) {
  std::string prompt;
  if (!preamble.empty()) {
    prompt += preamble;
    if (preamble.back() != '\n') prompt.push_back('\n');
  }
  if (task.suite == Suite::HumanEval) {
    prompt += task.prompt_body;
    return prompt;
  }
  prompt += task.prompt_body;
  if (!prompt.empty() && prompt.back() != '\n') prompt.push_back('\n');
  for (const auto& assertion : task.test_list) {
    prompt += assertion;
    prompt.push_back('\n');
  }
  return prompt;
}

TruncationRules TruncationRules::defaults_for(Suite suite) {
  if (suite == Suite::HumanEval) return {{"\ndef ", "\nclass ", "\nif __name__", "\nprint("}};
  return {{"\nassert ", "\nif __name__", "\nprint("}};
}

std::string_view truncate_completion(std::string_view text, std::span<const std::string> stop_sequences) {
  auto cut = text.size();
  for (const auto& stop : stop_sequences) {
    if (stop.empty()) continue;
    const auto pos = text.find(stop);
    if (pos != std::string_view::npos && pos < cut) cut = pos;
  }
  return text.substr(0, cut);
}

std::string assemble_program(const EvalTask& task, std::string_view completion, const TruncationRules& rules) {
  const auto body = truncate_completion(completion, rules.stop_sequences);
  std::string program;
  if (task.suite == Suite::HumanEval) {
    program += task.prompt_body;
    program += body;
    program += "\n";
    program += task.test_code;
    program += "\ncheck(";
    program += task.entry_point.value_or("");
    program += ")\n";
    return program;
  }
  program += body;
  program += "\n";
  for (std::size_t i = 0; i < task.test_list.size(); ++i) {
    if (i) program += "\n";
    program += task.test_list[i];
  }
  program += "\n";
  return program;
}

}  // namespace soeval::eval
