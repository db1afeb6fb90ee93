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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "soeval/eval/completions.hpp"
#include "soeval/sandbox/process.hpp"
#include "soeval/util/jsonl.hpp"

namespace soeval::sandbox {

/// Timeout is kept apart from RuntimeError internally; the error tables fold it into runtime.
enum class Outcome { SyntaxError, RuntimeError, TestFailure, Timeout, Correct };

std::string_view outcome_name(Outcome o);  // "syntax_error", "runtime_error", ...
std::optional<Outcome> parse_outcome(std::string_view name);

struct ExecLimits {
  double wall_timeout_s = 10.0;
  std::uint64_t memory_cap_bytes = std::uint64_t{512} << 20;
  std::uint64_t file_size_cap_bytes = std::uint64_t{64} << 20;
  std::filesystem::path temp_root = std::filesystem::temp_directory_path();
};

/// A Python interpreter whose version has been checked.
struct Interpreter {
  std::filesystem::path executable;
  std::string version;  // "3.10.12"

  /// Resolution order: `explicit_path`, $SOEVAL_PYTHON, then "python3" on PATH.
  /// Throws ConfigError if nothing runnable is found or the version is below 3.8.
  static Interpreter locate(std::optional<std::string> explicit_path = std::nullopt);
};

struct SyntaxCheck {
  bool ok = true;
  std::string detail;  // "SyntaxError: invalid syntax (line 1)" on failure
};

struct ProgramRun {
  Outcome outcome = Outcome::Correct;
  std::optional<std::string> exception_name;
  double duration_s = 0.0;
  std::string stderr_tail;
};

/// Process-level sandbox: every call gets a fresh interpreter and a fresh temporary working
/// directory that is deleted afterwards. Safe to use from several threads at once.
class Sandbox {
 public:
  Sandbox(Interpreter interpreter, ExecLimits limits);

  /// Compile-only. Nothing from `source` is executed.
  SyntaxCheck check_syntax(std::string_view source) const;

  /// Runs a program that already passed check_syntax and classifies the run.
  ProgramRun execute(std::string_view source) const;

  /// check_syntax, then execute when it passes. SyntaxError runs report zero duration.
  ProgramRun evaluate(std::string_view source) const;

  const Interpreter& interpreter() const { return interpreter_; }
  const ExecLimits& limits() const { return limits_; }

 private:
  ProcessOutcome run_driver(std::string_view mode, std::string_view source) const;

  Interpreter interpreter_;
  ExecLimits limits_;
};

/// Classifies a finished driver process. Exposed for tests.
ProgramRun classify(const ProcessOutcome& process);

struct ExecutionResult {
  std::string task_id;
  std::uint32_t sample_index = 0;
  double temperature = 0.0;
  Outcome outcome = Outcome::Correct;
  std::optional<std::string> exception_name;
  double duration_s = 0.0;
  std::string stderr_tail;

  eval::SampleKey key() const { return {task_id, temperature, sample_index}; }
};

util::OrderedJson result_to_json(const ExecutionResult& r);
ExecutionResult result_from_json(const util::Json& j);
std::vector<ExecutionResult> load_results(const std::filesystem::path& path);

struct ExecJob {
  eval::SampleKey key;
  std::string source;
};

struct HarnessFailure {
  eval::SampleKey key;
  std::string message;
};

struct BatchResult {
  std::vector<ExecutionResult> results;  // sorted by key
  std::vector<HarnessFailure> harness_errors;
};

using JobRunner = std::function<ProgramRun(const ExecJob&)>;

/// Runs every job with at most `workers` in flight. A HarnessError from one job is recorded and
/// the batch continues. results.size() + harness_errors.size() == jobs.size().
BatchResult run_batch(std::span<const ExecJob> jobs, const JobRunner& runner, int workers);
BatchResult run_batch(std::span<const ExecJob> jobs, const Sandbox& sandbox, int workers);

}  // namespace soeval::sandbox
