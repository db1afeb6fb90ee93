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

#include "soeval/sandbox/sandbox.hpp"

#include <signal.h>
#include <string.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>


#include "soeval/sandbox/driver.hpp"
#include "soeval/util/error.hpp"
#include "soeval/util/text.hpp"

namespace soeval::sandbox {
namespace {

std::optional<std::filesystem::path> find_on_path(const std::string& name) {
  if (name.find('/') != std::string::npos) {
    if (::access(name.c_str(), X_OK) == 0) return std::filesystem::absolute(name);
    return std::nullopt;
  }
  const char* path = std::getenv("PATH");
  for (const auto& dir : util::split(path ? path : "/usr/local/bin:/usr/bin:/bin", ':')) {
    if (dir.empty()) continue;
    auto candidate = std::filesystem::path(dir) / name;
    if (::access(candidate.c_str(), X_OK) == 0) return candidate;
  }
  return std::nullopt;
}

bool version_at_least(const std::string& version, int major, int minor) {
  const auto parts = util::split(version, '.');
  if (parts.size() < 2) return false;
  try {
    const int ma = std::stoi(parts[0]);
    const int mi = std::stoi(parts[1]);
    return ma > major || (ma == major && mi >= minor);
  } catch (const std::exception&) {
    return false;
  }
}

std::string signal_label(int sig) {
  if (const char* abbrev = ::sigabbrev_np(sig)) return std::string("SIG") + abbrev;
  return "signal " + std::to_string(sig);
}

}  // namespace

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::SyntaxError: return "syntax_error";
    case Outcome::RuntimeError: return "runtime_error";
    case Outcome::TestFailure: return "test_failure";
    case Outcome::Timeout: return "timeout";
    case Outcome::Correct: return "correct";
  }
  return "runtime_error";
}

std::optional<Outcome> parse_outcome(std::string_view name) {
  for (auto o : {Outcome::SyntaxError, Outcome::RuntimeError, Outcome::TestFailure, Outcome::Timeout,
                 Outcome::Correct}) {
    if (outcome_name(o) == name) return o;
  }
  return std::nullopt;
}

Interpreter Interpreter::locate(std::optional<std::string> explicit_path) {
  std::string wanted = "python3";
  if (explicit_path && !explicit_path->empty()) {
    wanted = *explicit_path;
  } else if (const char* env = std::getenv("SOEVAL_PYTHON"); env && *env) {
    wanted = env;
  }
  const auto exe = find_on_path(wanted);
  if (!exe) throw ConfigError("python interpreter not found: " + wanted);

  ProcessSpec spec;
  spec.argv = {exe->string(), "-I", "-c", "import sys; print('%d.%d.%d' % sys.version_info[:3])"};
  spec.cwd = std::filesystem::temp_directory_path();
  spec.wall_timeout_s = 30.0;
  spec.capture_stdout = true;
  ProcessOutcome out;
  try {
    out = run_process(spec);
  } catch (const HarnessError& e) {
    throw ConfigError(std::string("cannot run python interpreter: ") + e.what());
  }
  std::string version = out.stdout_data;
  while (!version.empty() && util::is_ascii_space(version.back())) version.pop_back();
  if (!out.exited || out.exit_code != 0 || !version_at_least(version, 3, 8)) {
    throw ConfigError("unsupported python interpreter at " + exe->string() + " (version '" + version +
                      "', need >= 3.8)");
  }
  return Interpreter{*exe, version};
}

Sandbox::Sandbox(Interpreter interpreter, ExecLimits limits)
    : interpreter_(std::move(interpreter)), limits_(std::move(limits)) {
  if (limits_.wall_timeout_s <= 0) throw ConfigError("wall timeout must be positive");
}

ProcessOutcome Sandbox::run_driver(std::string_view mode, std::string_view source) const {
  ScopedTempDir dir(limits_.temp_root);
  const auto program = dir.path() / "program.py";
  {
    std::ofstream out(program, std::ios::binary);
    out.write(source.data(), static_cast<std::streamsize>(source.size()));
    if (!out) throw HarnessError("cannot write " + program.string());
  }
  ProcessSpec spec;
  spec.argv = {interpreter_.executable.string(), "-I", "-c", std::string(driver_source()), std::string(mode),
               program.string()};
  spec.cwd = dir.path();
  spec.address_space_bytes = limits_.memory_cap_bytes;
  spec.file_size_bytes = limits_.file_size_cap_bytes;
  spec.wall_timeout_s = limits_.wall_timeout_s;
  return run_process(spec);
}

ProgramRun classify(const ProcessOutcome& process) {
  ProgramRun run;
  run.duration_s = process.duration_s;
  run.stderr_tail = process.stderr_tail;
  if (process.timed_out) {
    run.outcome = Outcome::Timeout;
    return run;
  }
  std::string_view channel = process.result_channel;
  const auto at = channel.rfind(kResultPrefix);
  if (at != std::string_view::npos) {
    auto line = channel.substr(at + kResultPrefix.size());
    line = line.substr(0, line.find('\n'));
    const auto space = line.find(' ');
    const auto status = line.substr(0, space);
    const auto detail = space == std::string_view::npos ? std::string_view{} : line.substr(space + 1);
    if (status == "ok") {
      run.outcome = Outcome::Correct;
      return run;
    }
    if (status == "syntax") {
      run.outcome = Outcome::SyntaxError;
      run.exception_name = std::string(detail.substr(0, detail.find(':')));
      return run;
    }
    if (status == "exception") {
      run.exception_name = std::string(detail);
      run.outcome = detail == "AssertionError" ? Outcome::TestFailure : Outcome::RuntimeError;
      return run;
    }
  }
  run.outcome = Outcome::RuntimeError;
  if (!process.exited) {
    // The kernel kills on hard memory exhaustion; report it as the interpreter would.
    run.exception_name = process.term_signal == SIGKILL ? "MemoryError" : signal_label(process.term_signal);
  } else {
    run.exception_name = "AbnormalExit";
  }
  return run;
}

SyntaxCheck Sandbox::check_syntax(std::string_view source) const {
  const auto process = run_driver("compile", source);
  const auto run = classify(process);
  if (run.outcome == Outcome::Correct) return {};
  SyntaxCheck check;
  check.ok = false;
  if (run.outcome == Outcome::SyntaxError) {
    const auto at = process.result_channel.rfind(kResultPrefix);
    auto line = std::string_view(process.result_channel).substr(at + kResultPrefix.size() + 7);
    check.detail = std::string(line.substr(0, line.find('\n')));
  } else if (run.outcome == Outcome::Timeout) {
    check.detail = "compile timed out";
  } else {
    check.detail = "compile phase crashed: " + run.exception_name.value_or("unknown");
  }
  return check;
}

ProgramRun Sandbox::execute(std::string_view source) const { return classify(run_driver("run", source)); }

ProgramRun Sandbox::evaluate(std::string_view source) const {
  const auto check = check_syntax(source);
  if (!check.ok) {
    ProgramRun run;
    run.outcome = Outcome::SyntaxError;
    run.exception_name = check.detail.substr(0, check.detail.find(':'));
    run.stderr_tail = check.detail;
    return run;
  }
  return execute(source);
}

util::OrderedJson result_to_json(const ExecutionResult& r) {
  util::OrderedJson j;
  j["task_id"] = r.task_id;
  j["sample_index"] = r.sample_index;
  j["temperature"] = r.temperature;
  j["outcome"] = outcome_name(r.outcome);
  j["exception"] = r.exception_name ? util::OrderedJson(*r.exception_name) : util::OrderedJson(nullptr);
  j["duration_s"] = r.duration_s;
  return j;
}

ExecutionResult result_from_json(const util::Json& j) {
  ExecutionResult r;
  r.task_id = j.at("task_id").get<std::string>();
  r.sample_index = j.at("sample_index").get<std::uint32_t>();
  r.temperature = j.at("temperature").get<double>();
  const auto outcome = parse_outcome(j.at("outcome").get<std::string>());
  if (!outcome) throw InputError("unknown outcome " + j.at("outcome").dump());
  r.outcome = *outcome;
  if (j.contains("exception") && !j.at("exception").is_null()) r.exception_name = j.at("exception").get<std::string>();
  r.duration_s = j.value("duration_s", 0.0);
  return r;
}

std::vector<ExecutionResult> load_results(const std::filesystem::path& path) {
  std::vector<ExecutionResult> results;
  util::for_each_jsonl(path, [&](std::size_t line, const util::Json& j) {
    try {
      results.push_back(result_from_json(j));
    } catch (const util::Json::exception& e) {
      throw InputError(path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return results;
}

}  // namespace soeval::sandbox
