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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace soeval::sandbox {

/// Failure of the execution machinery itself (spawn, temp dir, pipes). Never a program outcome.
class HarnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProcessSpec {
  std::vector<std::string> argv;  // argv[0] must be an absolute or relative path, not a bare name
  std::filesystem::path cwd;
  std::optional<std::uint64_t> address_space_bytes;
  std::optional<std::uint64_t> file_size_bytes;
  double wall_timeout_s = 10.0;
  bool capture_stdout = false;
  std::size_t stderr_tail_bytes = 2048;
};

struct ProcessOutcome {
  bool timed_out = false;
  bool exited = false;  // normal exit (vs killed by a signal)
  int exit_code = 0;
  int term_signal = 0;
  double duration_s = 0.0;
  std::string stdout_data;  // only when capture_stdout
  std::string stderr_tail;
  std::string result_channel;  // whatever the child wrote to fd 3
};

/// Runs one child in its own process group with stdin from /dev/null, the result channel on fd 3
/// and the given resource limits. On wall-timeout the whole group is SIGKILLed; stragglers left
/// by a child that exited are killed too. Throws HarnessError if the child cannot be started.
ProcessOutcome run_process(const ProcessSpec& spec);

/// Fresh directory under `root`, removed recursively on destruction.
class ScopedTempDir {
 public:
  explicit ScopedTempDir(const std::filesystem::path& root);
  ~ScopedTempDir();
  ScopedTempDir(const ScopedTempDir&) = delete;
  ScopedTempDir& operator=(const ScopedTempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace soeval::sandbox
