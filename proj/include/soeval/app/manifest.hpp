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
#include <map>
#include <string>

#include "soeval/util/jsonl.hpp"

namespace soeval::app {

/// Written beside every run's outputs. run_id is a hash of the command, effective config and
/// input checksums, so identical reruns carry the same id; only the timestamps differ.
struct RunManifest {
  std::string command;
  util::OrderedJson config = util::OrderedJson::object();
  std::string interpreter_version;  // empty when the command runs no Python
  std::map<std::string, std::string> input_sha256;  // path -> digest
  std::string started_at;
  std::string finished_at;

  void add_input(const std::filesystem::path& path);
  std::string run_id() const;
};

std::string utc_timestamp();  // 2024-01-31T12:00:00Z

util::OrderedJson manifest_to_json(const RunManifest& manifest);
void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

}  // namespace soeval::app
