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

#include "soeval/app/manifest.hpp"

#include <chrono>
#include <ctime>

#include "soeval/util/hash.hpp"

namespace soeval::app {

void RunManifest::add_input(const std::filesystem::path& path) {
  input_sha256[path.string()] = util::sha256_file(path);
}

std::string RunManifest::run_id() const {
  util::OrderedJson identity;
  identity["command"] = command;
  identity["config"] = config;
  identity["interpreter_version"] = interpreter_version;
  // Paths vary between machines; digests do not.
  auto digests = util::OrderedJson::array();
  for (const auto& [_, digest] : input_sha256) digests.push_back(digest);
  identity["inputs"] = std::move(digests);
  return util::sha256_hex(identity.dump()).substr(0, 16);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

util::OrderedJson manifest_to_json(const RunManifest& manifest) {
  util::OrderedJson j;
  j["run_id"] = manifest.run_id();
  j["command"] = manifest.command;
  j["config"] = manifest.config;
  j["interpreter_version"] = manifest.interpreter_version;
  auto inputs = util::OrderedJson::object();
  for (const auto& [path, digest] : manifest.input_sha256) inputs[path] = digest;
  j["input_sha256"] = std::move(inputs);
  j["started_at"] = manifest.started_at;
  j["finished_at"] = manifest.finished_at;
  return j;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  util::write_json_file(path, manifest_to_json(manifest));
}

}  // namespace soeval::app
