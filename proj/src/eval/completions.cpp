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

#include "soeval/eval/completions.hpp"

#include <cstdio>

#include "soeval/util/error.hpp"

namespace soeval::eval {

std::string describe(const SampleKey& key) {
  char temp[32];
  std::snprintf(temp, sizeof temp, "%g", key.temperature);
  return key.task_id + "@T=" + temp + "#" + std::to_string(key.sample_index);
}

util::OrderedJson completion_to_json(const Completion& c) {
  util::OrderedJson j;
  j["task_id"] = c.task_id;
  j["sample_index"] = c.sample_index;
  j["temperature"] = c.temperature;
  j["top_p"] = c.top_p;
  j["text"] = c.text;
  if (c.error) j["error"] = true;
  return j;
}

Completion completion_from_json(const util::Json& j) {
  Completion c;
  const auto& id = j.at("task_id");
  c.task_id = id.is_string() ? id.get<std::string>() : std::to_string(id.get<long long>());
  c.sample_index = j.at("sample_index").get<std::uint32_t>();
  c.temperature = j.at("temperature").get<double>();
  c.top_p = j.value("top_p", 0.95);
  c.text = j.at("text").get<std::string>();
  c.error = j.value("error", false);
  return c;
}

std::vector<Completion> load_completions(const std::filesystem::path& path) {
  std::vector<Completion> out;
  std::set<SampleKey> seen;
  util::for_each_jsonl(path, [&](std::size_t line, const util::Json& j) {
    Completion c;
    try {
      c = completion_from_json(j);
    } catch (const util::Json::exception& e) {
      throw InputError(path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
    if (!seen.insert(c.key()).second) {
      throw InputError(path.string() + ":" + std::to_string(line) + ": duplicate sample " + describe(c.key()));
    }
    out.push_back(std::move(c));
  });
  return out;
}

}  // namespace soeval::eval
