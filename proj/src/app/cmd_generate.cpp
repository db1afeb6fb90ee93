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

#include <chrono>
#include <fstream>
#include <set>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "soeval/app/commands.hpp"
#include "soeval/app/gateway_client.hpp"
#include "soeval/app/manifest.hpp"
#include "soeval/eval/completions.hpp"
#include "soeval/util/error.hpp"
#include "soeval/util/hash.hpp"

namespace soeval::app {
namespace {

// Keys already on disk. A torn last line (no newline or bad JSON) is cut off; damage anywhere
// else is an error, since the file was not written by an interrupted run of this command.
std::set<eval::SampleKey> scan_existing(const std::filesystem::path& path, bool& truncated) {
  std::set<eval::SampleKey> keys;
  truncated = false;
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return keys;
  const std::string data = util::read_text_file(path);
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < data.size()) {
    ++line_no;
    const auto nl = data.find('\n', pos);
    const bool complete = nl != std::string::npos;
    const std::string_view line(data.data() + pos, (complete ? nl : data.size()) - pos);
    bool ok = complete;
    eval::Completion c;
    if (ok && line.find_first_not_of(" \t\r") != std::string_view::npos) {
      auto j = util::Json::parse(line, nullptr, false);
      ok = !j.is_discarded();
      if (ok) {
        try {
          c = eval::completion_from_json(j);
        } catch (const std::exception&) {
          ok = false;
        }
      }
      if (ok && !keys.insert(c.key()).second) {
        throw InputError(fmt::format("{}:{}: duplicate completion {}", path.string(), line_no, eval::describe(c.key())));
      }
    }
    if (!ok) {
      const bool last = !complete || nl + 1 >= data.size();
      if (!last) throw InputError(fmt::format("{}:{}: unreadable completion record", path.string(), line_no));
      std::filesystem::resize_file(path, pos);
      truncated = true;
      break;
    }
    pos = nl + 1;
  }
  return keys;
}

std::int64_t derive_seed(std::int64_t seed, const std::string& task_id, double temperature, std::uint32_t first) {
  const auto digest = util::sha256_hex(fmt::format("{}|{}|{}|{}", seed, task_id, temperature, first));
  return static_cast<std::int64_t>(std::stoull(digest.substr(0, 15), nullptr, 16));
}

}  // namespace

GenerateSummary cmd_generate(const GenerateOptions& options, Console console) {
  if (options.n == 0) throw ConfigError("--n must be positive");
  if (options.samples_per_request == 0) throw ConfigError("--samples-per-request must be positive");
  if (options.temperatures.empty()) throw ConfigError("--temperatures is empty");
  if (!(options.top_p > 0.0 && options.top_p <= 1.0)) throw ConfigError("--top-p must be in (0, 1]");
  for (double t : options.temperatures) {
    if (t < 0.0) throw ConfigError("temperatures must be non-negative");
  }

  const auto suite = options.suite ? *options.suite : eval::detect_suite(options.suite_path);
  const auto tasks = eval::load_suite(options.suite_path, suite);
  if (auto w = eval::suite_size_warning(suite, tasks.size())) fmt::print(console.err, "warning: {}\n", *w);
  const auto stops = options.stop_sequences ? *options.stop_sequences : eval::TruncationRules::defaults_for(suite).stop_sequences;

  // Fail before touching the output if the gateway is not there.
  GatewayClient client(options.gateway, options.request_timeout_s);
  const auto health = client.health();

  GenerateSummary summary;
  const auto existing = scan_existing(options.output, summary.truncated_partial_line);
  if (summary.truncated_partial_line) fmt::print(console.err, "generate: dropped a partial last line in {}\n", options.output.string());

  RunManifest manifest;
  manifest.command = "generate";
  manifest.started_at = utc_timestamp();
  auto& c = manifest.config;
  c["suite"] = eval::suite_name(suite);
  c["gateway"] = client.base_url();
  c["model"] = health.model;
  c["temperatures"] = options.temperatures;
  c["n"] = options.n;
  c["top_p"] = options.top_p;
  c["max_new_tokens"] = options.max_new_tokens;
  c["stop_sequences"] = stops;
  c["preamble"] = options.preamble;
  c["samples_per_request"] = options.samples_per_request;
  c["retries"] = options.retries;
  c["seed"] = options.seed ? util::OrderedJson(*options.seed) : util::OrderedJson(nullptr);
  manifest.add_input(options.suite_path);

  if (!options.output.parent_path().empty()) std::filesystem::create_directories(options.output.parent_path());
  std::ofstream out(options.output, std::ios::binary | std::ios::app);
  if (!out) throw InputError("cannot write " + options.output.string());

  for (const auto& task : tasks) {
    const auto prompt = eval::build_prompt(task, options.preamble);
    for (double t : options.temperatures) {
      std::vector<std::uint32_t> missing;
      for (std::uint32_t i = 0; i < options.n; ++i) {
        if (existing.count({task.task_id, t, i})) ++summary.already_present;
        else missing.push_back(i);
      }
      for (std::size_t start = 0; start < missing.size(); start += options.samples_per_request) {
        const auto count = std::min<std::size_t>(options.samples_per_request, missing.size() - start);
        GenerateRequest req;
        req.prompt = prompt;
        req.n = static_cast<std::uint32_t>(count);
        req.temperature = t;
        req.top_p = options.top_p;
        req.max_new_tokens = options.max_new_tokens;
        req.stop_sequences = stops;
        if (options.seed) req.seed = derive_seed(*options.seed, task.task_id, t, missing[start]);

        std::vector<std::string> texts;
        bool failed = false;
        for (std::uint32_t attempt = 0;; ++attempt) {
          ++summary.requests;
          try {
            texts = client.generate(req);
            break;
          } catch (const GatewayError& e) {
            if (attempt >= options.retries) {
              // A dead gateway aborts the run (what is on disk stays valid for a resume);
              // a gateway that answers with an error gets error records.
              if (e.code() == "unreachable") throw;
              fmt::print(console.err, "generate: {} T={} giving up: {}\n", task.task_id, t, e.what());
              failed = true;
              break;
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(100 * (attempt + 1)));
          }
        }
        for (std::size_t j = 0; j < count; ++j) {
          eval::Completion comp;
          comp.task_id = task.task_id;
          comp.sample_index = missing[start + j];
          comp.temperature = t;
          comp.top_p = options.top_p;
          comp.error = failed;
          if (!failed) comp.text = texts[j];
          util::write_jsonl_line(out, eval::completion_to_json(comp));
        }
        out.flush();
        if (!out) throw InputError("write failed for " + options.output.string());
        (failed ? summary.failed : summary.generated) += count;
      }
    }
  }

  manifest.finished_at = utc_timestamp();
  write_manifest(options.output.string() + ".manifest.json", manifest);
  fmt::print(console.err, "generate: {} present, {} generated, {} failed, {} requests\n", summary.already_present,
             summary.generated, summary.failed, summary.requests);
  return summary;
}

}  // namespace soeval::app
