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

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>

#include "soeval/app/commands.hpp"
#include "soeval/app/manifest.hpp"
#include "soeval/eval/completions.hpp"
#include "soeval/util/error.hpp"

namespace soeval::app {

EvalSummary cmd_eval(const EvalOptions& options, Console console) {
  if (options.workers < 1) throw ConfigError("--workers must be at least 1");
  if (!(options.limits.wall_timeout_s > 0.0)) throw ConfigError("--timeout must be positive");
  if (!options.canonical && !options.completions) throw ConfigError("eval needs --completions or --canonical");

  const auto suite = options.suite ? *options.suite : eval::detect_suite(options.suite_path);
  const auto tasks = eval::load_suite(options.suite_path, suite);
  if (auto w = eval::suite_size_warning(suite, tasks.size())) fmt::print(console.err, "warning: {}\n", *w);
  const auto rules = options.stop_sequences ? eval::TruncationRules{*options.stop_sequences}
                                            : eval::TruncationRules::defaults_for(suite);

  std::vector<eval::Completion> completions;
  if (options.canonical) {
    for (const auto& t : tasks) {
      eval::Completion c;
      c.task_id = t.task_id;
      c.temperature = 0.0;
      c.top_p = 1.0;
      c.text = t.reference_solution;
      completions.push_back(std::move(c));
    }
  } else {
    completions = eval::load_completions(*options.completions);
  }

  std::map<std::string, const eval::EvalTask*> by_id;
  for (const auto& t : tasks) by_id.emplace(t.task_id, &t);

  std::set<std::string> unknown;
  std::set<std::string> covered;
  std::vector<sandbox::ExecJob> jobs;
  std::map<double, std::map<std::string, std::uint64_t>> samples;  // T -> task -> count
  for (const auto& c : completions) {
    const auto it = by_id.find(c.task_id);
    if (it == by_id.end()) {
      unknown.insert(c.task_id);
      continue;
    }
    covered.insert(c.task_id);
    ++samples[c.temperature][c.task_id];
    jobs.push_back({c.key(), eval::assemble_program(*it->second, c.text, rules)});
  }
  if (!unknown.empty()) {
    fmt::print(console.err, "warning: ignoring completions for {} task id(s) not in the suite: {}\n", unknown.size(),
               fmt::join(unknown, ", "));
  }
  std::vector<std::string> missing;
  for (const auto& t : tasks) {
    if (!covered.count(t.task_id)) missing.push_back(t.task_id);
  }
  if (!missing.empty()) {
    if (!options.allow_partial) {
      throw InputError(fmt::format("completions missing for {} task(s): {} (use --allow-partial to evaluate the rest)",
                                   missing.size(), fmt::join(missing, ", ")));
    }
    fmt::print(console.err, "warning: --allow-partial: {} task(s) without completions are left out\n", missing.size());
  }
  if (jobs.empty()) throw InputError("no completions to evaluate");

  // n is the smallest per-problem sample count; every k must fit under it.
  std::uint64_t n_min = ~std::uint64_t{0};
  for (const auto& [_, per_task] : samples) {
    for (const auto& [__, count] : per_task) n_min = std::min(n_min, count);
  }
  EvalSummary summary;
  std::vector<std::uint64_t> ks;
  if (options.ks) {
    ks = *options.ks;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (auto k : ks) {
      if (k == 0) throw ConfigError("k must be positive");
      if (k > n_min) throw ConfigError(fmt::format("k={} exceeds n={} samples per problem; pass@k is undefined", k, n_min));
    }
  } else {
    for (auto k : metrics::default_ks(suite)) {
      if (k <= n_min) ks.push_back(k);
      else summary.dropped_ks.push_back(k);
    }
    if (!summary.dropped_ks.empty()) {
      fmt::print(console.err, "warning: default k {} dropped, only {} sample(s) per problem\n",
                 fmt::join(summary.dropped_ks, ","), n_min);
    }
  }

  const auto interpreter = sandbox::Interpreter::locate(options.interpreter);
  const sandbox::Sandbox box(interpreter, options.limits);

  RunManifest manifest;
  manifest.command = "eval";
  manifest.started_at = utc_timestamp();
  manifest.interpreter_version = interpreter.version;
  auto& c = manifest.config;
  c["suite"] = eval::suite_name(suite);
  c["canonical"] = options.canonical;
  c["wall_timeout_s"] = options.limits.wall_timeout_s;
  c["memory_cap_bytes"] = options.limits.memory_cap_bytes;
  c["file_size_cap_bytes"] = options.limits.file_size_cap_bytes;
  c["network"] = "denied";
  c["interpreter"] = interpreter.executable.string();
  c["ks"] = ks;
  c["allow_partial"] = options.allow_partial;
  c["preamble"] = options.preamble;
  c["stop_sequences"] = rules.stop_sequences;
  c["model_label"] = options.model_label;
  manifest.add_input(options.suite_path);
  if (options.completions && !options.canonical) manifest.add_input(*options.completions);

  fmt::print(console.err, "eval: {} programs, {} worker(s), python {}\n", jobs.size(), options.workers, interpreter.version);
  auto batch = sandbox::run_batch(jobs, box, options.workers);
  summary.programs = batch.results.size();
  summary.harness_errors = batch.harness_errors.size();

  std::filesystem::create_directories(options.out_dir);
  {
    std::ofstream out(options.out_dir / "results.jsonl", std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + (options.out_dir / "results.jsonl").string());
    for (const auto& r : batch.results) util::write_jsonl_line(out, sandbox::result_to_json(r));
    if (!out.flush()) throw InputError("write failed for " + (options.out_dir / "results.jsonl").string());
  }

  if (!batch.harness_errors.empty()) {
    for (const auto& h : batch.harness_errors) fmt::print(console.err, "harness error: {}: {}\n", eval::describe(h.key), h.message);
    manifest.finished_at = utc_timestamp();
    write_manifest(options.out_dir / "manifest.json", manifest);
    throw sandbox::HarnessError(fmt::format("{} of {} programs could not be run; no report written",
                                            batch.harness_errors.size(), jobs.size()));
  }

  std::optional<std::vector<std::string>> expected;
  if (!options.allow_partial) {
    expected.emplace();
    for (const auto& t : tasks) expected->push_back(t.task_id);
  }
  const std::string label = !options.model_label.empty() ? options.model_label
                            : options.canonical          ? "canonical"
                                                         : options.completions->stem().string();
  summary.report = metrics::build_suite_report(batch.results, suite, label, ks, expected);
  util::write_json_file(options.out_dir / "report.json", metrics::report_to_json(summary.report));
  manifest.finished_at = utc_timestamp();
  write_manifest(options.out_dir / "manifest.json", manifest);

  console.out << metrics::render_report(summary.report, metrics::Format::Markdown, metrics::Table::PassAtK);
  return summary;
}

}  // namespace soeval::app
