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

#include <fstream>
#include <map>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>

#include "soeval/app/commands.hpp"
#include "soeval/util/error.hpp"

namespace soeval::app {
namespace {

std::optional<eval::Suite> infer_suite(std::span<const sandbox::ExecutionResult> results) {
  std::optional<eval::Suite> found;
  for (const auto& r : results) {
    eval::Suite s;
    if (r.task_id.rfind("HumanEval", 0) == 0) s = eval::Suite::HumanEval;
    else if (r.task_id.rfind("Mbpp", 0) == 0 || r.task_id.find_first_not_of("0123456789") == std::string::npos) s = eval::Suite::MBPP;
    else return std::nullopt;
    if (found && *found != s) return std::nullopt;
    found = s;
  }
  return found;
}

metrics::SuiteReport report_from_results(const std::filesystem::path& path, const ReportOptions& options, Console console) {
  const auto results = sandbox::load_results(path);
  if (results.empty()) throw InputError(path.string() + ": no results");
  auto suite = options.suite;
  if (!suite) suite = infer_suite(results);
  if (!suite) throw ConfigError(path.string() + ": cannot tell the suite from task ids; pass --suite");

  std::map<std::pair<double, std::string>, std::uint64_t> counts;
  for (const auto& r : results) ++counts[{r.temperature, r.task_id}];
  std::uint64_t n_min = ~std::uint64_t{0};
  for (const auto& [_, c] : counts) n_min = std::min(n_min, c);

  std::vector<std::uint64_t> ks;
  if (options.ks) {
    ks = *options.ks;
    for (auto k : ks) {
      if (k == 0 || k > n_min) throw ConfigError(fmt::format("{}: k={} is undefined with n={}", path.string(), k, n_min));
    }
  } else {
    std::vector<std::uint64_t> dropped;
    for (auto k : metrics::default_ks(*suite)) (k <= n_min ? ks : dropped).push_back(k);
    if (!dropped.empty()) {
      fmt::print(console.err, "warning: {}: default k {} dropped, n={}\n", path.string(), fmt::join(dropped, ","), n_min);
    }
  }
  const auto label = options.label ? *options.label : path.stem().string();
  return metrics::build_suite_report(results, *suite, label, ks);
}

std::map<std::uint64_t, double> best_values(const metrics::SuiteReport& r) {
  std::map<std::uint64_t, double> out;
  for (const auto& [k, b] : r.best_per_k) out[k] = b.value;
  return out;
}

metrics::SuiteReport load_single(const std::filesystem::path& path, const ReportOptions& options, Console console) {
  auto reports = load_reports({path}, options, console);
  if (reports.size() != 1) throw InputError(path.string() + ": expected exactly one report, found " + std::to_string(reports.size()));
  return reports.front();
}

}  // namespace

std::vector<metrics::SuiteReport> load_reports(const std::vector<std::filesystem::path>& inputs,
                                               const ReportOptions& options, Console console) {
  std::vector<metrics::SuiteReport> loaded;
  for (const auto& path : inputs) {
    if (path.extension() == ".jsonl") {
      loaded.push_back(report_from_results(path, options, console));
      continue;
    }
    const auto j = util::read_json_file(path);
    try {
      if (j.is_array()) {
        for (const auto& item : j) loaded.push_back(metrics::report_from_json(item));
      } else {
        loaded.push_back(metrics::report_from_json(j));
      }
    } catch (const util::Json::exception& e) {
      throw InputError(path.string() + ": not a report: " + e.what());
    }
  }

  // Same suite and model: treat as runs at different temperatures.
  std::vector<std::vector<metrics::SuiteReport>> groups;
  for (auto& r : loaded) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return g.front().suite == r.suite && g.front().model_label == r.model_label;
    });
    if (it == groups.end()) groups.push_back({std::move(r)});
    else it->push_back(std::move(r));
  }
  std::vector<metrics::SuiteReport> merged;
  for (auto& g : groups) merged.push_back(g.size() == 1 ? std::move(g.front()) : metrics::merge_reports(g));
  return merged;
}

std::string cmd_report(const ReportOptions& options, Console console) {
  if (options.inputs.empty() && options.compare.empty()) throw ConfigError("report needs input files or --compare");
  std::string text;
  if (!options.inputs.empty()) {
    const auto reports = load_reports(options.inputs, options, console);
    text += metrics::render_reports(reports, options.format, options.table);
  }

  if (!options.compare.empty()) {
    std::vector<metrics::Comparison> comparisons;
    for (const auto& [base_path, treat_path] : options.compare) {
      const auto base = load_single(base_path, options, console);
      const auto treat = load_single(treat_path, options, console);
      if (base.suite != treat.suite) {
        throw InputError("cannot compare " + base_path.string() + " and " + treat_path.string() + ": different suites");
      }
      const auto b = best_values(base);
      const auto t = best_values(treat);
      std::vector<std::uint64_t> ks;
      if (options.compare_ks) {
        ks = *options.compare_ks;
      } else {
        for (auto k : metrics::kAveragingKs) {
          if (b.count(k) && t.count(k)) ks.push_back(k);
        }
        if (ks.size() < metrics::kAveragingKs.size()) {
          fmt::print(console.err, "note: comparing over k {} (only ks present in both reports)\n", fmt::join(ks, ","));
        }
      }
      metrics::Comparison cmp{base.model_label, treat.model_label, base.suite, {}};
      if (!ks.empty()) cmp.change = metrics::percent_change(b, t, ks);
      comparisons.push_back(std::move(cmp));
    }
    if (!text.empty() && options.format != metrics::Format::JSON) text += "\n";
    text += metrics::render_comparison(comparisons, options.format);
  }

  if (options.output) {
    std::ofstream out(*options.output, std::ios::binary | std::ios::trunc);
    if (!(out << text)) throw InputError("cannot write " + options.output->string());
  } else {
    console.out << text;
  }
  return text;
}

}  // namespace soeval::app
