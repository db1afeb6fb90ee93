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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "soeval/eval/tasks.hpp"
#include "soeval/sandbox/sandbox.hpp"
#include "soeval/util/error.hpp"
#include "soeval/util/jsonl.hpp"

namespace soeval::metrics {

/// k values reported per suite, and the set used for averaged percent changes.
std::vector<std::uint64_t> default_ks(eval::Suite suite);  // HumanEval {1,10,100}, MBPP {1,10,80}
inline const std::vector<std::uint64_t> kAveragingKs = {1, 10, 50, 80, 100};

struct OutcomeCounts {
  std::uint64_t syntax_error = 0;
  std::uint64_t runtime_error = 0;
  std::uint64_t test_failure = 0;
  std::uint64_t timeout = 0;
  std::uint64_t correct = 0;

  void add(sandbox::Outcome o);
  std::uint64_t total() const { return syntax_error + runtime_error + test_failure + timeout + correct; }
  bool operator==(const OutcomeCounts&) const = default;
};

struct ProblemCounts {
  std::string task_id;
  OutcomeCounts counts;
  bool operator==(const ProblemCounts&) const = default;
};

struct TemperatureReport {
  double temperature = 0.0;
  std::uint64_t n = 0;  // samples per problem
  std::vector<ProblemCounts> problems;
  std::map<std::uint64_t, double> pass_at_k;  // fractions in [0, 1]
  bool operator==(const TemperatureReport&) const = default;
};

struct BestValue {
  double value = 0.0;
  double temperature = 0.0;  // which run produced it
  bool operator==(const BestValue&) const = default;
};

/// Mean count (or fraction) per outcome class. Timeout is its own field; folded() moves it into
/// runtime_error, the way the error tables present it.
struct ClassAverages {
  double syntax_error = 0.0;
  double runtime_error = 0.0;
  double test_failure = 0.0;
  double timeout = 0.0;
  double correct = 0.0;

  ClassAverages folded() const;
  double sum() const { return syntax_error + runtime_error + test_failure + timeout + correct; }
  bool operator==(const ClassAverages&) const = default;
};

struct TemperatureProportions {
  double temperature = 0.0;
  ClassAverages fractions;
  bool operator==(const TemperatureProportions&) const = default;
};

struct ErrorBreakdown {
  ClassAverages averages;  // per (problem, temperature) mean counts, unfolded
  std::vector<TemperatureProportions> proportions;
};

struct SuiteReport {
  eval::Suite suite = eval::Suite::HumanEval;
  std::string model_label;
  std::vector<std::uint64_t> ks;
  std::vector<TemperatureReport> per_temperature;  // ascending temperature
  std::map<std::uint64_t, BestValue> best_per_k;
  ClassAverages error_averages;
  std::vector<TemperatureProportions> proportions;
  bool operator==(const SuiteReport&) const = default;
};

/// Raised when some (task, temperature) lacks samples; lists what is missing.
class IncompleteResultsError : public InputError {
 public:
  IncompleteResultsError(std::vector<std::string> missing);
  const std::vector<std::string>& missing() const { return missing_; }

 private:
  std::vector<std::string> missing_;
};

/// Per temperature: outcome counts per problem and suite pass@k = mean over problems of
/// pass_at_k(n, correct, k). Every (task, temperature) must hold sample indices 0..n-1 exactly
/// once, where n is the largest count seen at that temperature. Tasks default to every task id in
/// `results`; pass `expected_tasks` to also require tasks that have no results at all.
std::vector<TemperatureReport> aggregate_suite(std::span<const sandbox::ExecutionResult> results,
                                               std::span<const std::uint64_t> ks,
                                               std::optional<std::vector<std::string>> expected_tasks = std::nullopt);

/// Element-wise max over temperatures; ties keep the lowest temperature.
/// Throws InputError if empty or if the tables disagree on their k sets.
std::map<std::uint64_t, BestValue> best_over_temperatures(std::span<const TemperatureReport> per_temperature);

ErrorBreakdown error_breakdown(std::span<const TemperatureReport> per_temperature);

struct PercentChange {
  double mean_percent = 0.0;
  std::vector<std::uint64_t> used_ks;
  std::vector<std::uint64_t> excluded_ks;  // zero baseline
  std::vector<std::string> warnings;
  bool defined() const { return !used_ks.empty(); }
};

/// Mean over k of 100 * (treatment - baseline) / baseline. A k whose baseline is zero is left out
/// with a warning. Throws InputError if either table lacks a requested k.
PercentChange percent_change(const std::map<std::uint64_t, double>& baseline,
                             const std::map<std::uint64_t, double>& treatment, std::span<const std::uint64_t> ks);

SuiteReport build_suite_report(std::span<const sandbox::ExecutionResult> results, eval::Suite suite,
                               std::string model_label, std::vector<std::uint64_t> ks,
                               std::optional<std::vector<std::string>> expected_tasks = std::nullopt);

/// Recomputes best_per_k, error_averages and proportions from per_temperature.
void refresh_derived(SuiteReport& report);

/// Combines reports of one model and suite run at different temperatures (e.g. three single-T
/// runs) into one. Throws InputError on mismatched suites/labels/k sets or a repeated temperature.
SuiteReport merge_reports(std::span<const SuiteReport> reports);

util::OrderedJson report_to_json(const SuiteReport& report);
SuiteReport report_from_json(const util::Json& json);

}  // namespace soeval::metrics
