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
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "soeval/metrics/pass_at_k.hpp"
#include "soeval/metrics/report.hpp"

namespace soeval::metrics {
namespace {

std::string join_missing(const std::vector<std::string>& missing) {
  std::string msg = "incomplete results; missing " + std::to_string(missing.size()) + " sample(s):";
  const std::size_t shown = std::min<std::size_t>(missing.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) msg += " " + missing[i];
  if (missing.size() > shown) msg += " ... and " + std::to_string(missing.size() - shown) + " more";
  return msg;
}

std::string temp_label(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

}  // namespace

std::vector<std::uint64_t> default_ks(eval::Suite suite) {
  if (suite == eval::Suite::HumanEval) return {1, 10, 100};
  return {1, 10, 80};
}

void OutcomeCounts::add(sandbox::Outcome o) {
  switch (o) {
    case sandbox::Outcome::SyntaxError: ++syntax_error; break;
    case sandbox::Outcome::RuntimeError: ++runtime_error; break;
    case sandbox::Outcome::TestFailure: ++test_failure; break;
    case sandbox::Outcome::Timeout: ++timeout; break;
    case sandbox::Outcome::Correct: ++correct; break;
  }
}

ClassAverages ClassAverages::folded() const {
  ClassAverages f = *this;
  f.runtime_error += f.timeout;
  f.timeout = 0.0;
  return f;
}

IncompleteResultsError::IncompleteResultsError(std::vector<std::string> missing)
    : InputError(join_missing(missing)), missing_(std::move(missing)) {}

std::vector<TemperatureReport> aggregate_suite(std::span<const sandbox::ExecutionResult> results,
                                               std::span<const std::uint64_t> ks,
                                               std::optional<std::vector<std::string>> expected_tasks) {
  // temperature -> task -> sample index -> outcome
  std::map<double, std::map<std::string, std::map<std::uint32_t, sandbox::Outcome>>> grouped;
  std::set<std::string> tasks;
  if (expected_tasks) tasks.insert(expected_tasks->begin(), expected_tasks->end());
  for (const auto& r : results) {
    if (!grouped[r.temperature][r.task_id].emplace(r.sample_index, r.outcome).second) {
      throw InputError("duplicate result for " + eval::describe(r.key()));
    }
    if (!expected_tasks) tasks.insert(r.task_id);
  }

  std::vector<TemperatureReport> reports;
  std::vector<std::string> missing;
  for (auto& [temperature, by_task] : grouped) {
    std::uint64_t n = 0;
    for (const auto& [task, samples] : by_task) {
      n = std::max<std::uint64_t>(n, samples.empty() ? 0 : samples.rbegin()->first + 1);
    }
    TemperatureReport report;
    report.temperature = temperature;
    report.n = n;
    for (const auto& task : tasks) {
      ProblemCounts problem{task, {}};
      const auto it = by_task.find(task);
      const auto* samples = it == by_task.end() ? nullptr : &it->second;
      for (std::uint32_t i = 0; i < n; ++i) {
        if (samples) {
          if (const auto s = samples->find(i); s != samples->end()) {
            problem.counts.add(s->second);
            continue;
          }
        }
        missing.push_back(eval::describe({task, temperature, i}));
      }
      report.problems.push_back(std::move(problem));
    }
    reports.push_back(std::move(report));
  }
  if (expected_tasks) {
    for (const auto& [temperature, by_task] : grouped) {
      for (const auto& [task, samples] : by_task) {
        if (!tasks.contains(task)) {
          throw InputError("result for unknown task " + task + " at T=" + temp_label(temperature));
        }
      }
    }
  }
  if (!missing.empty()) throw IncompleteResultsError(std::move(missing));

  for (auto& report : reports) {
    for (const auto k : ks) {
      if (k > report.n) {
        throw std::domain_error("k=" + std::to_string(k) + " exceeds n=" + std::to_string(report.n) +
                                " samples at T=" + temp_label(report.temperature));
      }
      double sum = 0.0;
      for (const auto& p : report.problems) sum += pass_at_k(report.n, p.counts.correct, k);
      report.pass_at_k[k] = report.problems.empty() ? 0.0 : sum / static_cast<double>(report.problems.size());
    }
  }
  return reports;
}

std::map<std::uint64_t, BestValue> best_over_temperatures(std::span<const TemperatureReport> per_temperature) {
  if (per_temperature.empty()) throw InputError("best over temperatures: no temperature runs given");
  std::map<std::uint64_t, BestValue> best;
  for (const auto& [k, value] : per_temperature.front().pass_at_k) {
    best[k] = {value, per_temperature.front().temperature};
  }
  for (const auto& run : per_temperature.subspan(1)) {
    if (run.pass_at_k.size() != best.size()) throw InputError("temperature runs report different k sets");
    for (const auto& [k, value] : run.pass_at_k) {
      auto it = best.find(k);
      if (it == best.end()) throw InputError("temperature runs report different k sets");
      const bool better = value > it->second.value ||
                          (value == it->second.value && run.temperature < it->second.temperature);
      if (better) it->second = {value, run.temperature};
    }
  }
  return best;
}

ErrorBreakdown error_breakdown(std::span<const TemperatureReport> per_temperature) {
  ErrorBreakdown out;
  double cells = 0.0;
  for (const auto& run : per_temperature) {
    OutcomeCounts total;
    for (const auto& p : run.problems) {
      out.averages.syntax_error += static_cast<double>(p.counts.syntax_error);
      out.averages.runtime_error += static_cast<double>(p.counts.runtime_error);
      out.averages.test_failure += static_cast<double>(p.counts.test_failure);
      out.averages.timeout += static_cast<double>(p.counts.timeout);
      out.averages.correct += static_cast<double>(p.counts.correct);
      total.syntax_error += p.counts.syntax_error;
      total.runtime_error += p.counts.runtime_error;
      total.test_failure += p.counts.test_failure;
      total.timeout += p.counts.timeout;
      total.correct += p.counts.correct;
      cells += 1.0;
    }
    TemperatureProportions prop;
    prop.temperature = run.temperature;
    if (const auto programs = static_cast<double>(total.total()); programs > 0) {
      prop.fractions = {static_cast<double>(total.syntax_error) / programs,
                        static_cast<double>(total.runtime_error) / programs,
                        static_cast<double>(total.test_failure) / programs,
                        static_cast<double>(total.timeout) / programs, static_cast<double>(total.correct) / programs};
    }
    out.proportions.push_back(prop);
  }
  if (cells > 0) {
    out.averages.syntax_error /= cells;
    out.averages.runtime_error /= cells;
    out.averages.test_failure /= cells;
    out.averages.timeout /= cells;
    out.averages.correct /= cells;
  }
  return out;
}

PercentChange percent_change(const std::map<std::uint64_t, double>& baseline,
                             const std::map<std::uint64_t, double>& treatment, std::span<const std::uint64_t> ks) {
  PercentChange change;
  double sum = 0.0;
  for (const auto k : ks) {
    const auto b = baseline.find(k);
    const auto t = treatment.find(k);
    if (b == baseline.end() || t == treatment.end()) {
      throw InputError("percent change: k=" + std::to_string(k) + " missing from " +
                       (b == baseline.end() ? "baseline" : "treatment"));
    }
    if (b->second == 0.0) {
      change.excluded_ks.push_back(k);
      change.warnings.push_back("k=" + std::to_string(k) + " excluded: baseline pass@k is 0");
      continue;
    }
    sum += 100.0 * (t->second - b->second) / b->second;
    change.used_ks.push_back(k);
  }
  change.mean_percent = change.used_ks.empty() ? std::nan("") : sum / static_cast<double>(change.used_ks.size());
  return change;
}

void refresh_derived(SuiteReport& report) {
  std::sort(report.per_temperature.begin(), report.per_temperature.end(),
            [](const TemperatureReport& a, const TemperatureReport& b) { return a.temperature < b.temperature; });
  report.best_per_k.clear();
  if (!report.per_temperature.empty()) report.best_per_k = best_over_temperatures(report.per_temperature);
  auto breakdown = error_breakdown(report.per_temperature);
  report.error_averages = breakdown.averages;
  report.proportions = std::move(breakdown.proportions);
}

SuiteReport build_suite_report(std::span<const sandbox::ExecutionResult> results, eval::Suite suite,
                               std::string model_label, std::vector<std::uint64_t> ks,
                               std::optional<std::vector<std::string>> expected_tasks) {
  SuiteReport report;
  report.suite = suite;
  report.model_label = std::move(model_label);
  report.ks = std::move(ks);
  report.per_temperature = aggregate_suite(results, report.ks, std::move(expected_tasks));
  refresh_derived(report);
  return report;
}

SuiteReport merge_reports(std::span<const SuiteReport> reports) {
  if (reports.empty()) throw InputError("no reports to merge");
  SuiteReport merged = reports.front();
  std::set<double> temperatures;
  for (const auto& t : merged.per_temperature) temperatures.insert(t.temperature);
  for (const auto& r : reports.subspan(1)) {
    if (r.suite != merged.suite || r.model_label != merged.model_label) {
      throw InputError("cannot merge reports of different suites or models");
    }
    if (r.ks != merged.ks) throw InputError("cannot merge reports with different k sets");
    for (const auto& t : r.per_temperature) {
      if (!temperatures.insert(t.temperature).second) {
        throw InputError("temperature " + temp_label(t.temperature) + " appears in more than one report");
      }
      merged.per_temperature.push_back(t);
    }
  }
  refresh_derived(merged);
  return merged;
}

}  // namespace soeval::metrics
