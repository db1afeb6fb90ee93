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

#include <random>

#include <gtest/gtest.h>

#include "soeval/metrics/pass_at_k.hpp"
#include "soeval/metrics/report.hpp"

namespace soeval::metrics {
namespace {

using sandbox::ExecutionResult;
using sandbox::Outcome;

ExecutionResult res(std::string task, double t, std::uint32_t i, Outcome o) {
  ExecutionResult r;
  r.task_id = std::move(task);
  r.temperature = t;
  r.sample_index = i;
  r.outcome = o;
  return r;
}

std::vector<ExecutionResult> with_correct(const std::string& task, double t, std::uint32_t n, std::uint32_t c) {
  std::vector<ExecutionResult> out;
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(res(task, t, i, i < c ? Outcome::Correct : Outcome::TestFailure));
  return out;
}

TEST(Aggregate, MeanOverProblems) {
  auto results = with_correct("a", 0.2, 4, 4);
  const auto b = with_correct("b", 0.2, 4, 0);
  results.insert(results.end(), b.begin(), b.end());
  const std::vector<std::uint64_t> ks = {1};
  const auto per_t = aggregate_suite(results, ks);
  ASSERT_EQ(per_t.size(), 1u);
  EXPECT_EQ(per_t[0].n, 4u);
  EXPECT_DOUBLE_EQ(per_t[0].pass_at_k.at(1), 0.5);
}

TEST(Aggregate, SingleProblemOracleValue) {
  const auto results = with_correct("a", 0.2, 5, 2);
  const std::vector<std::uint64_t> ks = {2};
  EXPECT_DOUBLE_EQ(aggregate_suite(results, ks)[0].pass_at_k.at(2), 0.7);
}

TEST(Aggregate, IncompleteListsMissingKeys) {
  auto results = with_correct("a", 0.2, 4, 1);
  results.erase(results.begin() + 2);
  const std::vector<std::uint64_t> ks = {1};
  try {
    aggregate_suite(results, ks);
    FAIL();
  } catch (const IncompleteResultsError& e) {
    ASSERT_EQ(e.missing().size(), 1u);
    EXPECT_NE(e.missing()[0].find("#2"), std::string::npos) << e.missing()[0];
  }
  const auto full = with_correct("a", 0.2, 4, 1);
  const std::vector<std::string> expected = {"a", "b"};
  EXPECT_THROW(aggregate_suite(full, ks, expected), IncompleteResultsError);
}

TEST(Aggregate, KAboveNIsError) {
  const auto results = with_correct("a", 0.2, 4, 1);
  const std::vector<std::uint64_t> ks = {5};
  EXPECT_THROW(aggregate_suite(results, ks), std::domain_error);
}

TEST(Aggregate, FoldedCountsSumToN) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> pick(0, 4);
  std::vector<ExecutionResult> results;
  for (double t : {0.2, 0.6, 0.8}) {
    for (std::string task : {"x", "y", "z"}) {
      for (std::uint32_t i = 0; i < 7; ++i) results.push_back(res(task, t, i, static_cast<Outcome>(pick(rng))));
    }
  }
  const std::vector<std::uint64_t> ks = {1, 5};
  const auto report = build_suite_report(results, eval::Suite::HumanEval, "m", ks);
  for (const auto& t : report.per_temperature) {
    for (const auto& p : t.problems) EXPECT_EQ(p.counts.total(), 7u);
  }
  const auto folded = report.error_averages.folded();
  EXPECT_NEAR(folded.syntax_error + folded.runtime_error + folded.test_failure + folded.correct, 7.0, 1e-9);
  EXPECT_EQ(folded.timeout, 0.0);
  for (const auto& p : report.proportions) EXPECT_NEAR(p.fractions.sum(), 1.0, 1e-9);
}

TEST(ErrorBreakdown, OnePerClass) {
  std::vector<ExecutionResult> results = {res("p", 0.2, 0, Outcome::SyntaxError), res("p", 0.2, 1, Outcome::RuntimeError),
                                          res("p", 0.2, 2, Outcome::TestFailure), res("p", 0.2, 3, Outcome::Correct)};
  const std::vector<std::uint64_t> ks = {1};
  const auto report = build_suite_report(results, eval::Suite::HumanEval, "m", ks);
  const auto& a = report.error_averages;
  EXPECT_EQ(a.syntax_error, 1.0);
  EXPECT_EQ(a.runtime_error, 1.0);
  EXPECT_EQ(a.test_failure, 1.0);
  EXPECT_EQ(a.correct, 1.0);
}

TEST(ErrorBreakdown, AllCorrectAndTimeoutFolding) {
  auto results = with_correct("p", 0.2, 3, 3);
  results.push_back(res("p", 0.2, 3, Outcome::Timeout));
  const std::vector<std::uint64_t> ks = {1};
  const auto report = build_suite_report(results, eval::Suite::HumanEval, "m", ks);
  EXPECT_EQ(report.error_averages.timeout, 1.0);
  EXPECT_EQ(report.error_averages.runtime_error, 0.0);
  EXPECT_EQ(report.error_averages.folded().runtime_error, 1.0);
  EXPECT_EQ(report.error_averages.correct, 3.0);
}

TemperatureReport table(double t, std::map<std::uint64_t, double> values) {
  TemperatureReport r;
  r.temperature = t;
  r.pass_at_k = std::move(values);
  return r;
}

TEST(BestOverTemperatures, MaxAndWinner) {
  std::vector<TemperatureReport> runs = {table(0.2, {{1, 0.05}}), table(0.8, {{1, 0.03}})};
  const auto best = best_over_temperatures(runs);
  EXPECT_EQ(best.at(1).value, 0.05);
  EXPECT_EQ(best.at(1).temperature, 0.2);
}

TEST(BestOverTemperatures, WinnersDifferPerK) {
  std::vector<TemperatureReport> runs = {table(0.2, {{1, 0.10}, {10, 0.20}, {100, 0.30}}),
                                         table(0.6, {{1, 0.08}, {10, 0.25}, {100, 0.33}}),
                                         table(0.8, {{1, 0.05}, {10, 0.22}, {100, 0.40}})};
  const auto best = best_over_temperatures(runs);
  EXPECT_EQ(best.at(1).temperature, 0.2);
  EXPECT_EQ(best.at(10).temperature, 0.6);
  EXPECT_EQ(best.at(100).temperature, 0.8);
  for (const auto& r : runs) {
    for (const auto& [k, v] : r.pass_at_k) EXPECT_GE(best.at(k).value, v);
  }
}

TEST(BestOverTemperatures, TiesAndErrors) {
  std::vector<TemperatureReport> runs = {table(0.6, {{1, 0.5}}), table(0.2, {{1, 0.5}})};
  EXPECT_EQ(best_over_temperatures(runs).at(1).value, 0.5);
  EXPECT_THROW(best_over_temperatures({}), InputError);
  std::vector<TemperatureReport> mismatched = {table(0.2, {{1, 0.5}}), table(0.6, {{10, 0.5}})};
  EXPECT_THROW(best_over_temperatures(mismatched), InputError);
}

TEST(PercentChange, Arithmetic) {
  const std::vector<std::uint64_t> ks = {1};
  EXPECT_DOUBLE_EQ(percent_change({{1, 2.0}}, {{1, 3.0}}, ks).mean_percent, 50.0);
  EXPECT_DOUBLE_EQ(percent_change({{1, 2.0}}, {{1, 2.0}}, ks).mean_percent, 0.0);
}

TEST(PercentChange, ZeroBaselineExcludedWithWarning) {
  const std::vector<std::uint64_t> ks = {1, 10};
  const auto pc = percent_change({{1, 0.0}, {10, 4.0}}, {{1, 1.0}, {10, 5.0}}, ks);
  EXPECT_EQ(pc.excluded_ks, std::vector<std::uint64_t>{1});
  EXPECT_EQ(pc.used_ks, std::vector<std::uint64_t>{10});
  EXPECT_EQ(pc.warnings.size(), 1u);
  EXPECT_DOUBLE_EQ(pc.mean_percent, 25.0);
  const std::vector<std::uint64_t> only_zero = {1};
  EXPECT_FALSE(percent_change({{1, 0.0}}, {{1, 1.0}}, only_zero).defined());
}

TEST(PercentChange, MissingKIsError) {
  const std::vector<std::uint64_t> ks = {1, 50};
  EXPECT_THROW(percent_change({{1, 1.0}}, {{1, 2.0}, {50, 3.0}}, ks), InputError);
}

TEST(MergeReports, ThreeSingleTemperatureRuns) {
  std::vector<SuiteReport> parts;
  const std::vector<std::uint64_t> ks = {1, 2};
  std::uint32_t c = 1;
  for (double t : {0.8, 0.2, 0.6}) {
    parts.push_back(build_suite_report(with_correct("a", t, 4, c++), eval::Suite::MBPP, "m", ks));
  }
  const auto merged = merge_reports(parts);
  ASSERT_EQ(merged.per_temperature.size(), 3u);
  EXPECT_EQ(merged.per_temperature[0].temperature, 0.2);
  EXPECT_EQ(merged.best_per_k.at(1).temperature, 0.6);  // c=3 at T=0.6
  EXPECT_DOUBLE_EQ(merged.best_per_k.at(1).value, 0.75);
  parts.push_back(parts[0]);
  EXPECT_THROW(merge_reports(parts), InputError);
}

TEST(ReportJson, RoundTripLossless) {
  std::vector<ExecutionResult> results;
  for (double t : {0.2, 0.6}) {
    for (std::uint32_t i = 0; i < 3; ++i) {
      results.push_back(res("HumanEval/0", t, i, static_cast<Outcome>((i + static_cast<int>(t * 10)) % 5)));
      results.push_back(res("HumanEval/1", t, i, Outcome::Correct));
    }
  }
  const std::vector<std::uint64_t> ks = {1, 3};
  const auto report = build_suite_report(results, eval::Suite::HumanEval, "model \"x\"", ks);
  const auto back = report_from_json(util::Json::parse(report_to_json(report).dump()));
  EXPECT_EQ(back, report);
}

}  // namespace
}  // namespace soeval::metrics
