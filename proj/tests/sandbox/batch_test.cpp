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
#include <atomic>
#include <chrono>
#include <thread>

#include <gtest/gtest.h>

#include "soeval/sandbox/sandbox.hpp"
#include "test_support.hpp"

namespace soeval::sandbox {
namespace {

std::vector<ExecJob> fixture_jobs() {
  std::vector<ExecJob> jobs;
  const auto expected = util::read_json_file(testing::fixture("executor/expected.json"));
  std::uint32_t i = 0;
  for (const auto& [name, _] : expected.items()) {
    jobs.push_back({{name, 0.2, i++}, testing::slurp(testing::fixture("executor/" + name))});
  }
  std::reverse(jobs.begin(), jobs.end());
  return jobs;
}

TEST(Batch, InjectedHarnessFaultIsIsolated) {
  std::vector<ExecJob> jobs;
  for (std::uint32_t i = 0; i < 6; ++i) jobs.push_back({{"t", 0.2, i}, "x"});
  const JobRunner runner = [](const ExecJob& job) -> ProgramRun {
    if (job.key.sample_index == 3) throw HarnessError("cannot spawn");
    return ProgramRun{Outcome::Correct, std::nullopt, 0.01, {}};
  };
  for (int workers : {1, 4}) {
    const auto batch = run_batch(jobs, runner, workers);
    EXPECT_EQ(batch.results.size(), 5u);
    ASSERT_EQ(batch.harness_errors.size(), 1u);
    EXPECT_EQ(batch.harness_errors[0].key.sample_index, 3u);
    EXPECT_EQ(batch.harness_errors[0].message, "cannot spawn");
  }
}

TEST(Batch, ResultsSortedByKey) {
  std::vector<ExecJob> jobs;
  for (double t : {0.8, 0.2, 0.6}) {
    for (std::uint32_t i : {2u, 0u, 1u}) jobs.push_back({{i % 2 ? "b" : "a", t, i}, ""});
  }
  const JobRunner runner = [](const ExecJob&) { return ProgramRun{}; };
  const auto batch = run_batch(jobs, runner, 3);
  ASSERT_EQ(batch.results.size(), jobs.size());
  EXPECT_TRUE(std::is_sorted(batch.results.begin(), batch.results.end(),
                             [](const auto& x, const auto& y) { return x.key() < y.key(); }));
}

TEST(Batch, BoundedConcurrency) {
  std::vector<ExecJob> jobs;
  for (std::uint32_t i = 0; i < 16; ++i) jobs.push_back({{"t", 0.0, i}, ""});
  std::atomic<int> live{0};
  std::atomic<int> peak{0};
  const JobRunner runner = [&](const ExecJob&) {
    const int now = ++live;
    int seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
    --live;
    return ProgramRun{};
  };
  run_batch(jobs, runner, 3);
  EXPECT_LE(peak.load(), 3);
  EXPECT_THROW(run_batch(jobs, runner, 0), std::invalid_argument);
}

TEST(Batch, SandboxWorkersOneAndEightAgree) {
  ExecLimits limits;
  limits.wall_timeout_s = 1.0;
  const Sandbox box(Interpreter::locate(SOEVAL_PYTHON_EXE), limits);
  const auto jobs = fixture_jobs();
  const auto one = run_batch(jobs, box, 1);
  const auto eight = run_batch(jobs, box, 8);
  ASSERT_EQ(one.results.size(), jobs.size());
  ASSERT_EQ(eight.results.size(), jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    EXPECT_EQ(one.results[i].key(), eight.results[i].key());
    EXPECT_EQ(one.results[i].outcome, eight.results[i].outcome) << one.results[i].task_id;
    EXPECT_EQ(one.results[i].exception_name, eight.results[i].exception_name);
  }
}

}  // namespace
}  // namespace soeval::sandbox
