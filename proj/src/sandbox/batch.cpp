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

#include <omp.h>

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "soeval/sandbox/sandbox.hpp"

namespace soeval::sandbox {
namespace {

struct Slot {
  std::optional<ExecutionResult> result;
  std::optional<HarnessFailure> failure;
};

void run_one(const ExecJob& job, const JobRunner& runner, Slot& slot) {
  try {
    const auto run = runner(job);
    ExecutionResult r;
    r.task_id = job.key.task_id;
    r.sample_index = job.key.sample_index;
    r.temperature = job.key.temperature;
    r.outcome = run.outcome;
    r.exception_name = run.exception_name;
    r.duration_s = run.outcome == Outcome::SyntaxError ? 0.0 : run.duration_s;
    r.stderr_tail = run.stderr_tail;
    slot.result = std::move(r);
  } catch (const HarnessError& e) {
    slot.failure = HarnessFailure{job.key, e.what()};
  } catch (const std::exception& e) {
    slot.failure = HarnessFailure{job.key, std::string("unexpected: ") + e.what()};
  }
}

}  // namespace

BatchResult run_batch(std::span<const ExecJob> jobs, const JobRunner& runner, int workers) {
  if (workers < 1) throw std::invalid_argument("run_batch: workers must be >= 1");
  std::vector<Slot> slots(jobs.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_one(jobs[i], runner, slots[i]);
  } else {
    const auto n = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::int64_t i = 0; i < n; ++i) {
      run_one(jobs[static_cast<std::size_t>(i)], runner, slots[static_cast<std::size_t>(i)]);
    }
  }

  BatchResult batch;
  for (auto& slot : slots) {
    if (slot.result) batch.results.push_back(std::move(*slot.result));
    if (slot.failure) batch.harness_errors.push_back(std::move(*slot.failure));
  }
  std::sort(batch.results.begin(), batch.results.end(),
            [](const ExecutionResult& a, const ExecutionResult& b) { return a.key() < b.key(); });
  std::sort(batch.harness_errors.begin(), batch.harness_errors.end(),
            [](const HarnessFailure& a, const HarnessFailure& b) { return a.key < b.key; });
  return batch;
}

BatchResult run_batch(std::span<const ExecJob> jobs, const Sandbox& sandbox, int workers) {
  return run_batch(jobs, [&sandbox](const ExecJob& job) { return sandbox.evaluate(job.source); }, workers);
}

}  // namespace soeval::sandbox
