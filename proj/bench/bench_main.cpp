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

// Serial reference vs OpenMP record building, and batch execution with 1 vs N workers.
#include <random>
#include <thread>

#include <benchmark/benchmark.h>

#include "soeval/corpus/builder.hpp"
#include "soeval/sandbox/sandbox.hpp"

namespace {

using namespace soeval;

std::vector<corpus::QAThread> synthetic_threads(std::size_t count) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> answers(1, 6), score(-2, 30), lines(1, 12);
  std::vector<corpus::QAThread> threads;
  threads.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    corpus::QAThread t;
    t.question.id = i * 10 + 1;
    t.question.title = "How do I merge two dicts " + std::to_string(i) + "?";
    t.question.tags = {"python"};
    t.question.body_html = "<p>I have <code>a</code> and <code>b</code> &amp; want one dict.</p><pre><code>a = {1: 2}\nb = {3: 4}\n</code></pre>";
    const int na = answers(rng);
    for (int a = 0; a < na; ++a) {
      corpus::RawPost p;
      p.id = t.question.id + 1 + a;
      p.kind = corpus::PostKind::Answer;
      p.parent_id = t.question.id;
      p.score = score(rng);
      std::string code;
      for (int l = 0; l < lines(rng); ++l) code += "x_" + std::to_string(l) + " = {**a, **b}  # &lt;merge&gt;\n";
      p.body_html = "<p>Use unpacking, see <a href=\"https://docs.python.org\">docs</a>.</p><pre><code>" + code +
                    "</code></pre><ul><li>works in 3.5+</li><li>copies</li></ul>";
      t.answers.push_back(std::move(p));
    }
    threads.push_back(corpus::sort_answers(std::move(t)));
  }
  return threads;
}

const std::vector<corpus::Variant> kVariants(std::begin(corpus::kAllVariants), std::end(corpus::kAllVariants));

void BM_BuildRecordsSerial(benchmark::State& state) {
  const auto threads = synthetic_threads(static_cast<std::size_t>(state.range(0)));
  const corpus::RecordOptions options;
  for (auto _ : state) benchmark::DoNotOptimize(corpus::build_records_serial(threads, kVariants, options));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildRecordsSerial)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_BuildRecordsParallel(benchmark::State& state) {
  const auto threads = synthetic_threads(static_cast<std::size_t>(state.range(0)));
  const corpus::RecordOptions options;
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(corpus::build_records_parallel(threads, kVariants, options, workers));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildRecordsParallel)->Args({2000, 1})->Args({2000, 2})->Args({2000, 4})->Unit(benchmark::kMillisecond);

// Sleeping runner: models a subprocess that is mostly waiting, so workers overlap even on one core.
void BM_RunBatchSleeping(benchmark::State& state) {
  std::vector<sandbox::ExecJob> jobs;
  for (std::uint32_t i = 0; i < 32; ++i) jobs.push_back({{"t", 0.2, i}, ""});
  const sandbox::JobRunner runner = [](const sandbox::ExecJob&) {
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
    return sandbox::ProgramRun{};
  };
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sandbox::run_batch(jobs, runner, workers));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(jobs.size()));
}
BENCHMARK(BM_RunBatchSleeping)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
