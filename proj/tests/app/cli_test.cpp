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

#include <sstream>

#include <gtest/gtest.h>

#include "soeval/app/cli.hpp"
#include "soeval/metrics/report.hpp"
#include "soeval/util/jsonl.hpp"
#include "test_support.hpp"

namespace soeval::app {
namespace {

using soeval::testing::fixture;
using soeval::testing::TempDir;

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::size_t count_lines(const std::filesystem::path& p) {
  std::istringstream in(soeval::testing::slurp(p));
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += !line.empty();
  return n;
}

TEST(Cli, BuildCorpusAllVariants) {
  TempDir dir;
  const auto r = run({"build-corpus", "--dump", fixture("mini_posts.xml").string(), "--out", (dir / "c").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* v : {"full", "no_code", "no_nl"}) {
    EXPECT_EQ(count_lines(dir / "c" / (std::string("corpus_") + v + ".jsonl")), 4u) << v;
  }
  const auto stats = util::read_json_file(dir / "c" / "stats.json");
  EXPECT_EQ(stats["question_count"], 4);
  EXPECT_EQ(stats["answer_count"], 10);
  EXPECT_TRUE(std::filesystem::exists(dir / "c" / "manifest.json"));
}

TEST(Cli, BuildCorpusSingleVariant) {
  TempDir dir;
  const auto r = run({"build-corpus", "--dump", fixture("mini_posts.xml").string(), "--out", (dir / "c").string(),
                      "--variants", "full", "--no-windows"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "c" / "corpus_full.jsonl"));
  EXPECT_FALSE(std::filesystem::exists(dir / "c" / "corpus_no_code.jsonl"));
  EXPECT_FALSE(std::filesystem::exists(dir / "c" / "windows_full.jsonl"));
}

TEST(Cli, BuildCorpusMissingDump) {
  TempDir dir;
  const auto r = run({"build-corpus", "--dump", (dir / "nope.xml").string(), "--out", (dir / "c").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("nope.xml"), std::string::npos) << r.err;
}

TEST(Cli, StatsRecount) {
  TempDir dir;
  ASSERT_EQ(run({"build-corpus", "--dump", fixture("mini_posts.xml").string(), "--out", dir.path().string()}).code, 0);
  const auto r = run({"stats", (dir / "corpus_full.jsonl").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = util::Json::parse(r.out);
  EXPECT_EQ(j["record_count"], 4);
}

TEST(Cli, CanonicalEvalIsPerfect) {
  TempDir dir;
  for (const char* suite : {"mini_humaneval.jsonl", "mini_mbpp.jsonl"}) {
    const auto out = dir / suite;
    const auto r = run({"eval", "--tasks", fixture(suite).string(), "--canonical", "--out", out.string(), "--timeout", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto report = metrics::report_from_json(util::read_json_file(out / "report.json"));
    EXPECT_DOUBLE_EQ(report.best_per_k.at(1).value, 1.0) << suite;
    EXPECT_EQ(count_lines(out / "results.jsonl"), 5u);
  }
}

TEST(Cli, MissingCompletionsAreFatal) {
  TempDir dir;
  // two of the five tasks have completions
  std::string lines;
  for (int t = 0; t < 2; ++t) {
    lines += R"({"task_id":"HumanEval/)" + std::to_string(t) + R"(","sample_index":0,"temperature":0.2,"text":"    pass\n"})" "\n";
  }
  soeval::testing::spit(dir / "c.jsonl", lines);
  const auto r = run({"eval", "--tasks", fixture("mini_humaneval.jsonl").string(), "--completions", (dir / "c.jsonl").string(),
                      "--out", (dir / "o").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("HumanEval/4"), std::string::npos) << r.err;
  EXPECT_FALSE(std::filesystem::exists(dir / "o" / "report.json"));

  const auto partial = run({"eval", "--tasks", fixture("mini_humaneval.jsonl").string(), "--completions",
                            (dir / "c.jsonl").string(), "--out", (dir / "p").string(), "--allow-partial"});
  EXPECT_EQ(partial.code, 0) << partial.err;
}

TEST(Cli, ExplicitKAboveNIsError) {
  TempDir dir;
  const auto r = run({"eval", "--tasks", fixture("mini_humaneval.jsonl").string(), "--canonical", "--out", dir.path().string(),
                      "--ks", "1", "10"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("10"), std::string::npos) << r.err;
}

metrics::SuiteReport single_t_report(double t, double p1, const std::string& label) {
  metrics::SuiteReport r;
  r.suite = eval::Suite::HumanEval;
  r.model_label = label;
  r.ks = {1};
  metrics::TemperatureReport tr;
  tr.temperature = t;
  tr.n = 10;
  tr.problems = {{"HumanEval/0", {0, 0, 10 - static_cast<std::uint64_t>(p1 * 10), 0, static_cast<std::uint64_t>(p1 * 10)}}};
  tr.pass_at_k = {{1, p1}};
  r.per_temperature = {tr};
  metrics::refresh_derived(r);
  return r;
}

TEST(Cli, ReportMergesTemperaturesAndCompares) {
  TempDir dir;
  std::vector<std::string> args = {"report"};
  int i = 0;
  for (auto [t, p] : {std::pair{0.2, 0.3}, {0.6, 0.5}, {0.8, 0.4}}) {
    const auto path = dir / ("base_" + std::to_string(i++) + ".json");
    util::write_json_file(path, metrics::report_to_json(single_t_report(t, p, "base")));
    args.push_back(path.string());
  }
  const auto r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("| base | 50.00 |"), std::string::npos) << r.out;

  util::write_json_file(dir / "a.json", metrics::report_to_json(single_t_report(0.2, 0.2, "a")));
  util::write_json_file(dir / "b.json", metrics::report_to_json(single_t_report(0.2, 0.3, "b")));
  const auto cmp = run({"report", (dir / "a.json").string(), (dir / "b.json").string(), "--compare", (dir / "a.json").string(),
                        (dir / "b.json").string(), "--compare-ks", "1"});
  ASSERT_EQ(cmp.code, 0) << cmp.err;
  EXPECT_NE(cmp.out.find("50.00"), std::string::npos) << cmp.out;

  const auto csv = run({"report", (dir / "a.json").string(), "--format", "csv", "--table", "pass"});
  ASSERT_EQ(csv.code, 0) << csv.err;
  EXPECT_EQ(csv.out.find('|'), std::string::npos);
  EXPECT_NE(csv.out.find("0.2"), std::string::npos);
}

TEST(Cli, ConfigFileAndCommandLinePrecedence) {
  TempDir dir;
  soeval::testing::spit(dir / "cfg.toml", "[build-corpus]\nvariants = [\"no_nl\"]\nno-windows = true\n");
  const auto from_cfg = run({"--config", (dir / "cfg.toml").string(), "build-corpus", "--dump", fixture("mini_posts.xml").string(),
                             "--out", (dir / "a").string()});
  ASSERT_EQ(from_cfg.code, 0) << from_cfg.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "a" / "corpus_no_nl.jsonl"));
  EXPECT_FALSE(std::filesystem::exists(dir / "a" / "corpus_full.jsonl"));

  const auto overridden = run({"--config", (dir / "cfg.toml").string(), "build-corpus", "--dump",
                               fixture("mini_posts.xml").string(), "--out", (dir / "b").string(), "--variants", "full"});
  ASSERT_EQ(overridden.code, 0) << overridden.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "b" / "corpus_full.jsonl"));
  EXPECT_FALSE(std::filesystem::exists(dir / "b" / "corpus_no_nl.jsonl"));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"build-corpus", "--dump", "x"}).code, 2);
  EXPECT_EQ(run({"report", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

}  // namespace
}  // namespace soeval::app
