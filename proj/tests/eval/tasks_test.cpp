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

#include <gtest/gtest.h>

#include "soeval/eval/tasks.hpp"
#include "soeval/util/error.hpp"
#include "test_support.hpp"

namespace soeval::eval {
namespace {

EvalTask humaneval_task() {
  EvalTask t;
  t.task_id = "HumanEval/0";
  t.suite = Suite::HumanEval;
  t.prompt_body = "def inc(x):\n    \"\"\"Add one.\"\"\"\n";
  t.test_code = "def check(candidate):\n    assert candidate(1) == 2\n";
  t.entry_point = "inc";
  return t;
}

EvalTask mbpp_task() {
  EvalTask t;
  t.task_id = "2";
  t.suite = Suite::MBPP;
  t.prompt_body = "Write a function to add two numbers.";
  t.test_list = {"assert add(1, 2) == 3", "assert add(0, 0) == 0", "assert add(-1, 1) == 0"};
  return t;
}

TEST(LoadSuite, HumanEvalFixture) {
  const auto tasks = load_suite(testing::fixture("mini_humaneval.jsonl"), Suite::HumanEval);
  ASSERT_EQ(tasks.size(), 5u);
  EXPECT_EQ(tasks[0].task_id, "HumanEval/0");
  EXPECT_EQ(tasks[0].entry_point, "add_one");
  EXPECT_NE(tasks[0].test_code.find("def check(candidate)"), std::string::npos);
  EXPECT_EQ(tasks[0].reference_solution, "    return x + 1\n");
}

TEST(LoadSuite, MbppFixtureIntegerIds) {
  const auto tasks = load_suite(testing::fixture("mini_mbpp.jsonl"), Suite::MBPP);
  ASSERT_EQ(tasks.size(), 5u);
  EXPECT_EQ(tasks[0].task_id, "11");
  EXPECT_EQ(tasks[0].test_list.size(), 3u);
  EXPECT_EQ(detect_suite(testing::fixture("mini_mbpp.jsonl")), Suite::MBPP);
  EXPECT_EQ(detect_suite(testing::fixture("mini_humaneval.jsonl")), Suite::HumanEval);
}

TEST(LoadSuite, MissingFieldNamesLine) {
  testing::TempDir dir;
  testing::spit(dir / "bad.jsonl",
                "{\"task_id\": \"a\", \"prompt\": \"p\", \"test\": \"t\", \"entry_point\": \"f\", \"canonical_solution\": \"\"}\n"
                "{\"task_id\": \"b\", \"prompt\": \"p\", \"entry_point\": \"f\"}\n");
  try {
    load_suite(dir / "bad.jsonl", Suite::HumanEval);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("test"), std::string::npos) << e.what();
  }
}

TEST(LoadSuite, SizeWarning) {
  EXPECT_TRUE(suite_size_warning(Suite::HumanEval, 5));
  EXPECT_FALSE(suite_size_warning(Suite::HumanEval, 164));
  EXPECT_FALSE(suite_size_warning(Suite::MBPP, 500));
}

TEST(BuildPrompt, HumanEvalIdentity) {
  const auto t = humaneval_task();
  EXPECT_EQ(build_prompt(t), t.prompt_body);
}

TEST(BuildPrompt, MbppListsAssertsInOrder) {
  const auto p = build_prompt(mbpp_task());
  EXPECT_EQ(p, "Write a function to add two numbers.\nassert add(1, 2) == 3\nassert add(0, 0) == 0\nassert add(-1, 1) == 0\n");
}

TEST(BuildPrompt, Preamble) {
  const auto p = build_prompt(humaneval_task(), "Solve the following problem:");
  EXPECT_EQ(p.rfind("Solve the following problem:\n", 0), 0u);
}

TEST(Truncate, EarliestStopWins) {
  const std::vector<std::string> stops = {"\ndef ", "\nprint("};
  EXPECT_EQ(truncate_completion("a\nprint(1)\ndef g():", stops), "a");
  EXPECT_EQ(truncate_completion("no stop here", stops), "no stop here");
  EXPECT_EQ(truncate_completion("", stops), "");
}

TEST(Truncate, PrefixUntouched) {
  const std::string text = "    x = 'def'\n    return x\nclass A: pass";
  const auto rules = TruncationRules::defaults_for(Suite::HumanEval);
  const auto cut = truncate_completion(text, rules.stop_sequences);
  EXPECT_EQ(cut, "    x = 'def'\n    return x");
  EXPECT_EQ(text.compare(0, cut.size(), cut), 0);
}

TEST(Assemble, HumanEvalDropsExtraDef) {
  const auto program = assemble_program(humaneval_task(), "    return x + 1\ndef extra():", TruncationRules::defaults_for(Suite::HumanEval));
  EXPECT_NE(program.find("return x + 1"), std::string::npos);
  EXPECT_EQ(program.find("extra"), std::string::npos);
  EXPECT_EQ(program,
            "def inc(x):\n    \"\"\"Add one.\"\"\"\n    return x + 1\ndef check(candidate):\n    assert candidate(1) == 2\n\ncheck(inc)\n");
}

TEST(Assemble, MbppFunctionThenAsserts) {
  const auto program = assemble_program(mbpp_task(), "def add(a, b):\n    return a + b", TruncationRules::defaults_for(Suite::MBPP));
  EXPECT_EQ(program, "def add(a, b):\n    return a + b\nassert add(1, 2) == 3\nassert add(0, 0) == 0\nassert add(-1, 1) == 0\n");
}

TEST(Assemble, MbppKeepsHelperDefsButStopsAtAsserts) {
  const auto program = assemble_program(mbpp_task(), "def h(a):\n    return a\ndef add(a, b):\n    return h(a) + b\nassert add(1, 1) == 2",
                                        TruncationRules::defaults_for(Suite::MBPP));
  EXPECT_NE(program.find("def add"), std::string::npos);
  EXPECT_EQ(program.find("assert add(1, 1)"), std::string::npos);
}

TEST(Assemble, Deterministic) {
  const auto rules = TruncationRules::defaults_for(Suite::HumanEval);
  EXPECT_EQ(assemble_program(humaneval_task(), "pass", rules), assemble_program(humaneval_task(), "pass", rules));
}

}  // namespace
}  // namespace soeval::eval
