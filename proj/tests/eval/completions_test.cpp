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

#include "soeval/eval/completions.hpp"
#include "soeval/util/error.hpp"
#include "test_support.hpp"

namespace soeval::eval {
namespace {

TEST(Completions, JsonRoundTrip) {
  Completion c;
  c.task_id = "HumanEval/3";
  c.sample_index = 17;
  c.temperature = 0.6;
  c.top_p = 0.95;
  c.text = "    return [x for x in xs]\n";
  const auto back = completion_from_json(util::Json::parse(completion_to_json(c).dump()));
  EXPECT_EQ(back.key(), c.key());
  EXPECT_EQ(back.text, c.text);
  EXPECT_DOUBLE_EQ(back.top_p, 0.95);
  EXPECT_FALSE(back.error);
}

TEST(Completions, ErrorFlagRoundTrip) {
  Completion c;
  c.task_id = "1";
  c.error = true;
  const auto j = completion_to_json(c);
  EXPECT_TRUE(j.at("error").get<bool>());
  EXPECT_TRUE(completion_from_json(util::Json::parse(j.dump())).error);
}

TEST(Completions, ReplayFixture) {
  const auto all = load_completions(testing::fixture("replay/completions.jsonl"));
  EXPECT_EQ(all.size(), 75u);
}

TEST(Completions, DuplicateKeyRejected) {
  testing::TempDir dir;
  const std::string line = "{\"task_id\": \"a\", \"sample_index\": 0, \"temperature\": 0.2, \"top_p\": 0.95, \"text\": \"x\"}\n";
  testing::spit(dir / "dup.jsonl", line + line);
  EXPECT_THROW(load_completions(dir / "dup.jsonl"), InputError);
}

TEST(SampleKey, OrderAndDescribe) {
  SampleKey a{"t", 0.2, 3};
  SampleKey b{"t", 0.2, 10};
  SampleKey c{"t", 0.6, 0};
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
  EXPECT_EQ(describe(a), "t@T=0.2#3");
}

}  // namespace
}  // namespace soeval::eval
