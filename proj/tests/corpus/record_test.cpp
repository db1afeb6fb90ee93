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

#include "soeval/corpus/record.hpp"

namespace soeval::corpus {
namespace {

SegmentList sample() { return {{SegmentKind::NL, "a"}, {SegmentKind::Code, "b"}, {SegmentKind::NL, "c"}}; }

TEST(RenderVariant, Full) { EXPECT_EQ(render_variant(sample(), Variant::Full), "abc"); }
TEST(RenderVariant, NoCode) { EXPECT_EQ(render_variant(sample(), Variant::NoCode), "ac"); }
TEST(RenderVariant, NoNlWithoutCode) { EXPECT_EQ(render_variant({{SegmentKind::NL, "a"}}, Variant::NoNL), ""); }

TEST(RenderVariant, NoNlJoinsBlocksWithNewline) {
  SegmentList s = {{SegmentKind::Code, "x = 1\n"}, {SegmentKind::NL, "then"}, {SegmentKind::Code, "y = 2\n"}};
  EXPECT_EQ(render_variant(s, Variant::NoNL), "x = 1\n\ny = 2\n");
}

TEST(Variant, Names) {
  for (auto v : kAllVariants) EXPECT_EQ(parse_variant(variant_name(v)), v);
  EXPECT_FALSE(parse_variant("nocode"));
}

QAThread thread_with(std::string answer_html) {
  QAThread t;
  t.question.id = 1;
  t.question.title = "T";
  t.question.body_html = "Q";
  RawPost a;
  a.id = 2;
  a.kind = PostKind::Answer;
  a.parent_id = 1;
  a.body_html = std::move(answer_html);
  t.answers.push_back(a);
  return t;
}

TEST(BuildRecord, ThreeVariants) {
  const auto t = thread_with("a<pre>b</pre>");
  const RecordOptions opts;
  // <pre> is a block, so the prose before it ends its line
  EXPECT_EQ(build_record(t, Variant::Full, opts).text, "T\nQ\na\nb");
  EXPECT_EQ(build_record(t, Variant::NoNL, opts).text, "T\nQ\nb");
  EXPECT_EQ(build_record(t, Variant::NoCode, opts).text, "T\nQ\na\n");
}

TEST(BuildRecord, QuestionNotAblated) {
  auto t = thread_with("<p>answer</p>");
  t.question.body_html = "<p>see</p><pre><code>import os\n</code></pre>";
  const RecordOptions opts;
  for (auto v : kAllVariants) {
    EXPECT_EQ(build_record(t, v, opts).text.rfind("T\nsee\nimport os\n", 0), 0u) << variant_name(v);
  }
}

TEST(BuildRecord, EmptyAnswersStillEmitQuestion) {
  const auto t = thread_with("<p>only prose</p>");
  const auto r = build_record(t, Variant::NoNL, RecordOptions{});
  EXPECT_EQ(r.text, "T\nQ");
  EXPECT_EQ(r.question_id, 1u);
  EXPECT_EQ(r.approx_tokens, 2u);
}

TEST(BuildRecord, CustomSeparatorAndNoMarkers) {
  auto t = thread_with("x<pre>y</pre>");
  RawPost second = t.answers[0];
  second.id = 3;
  second.body_html = "z";
  t.answers.push_back(second);
  RecordOptions opts;
  opts.separator = " | ";
  EXPECT_EQ(build_record(t, Variant::Full, opts).text, "T | Q | x\ny | z");
}

}  // namespace
}  // namespace soeval::corpus
