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
#include <random>

#include <gtest/gtest.h>

#include "soeval/corpus/thread.hpp"

namespace soeval::corpus {
namespace {

RawPost question(std::uint64_t id, std::vector<std::string> tags, std::optional<std::uint64_t> accepted = {}) {
  RawPost p;
  p.id = id;
  p.kind = PostKind::Question;
  p.title = "q" + std::to_string(id);
  p.tags = std::move(tags);
  p.accepted_answer_id = accepted;
  return p;
}

RawPost answer(std::uint64_t id, std::uint64_t parent, std::int64_t score, std::string date = "2020-01-01") {
  RawPost p;
  p.id = id;
  p.kind = PostKind::Answer;
  p.parent_id = parent;
  p.score = score;
  p.creation_date = std::move(date);
  return p;
}

std::vector<std::uint64_t> ids(const QAThread& t) {
  std::vector<std::uint64_t> out;
  for (const auto& a : t.answers) out.push_back(a.id);
  return out;
}

TEST(TagFilter, DefaultMatchesPythonFamily) {
  const auto f = TagFilter::python_default();
  EXPECT_TRUE(f.matches({"python"}));
  EXPECT_TRUE(f.matches({"list", "python-3.x"}));
  EXPECT_TRUE(f.matches({"python-2.7"}));
  EXPECT_FALSE(f.matches({"java"}));
  EXPECT_FALSE(f.matches({"cpython"}));
  EXPECT_FALSE(f.matches({}));
}

TEST(TagFilter, ParseExactAndPrefix) {
  const auto f = TagFilter::parse({"pandas", "django*"});
  EXPECT_TRUE(f.matches({"pandas"}));
  EXPECT_FALSE(f.matches({"pandas-groupby"}));
  EXPECT_TRUE(f.matches({"django-models"}));
  EXPECT_FALSE(TagFilter::parse({}).matches({"python"}));
}

TEST(Align, PythonQuestionWithTwoAnswers) {
  std::vector<RawPost> posts = {answer(3, 1, 1), question(1, {"python", "list"}), answer(2, 1, 5)};
  const auto threads = filter_and_align(posts, TagFilter::python_default());
  ASSERT_EQ(threads.size(), 1u);
  EXPECT_EQ(threads[0].question.id, 1u);
  EXPECT_EQ(ids(threads[0]), (std::vector<std::uint64_t>{2, 3}));
}

TEST(Align, NonPythonAndUnansweredDropped) {
  std::vector<RawPost> posts = {question(1, {"java"}), answer(2, 1, 1), question(3, {"python"})};
  AlignCounters counters;
  const auto threads = filter_and_align(posts, TagFilter::python_default(), &counters);
  EXPECT_TRUE(threads.empty());
  EXPECT_EQ(counters.answers_filtered, 1u);
  EXPECT_EQ(counters.questions_unanswered, 1u);
}

TEST(Align, OrphansCountedAndOutputOrderedById) {
  std::vector<RawPost> posts = {question(30, {"python"}), answer(31, 30, 0), answer(99, 500, 0),
                                question(10, {"python"}), answer(11, 10, 0)};
  AlignCounters counters;
  const auto threads = filter_and_align(posts, TagFilter::python_default(), &counters);
  ASSERT_EQ(threads.size(), 2u);
  EXPECT_EQ(threads[0].question.id, 10u);
  EXPECT_EQ(threads[1].question.id, 30u);
  EXPECT_EQ(counters.answers_orphaned, 1u);
}

TEST(Align, EmptyFilterRejected) {
  std::vector<RawPost> posts;
  EXPECT_THROW(filter_and_align(posts, TagFilter{}), std::invalid_argument);
}

TEST(SortAnswers, AcceptedFirstThenScoreThenCreation) {
  QAThread t{question(1, {"python"}, 7), {answer(5, 1, 10, "2020-01-05"), answer(7, 1, 2), answer(9, 1, 10, "2020-01-09")}};
  EXPECT_EQ(ids(sort_answers(t)), (std::vector<std::uint64_t>{7, 5, 9}));
}

TEST(SortAnswers, NoAcceptedByScore) {
  QAThread t{question(1, {"python"}), {answer(1, 1, 3), answer(2, 1, 1), answer(3, 1, 2)}};
  EXPECT_EQ(ids(sort_answers(t)), (std::vector<std::uint64_t>{1, 3, 2}));
}

TEST(SortAnswers, MissingAcceptedIgnored) {
  QAThread t{question(1, {"python"}, 42), {answer(2, 1, 1), answer(3, 1, 4)}};
  EXPECT_EQ(ids(sort_answers(t)), (std::vector<std::uint64_t>{3, 2}));
}

TEST(SortAnswers, EqualScoreAndDateFallsBackToId) {
  QAThread t{question(1, {"python"}), {answer(14, 1, 5), answer(13, 1, 5), answer(15, 1, -1)}};
  EXPECT_EQ(ids(sort_answers(t)), (std::vector<std::uint64_t>{13, 14, 15}));
}

TEST(SortAnswers, SingleAnswerUnchanged) {
  QAThread t{question(1, {"python"}), {answer(2, 1, -3)}};
  EXPECT_EQ(ids(sort_answers(t)), std::vector<std::uint64_t>{2});
}

TEST(SortAnswers, PermutationAndIdempotentUnderShuffles) {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> score(-2, 2);
  std::uniform_int_distribution<int> day(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    QAThread t{question(1, {"python"}), {}};
    const int n = 1 + trial % 9;
    for (int i = 0; i < n; ++i) {
      t.answers.push_back(answer(100 + i, 1, score(rng), "2020-01-0" + std::to_string(day(rng))));
    }
    if (trial % 3 == 0) t.question.accepted_answer_id = 100 + trial % n;
    const auto once = sort_answers(t);
    auto shuffled = t;
    std::shuffle(shuffled.answers.begin(), shuffled.answers.end(), rng);
    EXPECT_EQ(ids(sort_answers(shuffled)), ids(once));
    EXPECT_EQ(ids(sort_answers(once)), ids(once));
    auto a = ids(once);
    auto b = ids(t);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
    if (t.question.accepted_answer_id) {
      EXPECT_EQ(once.answers.front().id, *t.question.accepted_answer_id);
    }
  }
}

}  // namespace
}  // namespace soeval::corpus
