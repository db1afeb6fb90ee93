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

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "soeval/corpus/posts_xml.hpp"

namespace soeval::corpus {

/// A question joined with its answers. Every answer's parent_id equals question.id.
struct QAThread {
  RawPost question;
  std::vector<RawPost> answers;
};

/// Disjunction of exact-tag and tag-prefix predicates.
class TagFilter {
 public:
  TagFilter() = default;

  /// "python" is an exact predicate, "python*" a prefix predicate.
  static TagFilter parse(const std::vector<std::string>& predicates);

  /// tag == "python" or tag starts with "python".
  static TagFilter python_default();

  bool matches(const std::vector<std::string>& tags) const;
  bool empty() const { return exact_.empty() && prefixes_.empty(); }
  std::vector<std::string> describe() const;

 private:
  std::vector<std::string> exact_;
  std::vector<std::string> prefixes_;
};

struct AlignCounters {
  std::uint64_t questions_matched = 0;
  std::uint64_t questions_unanswered = 0;  // matched but dropped for having no answers
  std::uint64_t answers_aligned = 0;
  std::uint64_t answers_filtered = 0;  // parent exists but failed the tag filter
  std::uint64_t answers_orphaned = 0;  // parent question never appeared
  std::uint64_t duplicate_ids = 0;
};

/// Incremental question/answer aligner. Posts may arrive in any order; only questions that pass
/// the filter and answers that may still belong to one are retained.
class ThreadAligner {
 public:
  explicit ThreadAligner(TagFilter filter);

  void add(RawPost post);

  /// Threads with >= 1 answer in ascending question id order, answers sorted by sort_answers.
  std::vector<QAThread> finish();

  const AlignCounters& counters() const { return counters_; }

 private:
  TagFilter filter_;
  std::map<std::uint64_t, QAThread> matched_;
  std::unordered_set<std::uint64_t> rejected_questions_;
  std::unordered_map<std::uint64_t, std::vector<RawPost>> pending_answers_;
  std::unordered_set<std::uint64_t> seen_answers_;
  AlignCounters counters_;
};

/// Batch form of ThreadAligner. Throws std::invalid_argument if `filter` is empty.
std::vector<QAThread> filter_and_align(std::span<const RawPost> posts, const TagFilter& filter,
                                       AlignCounters* counters = nullptr);

/// Accepted answer first (if it is among the answers), then score descending, then creation
/// order ascending, then id ascending. A permutation; idempotent.
QAThread sort_answers(QAThread thread);

}  // namespace soeval::corpus
