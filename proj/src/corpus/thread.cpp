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

#include "soeval/corpus/thread.hpp"

#include <algorithm>
#include <stdexcept>

#include "soeval/util/text.hpp"

namespace soeval::corpus {

TagFilter TagFilter::parse(const std::vector<std::string>& predicates) {
  TagFilter filter;
  for (const auto& raw : predicates) {
    if (raw.empty()) continue;
    if (raw.back() == '*') {
      filter.prefixes_.push_back(util::to_lower_ascii(std::string_view(raw).substr(0, raw.size() - 1)));
    } else {
      filter.exact_.push_back(util::to_lower_ascii(raw));
    }
  }
  return filter;
}

TagFilter TagFilter::python_default() { return parse({"python", "python*"}); }

bool TagFilter::matches(const std::vector<std::string>& tags) const {
  for (const auto& tag : tags) {
    for (const auto& e : exact_) {
      if (tag == e) return true;
    }
    for (const auto& p : prefixes_) {
      if (tag.starts_with(p)) return true;
    }
  }
  return false;
}

std::vector<std::string> TagFilter::describe() const {
  std::vector<std::string> out = exact_;
  for (const auto& p : prefixes_) out.push_back(p + "*");
  return out;
}

ThreadAligner::ThreadAligner(TagFilter filter) : filter_(std::move(filter)) {
  if (filter_.empty()) throw std::invalid_argument("tag filter must contain at least one predicate");
}

void ThreadAligner::add(RawPost post) {
  if (post.is_question()) {
    if (matched_.contains(post.id) || rejected_questions_.contains(post.id)) {
      ++counters_.duplicate_ids;
      return;
    }
    if (!filter_.matches(post.tags)) {
      rejected_questions_.insert(post.id);
      if (auto it = pending_answers_.find(post.id); it != pending_answers_.end()) {
        counters_.answers_filtered += it->second.size();
        pending_answers_.erase(it);
      }
      return;
    }
    QAThread thread;
    if (auto it = pending_answers_.find(post.id); it != pending_answers_.end()) {
      thread.answers = std::move(it->second);
      pending_answers_.erase(it);
    }
    const auto id = post.id;
    thread.question = std::move(post);
    matched_.emplace(id, std::move(thread));
    return;
  }

  if (!seen_answers_.insert(post.id).second) {
    ++counters_.duplicate_ids;
    return;
  }
  const auto parent = *post.parent_id;
  if (rejected_questions_.contains(parent)) {
    ++counters_.answers_filtered;
    return;
  }
  if (auto it = matched_.find(parent); it != matched_.end()) {
    it->second.answers.push_back(std::move(post));
    return;
  }
  pending_answers_[parent].push_back(std::move(post));
}

std::vector<QAThread> ThreadAligner::finish() {
  for (auto& [parent, answers] : pending_answers_) counters_.answers_orphaned += answers.size();
  pending_answers_.clear();

  std::vector<QAThread> threads;
  threads.reserve(matched_.size());
  for (auto& [id, thread] : matched_) {
    ++counters_.questions_matched;
    if (thread.answers.empty()) {
      ++counters_.questions_unanswered;
      continue;
    }
    counters_.answers_aligned += thread.answers.size();
    threads.push_back(sort_answers(std::move(thread)));
  }
  matched_.clear();
  return threads;
}

std::vector<QAThread> filter_and_align(std::span<const RawPost> posts, const TagFilter& filter,
                                       AlignCounters* counters) {
  ThreadAligner aligner(filter);
  for (const auto& post : posts) aligner.add(post);
  auto threads = aligner.finish();
  if (counters) *counters = aligner.counters();
  return threads;
}

QAThread sort_answers(QAThread thread) {
  const auto accepted = thread.question.accepted_answer_id;
  std::sort(thread.answers.begin(), thread.answers.end(), [&](const RawPost& a, const RawPost& b) {
    const bool a_acc = accepted && a.id == *accepted;
    const bool b_acc = accepted && b.id == *accepted;
    if (a_acc != b_acc) return a_acc;
    if (a.score != b.score) return a.score > b.score;
    return created_before(a, b);
  });
  return thread;
}

}  // namespace soeval::corpus
