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

#include "soeval/corpus/stats.hpp"

#include <set>

#include "soeval/util/error.hpp"
#include "soeval/util/text.hpp"

namespace soeval::corpus {

ExternalTokenCounts ExternalTokenCounts::load(const std::filesystem::path& path) {
  ExternalTokenCounts counts;
  util::for_each_jsonl(path, [&](std::size_t line, const util::Json& j) {
    try {
      const auto variant = parse_variant(j.at("variant").get<std::string>());
      if (!variant) throw InputError("unknown variant");
      counts.set(j.at("question_id").get<std::uint64_t>(), *variant, j.at("tokens").get<std::uint64_t>());
    } catch (const std::exception& e) {
      throw InputError(path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return counts;
}

void ExternalTokenCounts::set(std::uint64_t question_id, Variant variant, std::uint64_t tokens) {
  counts_[{question_id, variant}] = tokens;
}

std::optional<std::uint64_t> ExternalTokenCounts::lookup(std::uint64_t question_id, Variant variant) const {
  auto it = counts_.find({question_id, variant});
  if (it == counts_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t record_tokens(const TrainingRecord& record, const ExternalTokenCounts* external) {
  if (external) {
    if (auto n = external->lookup(record.question_id, record.variant)) return *n;
  }
  return util::count_words(record.text);
}

CorpusStats corpus_stats(std::span<const TrainingRecord> records, const PipelineCounters& counters,
                         const ExternalTokenCounts* external) {
  CorpusStats stats;
  std::set<std::uint64_t> questions;
  for (const auto& record : records) {
    questions.insert(record.question_id);
    const auto tokens = record_tokens(record, external);
    stats.total_approx_tokens += tokens;
    auto& v = stats.variants[std::string(variant_name(record.variant))];
    ++v.records;
    v.approx_tokens += tokens;
  }
  stats.question_count = questions.size();
  stats.record_count = records.size();
  stats.answer_count = counters.answer_count;
  stats.skipped_rows = counters.skipped_rows;
  stats.orphan_answers = counters.orphan_answers;
  stats.filtered_answers = counters.filtered_answers;
  stats.unanswered_questions = counters.unanswered_questions;
  return stats;
}

util::OrderedJson stats_to_json(const CorpusStats& stats) {
  util::OrderedJson j;
  j["question_count"] = stats.question_count;
  j["answer_count"] = stats.answer_count;
  j["record_count"] = stats.record_count;
  j["total_approx_tokens"] = stats.total_approx_tokens;
  j["skipped_rows"] = stats.skipped_rows;
  j["orphan_answers"] = stats.orphan_answers;
  j["filtered_answers"] = stats.filtered_answers;
  j["unanswered_questions"] = stats.unanswered_questions;
  util::OrderedJson variants = util::OrderedJson::object();
  for (const auto& [name, v] : stats.variants) {
    variants[name] = {{"records", v.records},
                      {"approx_tokens", v.approx_tokens},
                      {"windows", v.windows},
                      {"dropped_tail_tokens", v.dropped_tail_tokens}};
  }
  j["variants"] = std::move(variants);
  return j;
}

CorpusStats stats_from_json(const util::Json& j) {
  CorpusStats stats;
  stats.question_count = j.at("question_count").get<std::uint64_t>();
  stats.answer_count = j.at("answer_count").get<std::uint64_t>();
  stats.record_count = j.at("record_count").get<std::uint64_t>();
  stats.total_approx_tokens = j.at("total_approx_tokens").get<std::uint64_t>();
  stats.skipped_rows = j.at("skipped_rows").get<std::uint64_t>();
  stats.orphan_answers = j.value("orphan_answers", std::uint64_t{0});
  stats.filtered_answers = j.value("filtered_answers", std::uint64_t{0});
  stats.unanswered_questions = j.value("unanswered_questions", std::uint64_t{0});
  if (j.contains("variants")) {
    for (const auto& [name, v] : j.at("variants").items()) {
      stats.variants[name] = VariantStats{v.at("records").get<std::uint64_t>(), v.at("approx_tokens").get<std::uint64_t>(),
                                          v.value("windows", std::uint64_t{0}),
                                          v.value("dropped_tail_tokens", std::uint64_t{0})};
    }
  }
  return stats;
}

}  // namespace soeval::corpus
