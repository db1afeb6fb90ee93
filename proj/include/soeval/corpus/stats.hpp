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
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>

#include "soeval/corpus/packing.hpp"
#include "soeval/corpus/record.hpp"
#include "soeval/util/jsonl.hpp"

namespace soeval::corpus {

/// Counters gathered upstream of record building (parsing and alignment).
struct PipelineCounters {
  std::uint64_t skipped_rows = 0;
  std::uint64_t answer_count = 0;
  std::uint64_t orphan_answers = 0;
  std::uint64_t filtered_answers = 0;
  std::uint64_t unanswered_questions = 0;
};

struct VariantStats {
  std::uint64_t records = 0;
  std::uint64_t approx_tokens = 0;
  std::uint64_t windows = 0;
  std::uint64_t dropped_tail_tokens = 0;

  bool operator==(const VariantStats&) const = default;
};

struct CorpusStats {
  std::uint64_t question_count = 0;
  std::uint64_t answer_count = 0;
  std::uint64_t record_count = 0;
  std::uint64_t total_approx_tokens = 0;
  std::uint64_t skipped_rows = 0;
  std::uint64_t orphan_answers = 0;
  std::uint64_t filtered_answers = 0;
  std::uint64_t unanswered_questions = 0;
  std::map<std::string, VariantStats> variants;

  bool operator==(const CorpusStats&) const = default;
};

/// Exact per-record token counts from an external tokenizer, keyed by (question_id, variant).
/// File format: JSONL lines {"question_id": int, "variant": str, "tokens": int}.
class ExternalTokenCounts {
 public:
  static ExternalTokenCounts load(const std::filesystem::path& path);
  void set(std::uint64_t question_id, Variant variant, std::uint64_t tokens);
  std::optional<std::uint64_t> lookup(std::uint64_t question_id, Variant variant) const;
  std::size_t size() const { return counts_.size(); }

 private:
  std::map<std::pair<std::uint64_t, Variant>, std::uint64_t> counts_;
};

/// Token count for one record: the external count when present, else the whitespace proxy.
std::uint64_t record_tokens(const TrainingRecord& record, const ExternalTokenCounts* external);

/// Exact counts over a record set. question_count counts distinct question ids.
CorpusStats corpus_stats(std::span<const TrainingRecord> records, const PipelineCounters& counters,
                         const ExternalTokenCounts* external = nullptr);

util::OrderedJson stats_to_json(const CorpusStats& stats);
CorpusStats stats_from_json(const util::Json& json);

}  // namespace soeval::corpus
