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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "soeval/corpus/html_segments.hpp"
#include "soeval/corpus/thread.hpp"

namespace soeval::corpus {

/// Which answer modality survives. Question title and body always render in full.
enum class Variant { Full, NoCode, NoNL };

std::string_view variant_name(Variant v);  // "full", "no_code", "no_nl"
std::optional<Variant> parse_variant(std::string_view name);
inline constexpr Variant kAllVariants[] = {Variant::Full, Variant::NoCode, Variant::NoNL};

/// Full: every segment in order. NoCode: NL segments only. NoNL: code segments joined by '\n'.
std::string render_variant(const SegmentList& segments, Variant variant);

struct TrainingRecord {
  std::uint64_t question_id = 0;
  Variant variant = Variant::Full;
  std::string text;
  std::uint64_t approx_tokens = 0;

  bool operator==(const TrainingRecord&) const = default;
};

struct RecordOptions {
  std::string separator = "\n";
  StripOptions strip;
};

/// A thread with its HTML already segmented, so the three variants share one strip pass.
struct PreparedThread {
  std::uint64_t question_id = 0;
  std::string question_text;  // title + separator + question body (Full)
  std::vector<SegmentList> answers;
};

PreparedThread prepare_thread(const QAThread& thread, const RecordOptions& options);

/// question_text, then each non-empty rendered answer, joined by the separator. Answers that
/// render empty under the variant are left out, so a record may hold the question alone.
TrainingRecord build_record(const PreparedThread& thread, Variant variant, const RecordOptions& options);

/// Convenience over prepare_thread + build_record. `thread` must already be sorted.
TrainingRecord build_record(const QAThread& thread, Variant variant, const RecordOptions& options);

}  // namespace soeval::corpus
