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

#include "soeval/corpus/record.hpp"

#include "soeval/util/text.hpp"

namespace soeval::corpus {

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::Full: return "full";
    case Variant::NoCode: return "no_code";
    case Variant::NoNL: return "no_nl";
  }
  return "full";
}

std::optional<Variant> parse_variant(std::string_view name) {
  for (auto v : kAllVariants) {
    if (variant_name(v) == name) return v;
  }
  return std::nullopt;
}

std::string render_variant(const SegmentList& segments, Variant variant) {
  std::string out;
  bool first_code = true;
  for (const auto& seg : segments) {
    switch (variant) {
      case Variant::Full:
        out += seg.text;
        break;
      case Variant::NoCode:
        if (seg.kind == SegmentKind::NL) out += seg.text;
        break;
      case Variant::NoNL:
        if (seg.kind == SegmentKind::Code) {
          if (!first_code) out.push_back('\n');
          out += seg.text;
          first_code = false;
        }
        break;
    }
  }
  return out;
}

PreparedThread prepare_thread(const QAThread& thread, const RecordOptions& options) {
  PreparedThread prepared;
  prepared.question_id = thread.question.id;
  prepared.question_text = thread.question.title.value_or("");
  prepared.question_text += options.separator;
  prepared.question_text += render_variant(strip_html(thread.question.body_html, options.strip), Variant::Full);
  prepared.answers.reserve(thread.answers.size());
  for (const auto& answer : thread.answers) {
    prepared.answers.push_back(strip_html(answer.body_html, options.strip));
  }
  return prepared;
}

TrainingRecord build_record(const PreparedThread& thread, Variant variant, const RecordOptions& options) {
  TrainingRecord record;
  record.question_id = thread.question_id;
  record.variant = variant;
  record.text = thread.question_text;
  for (const auto& answer : thread.answers) {
    auto rendered = render_variant(answer, variant);
    if (rendered.empty()) continue;
    record.text += options.separator;
    record.text += rendered;
  }
  record.approx_tokens = util::count_words(record.text);
  return record;
}

TrainingRecord build_record(const QAThread& thread, Variant variant, const RecordOptions& options) {
  return build_record(prepare_thread(thread, options), variant, options);
}

}  // namespace soeval::corpus
