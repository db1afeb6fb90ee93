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

#include "soeval/corpus/packing.hpp"

#include <stdexcept>

#include "soeval/util/text.hpp"

namespace soeval::corpus {

WindowPacker::WindowPacker(PackOptions options, Sink sink) : options_(std::move(options)), sink_(std::move(sink)) {
  if (options_.window_size < 2) throw std::invalid_argument("window_size must be >= 2");
  if (options_.effective_min_fill() > options_.window_size) {
    throw std::invalid_argument("min_window_fill exceeds window_size");
  }
}

void WindowPacker::add(const TrainingRecord& record) {
  if (finished_) throw std::logic_error("WindowPacker::add after finish");
  if (has_records_) feed(options_.record_separator, std::nullopt);
  has_records_ = true;
  feed(record.text, record.question_id);
}

void WindowPacker::feed(std::string_view text, std::optional<std::uint64_t> question_id) {
  std::size_t i = 0;
  bool fed_any = false;
  while (i < text.size()) {
    const auto word_start = i;
    while (i < text.size() && util::is_ascii_space(text[i])) ++i;
    if (i == text.size()) {
      // Trailing whitespace belongs to the last token of this piece when there is one.
      const auto tail = text.substr(word_start);
      if (fed_any) {
        current_.text += tail;
      } else {
        pending_space_ += tail;
      }
      break;
    }
    while (i < text.size() && !util::is_ascii_space(text[i])) ++i;
    std::string token = std::move(pending_space_);
    pending_space_.clear();
    token += text.substr(word_start, i - word_start);
    push_token(std::move(token), question_id);
    fed_any = true;
  }
}

void WindowPacker::push_token(std::string token, std::optional<std::uint64_t> question_id) {
  if (current_.token_count == options_.window_size) emit();
  current_.text += token;
  ++current_.token_count;
  ++totals_.stream_tokens;
  if (question_id &&
      (current_.source_question_ids.empty() || current_.source_question_ids.back() != *question_id)) {
    current_.source_question_ids.push_back(*question_id);
  }
}

void WindowPacker::emit() {
  current_.window_index = totals_.windows++;
  totals_.packed_tokens += current_.token_count;
  sink_(std::move(current_));
  current_ = PackedWindow{};
}

PackTotals WindowPacker::finish() {
  if (finished_) return totals_;
  finished_ = true;
  if (current_.token_count > 0) {
    if (current_.token_count >= options_.effective_min_fill()) {
      emit();
    } else {
      totals_.dropped_tail_tokens += current_.token_count;
      current_ = PackedWindow{};
    }
  }
  return totals_;
}

PackResult pack_windows(std::span<const TrainingRecord> records, const PackOptions& options) {
  PackResult result;
  WindowPacker packer(options, [&](PackedWindow&& w) { result.windows.push_back(std::move(w)); });
  for (const auto& record : records) packer.add(record);
  result.totals = packer.finish();
  return result;
}

}  // namespace soeval::corpus
