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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "soeval/corpus/record.hpp"

namespace soeval::corpus {

struct PackedWindow {
  std::uint64_t window_index = 0;
  std::string text;
  std::vector<std::uint64_t> source_question_ids;
  std::uint64_t token_count = 0;

  bool operator==(const PackedWindow&) const = default;
};

struct PackOptions {
  std::size_t window_size = 1024;
  std::optional<std::size_t> min_window_fill;  // default window_size / 2
  std::string record_separator = "\n<|endoftext|>\n";

  std::size_t effective_min_fill() const { return min_window_fill.value_or(window_size / 2); }
};

struct PackTotals {
  std::uint64_t stream_tokens = 0;
  std::uint64_t packed_tokens = 0;
  std::uint64_t dropped_tail_tokens = 0;
  std::uint64_t windows = 0;
};

/// Streams records into fixed-size token windows.
///
/// Tokens follow the whitespace proxy: a token is one word together with the whitespace in front
/// of it, so concatenating the window texts reproduces the stream minus the dropped tail. Records
/// are separated by `record_separator`, whose tokens count toward the window but belong to no
/// question. A record longer than a window spills into the next one.
class WindowPacker {
 public:
  using Sink = std::function<void(PackedWindow&&)>;

  WindowPacker(PackOptions options, Sink sink);

  void add(const TrainingRecord& record);

  /// Emits the trailing partial window if it reaches the minimum fill, otherwise drops it.
  PackTotals finish();

 private:
  void feed(std::string_view text, std::optional<std::uint64_t> question_id);
  void push_token(std::string token, std::optional<std::uint64_t> question_id);
  void emit();

  PackOptions options_;
  Sink sink_;
  PackedWindow current_;
  std::string pending_space_;
  bool has_records_ = false;
  bool finished_ = false;
  PackTotals totals_;
};

struct PackResult {
  std::vector<PackedWindow> windows;
  PackTotals totals;
};

/// Throws std::invalid_argument when window_size < 2 or the minimum fill exceeds the window.
PackResult pack_windows(std::span<const TrainingRecord> records, const PackOptions& options);

}  // namespace soeval::corpus
