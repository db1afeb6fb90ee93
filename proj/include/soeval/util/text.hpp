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
#include <string>
#include <string_view>
#include <vector>

namespace soeval::util {

constexpr bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

/// Whitespace-delimited word count; the default tokenizer proxy.
std::uint64_t count_words(std::string_view text);

/// Appends the UTF-8 encoding of `code_point` (invalid points become U+FFFD).
void append_utf8(std::string& out, std::uint32_t code_point);

std::vector<std::string> split(std::string_view text, char delimiter);

std::string to_lower_ascii(std::string_view text);

/// Interprets backslash escapes (\n, \t, \r, \\) so separators can be passed on a command line.
std::string unescape_backslashes(std::string_view text);

}  // namespace soeval::util
