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

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

namespace soeval::util {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

/// Calls `fn(line_number, object)` for each non-blank line. Line numbers are 1-based.
/// Throws InputError naming the path and line on unparsable JSON.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(std::size_t, const Json&)>& fn);

/// Same as above over an already-open stream; `source_name` is used in diagnostics.
void for_each_jsonl(std::istream& in, std::string_view source_name,
                    const std::function<void(std::size_t, const Json&)>& fn);

/// Compact single-line serialization followed by '\n'. Invalid UTF-8 is replaced.
void write_jsonl_line(std::ostream& out, const OrderedJson& value);
void write_jsonl_line(std::ostream& out, const Json& value);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const OrderedJson& value);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace soeval::util
