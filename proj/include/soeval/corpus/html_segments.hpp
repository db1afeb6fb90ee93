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

#include <string>
#include <string_view>
#include <vector>

namespace soeval::corpus {

enum class SegmentKind { NL, Code };

struct Segment {
  SegmentKind kind;
  std::string text;

  bool operator==(const Segment&) const = default;
};

/// Alternation of natural-language and code text extracted from one HTML body.
/// No two consecutive NL segments; texts carry no tags and no entities.
using SegmentList = std::vector<Segment>;

struct StripOptions {
  /// Treat inline <code> spans outside <pre> as code segments too. Off by default: only
  /// <pre> blocks form the code modality.
  bool inline_code_is_code = false;
};

/// Removes all markup from a StackOverflow body.
///
/// Contents of <pre> blocks become code segments verbatim (entities decoded, tags dropped,
/// whitespace untouched). Everything else becomes NL text: whitespace runs collapse to one
/// space, block elements (p, li, headings, br, ...) end a line, and a line never starts or ends
/// with a space. <script>/<style> contents and comments are discarded. Never fails.
SegmentList strip_html(std::string_view html, const StripOptions& options = {});

/// Decodes HTML character references (named subset plus numeric). Unknown names pass through.
std::string unescape_html(std::string_view text);

}  // namespace soeval::corpus
