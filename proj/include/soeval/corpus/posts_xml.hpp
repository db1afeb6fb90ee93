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
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace soeval::corpus {

enum class PostKind { Question, Answer };

/// One `<row/>` of a StackExchange Posts.xml dump (PostTypeId 1 or 2).
struct RawPost {
  std::uint64_t id = 0;
  PostKind kind = PostKind::Question;
  std::optional<std::uint64_t> parent_id;           // answers only
  std::optional<std::uint64_t> accepted_answer_id;  // questions only
  std::int64_t score = 0;
  std::optional<std::string> title;  // questions only
  std::string body_html;
  std::vector<std::string> tags;  // lowercase; questions only
  std::string creation_date;      // ISO-8601 as found in the dump, empty if absent

  bool is_question() const { return kind == PostKind::Question; }
};

/// Creation order: (timestamp, id) lexicographically. Posts without a timestamp sort first,
/// among themselves by id.
bool created_before(const RawPost& a, const RawPost& b);

/// Splits a Tags attribute in either dump convention ("<a><b>" or "|a|b|").
std::vector<std::string> parse_tags(std::string_view raw);

/// Streaming reader over a Posts.xml byte stream.
///
/// Memory is bounded by the chunk size plus the largest single row (`max_row_bytes`).
/// Rows with other PostTypeIds are ignored; rows that cannot be decoded or that violate
/// the post invariants are skipped and counted, never fatal.
class PostsXmlReader {
 public:
  explicit PostsXmlReader(std::istream& in, std::size_t max_row_bytes = std::size_t{64} << 20);

  /// Next question/answer row, or nullopt at end of stream. Throws InputError when the
  /// stream itself fails (I/O error), not for bad rows.
  std::optional<RawPost> next();

  std::uint64_t skipped_rows() const { return skipped_; }
  std::uint64_t ignored_rows() const { return ignored_; }

 private:
  bool fill();
  void compact();

  std::istream& in_;
  std::size_t max_row_bytes_;
  std::string buf_;
  std::size_t pos_ = 0;
  bool eof_ = false;
  std::uint64_t skipped_ = 0;
  std::uint64_t ignored_ = 0;
};

/// Decodes the attributes of a single `<row .../>` element into a post.
/// Returns nullopt for kinds other than question/answer; throws RowError when malformed.
class RowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
std::optional<RawPost> decode_row(std::string_view element);

/// Reads a whole dump. `skipped_rows`, when given, receives the malformed-row count.
std::vector<RawPost> parse_dump(std::istream& in, std::uint64_t* skipped_rows = nullptr);

}  // namespace soeval::corpus
