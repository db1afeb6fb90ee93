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

#include "soeval/corpus/posts_xml.hpp"

#include <charconv>
#include <unordered_map>

#include "soeval/util/error.hpp"
#include "soeval/util/text.hpp"

namespace soeval::corpus {
namespace {

constexpr std::size_t kChunkBytes = std::size_t{1} << 16;
constexpr std::string_view kRowOpen = "<row";

bool is_name_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
         c == ':' || c == '-' || c == '.';
}

std::string decode_xml_entities(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (c == '<') throw RowError("'<' inside attribute value");
    if (c != '&') {
      out.push_back(c);
      continue;
    }
    const auto semi = raw.find(';', i);
    if (semi == std::string_view::npos || semi - i > 12) throw RowError("unterminated entity");
    const auto name = raw.substr(i + 1, semi - i - 1);
    if (name == "lt") {
      out.push_back('<');
    } else if (name == "gt") {
      out.push_back('>');
    } else if (name == "amp") {
      out.push_back('&');
    } else if (name == "quot") {
      out.push_back('"');
    } else if (name == "apos") {
      out.push_back('\'');
    } else if (name.size() > 1 && name[0] == '#') {
      std::uint32_t cp = 0;
      const bool hex = name[1] == 'x' || name[1] == 'X';
      const auto digits = name.substr(hex ? 2 : 1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
      if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
        throw RowError("bad character reference");
      }
      util::append_utf8(out, cp);
    } else {
      throw RowError("unknown entity &" + std::string(name) + ";");
    }
    i = semi;
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view text, std::string_view field) {
  Int value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw RowError("non-numeric " + std::string(field));
  }
  return value;
}

std::uint64_t parse_id(std::string_view text, std::string_view field) {
  const auto value = parse_int<std::uint64_t>(text, field);
  if (value == 0) throw RowError(std::string(field) + " must be positive");
  return value;
}

// Scans from just past "<row" to the closing '>' honouring quotes. Returns the offset one past
// '>' or npos if the buffer ends first.
std::size_t find_element_end(std::string_view buf, std::size_t from) {
  char quote = 0;
  for (std::size_t i = from; i < buf.size(); ++i) {
    const char c = buf[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '>') {
      return i + 1;
    } else if (c == '<') {
      // A raw '<' outside quotes means this row never closed; let the caller resync here.
      return i;
    }
  }
  return std::string_view::npos;
}

bool row_open_at(std::string_view buf, std::size_t pos) {
  if (buf.compare(pos, kRowOpen.size(), kRowOpen) != 0) return false;
  const auto next = pos + kRowOpen.size();
  if (next >= buf.size()) return false;
  const char c = buf[next];
  return util::is_ascii_space(c) || c == '/' || c == '>';
}

}  // namespace

bool created_before(const RawPost& a, const RawPost& b) {
  if (a.creation_date != b.creation_date) return a.creation_date < b.creation_date;
  return a.id < b.id;
}

std::vector<std::string> parse_tags(std::string_view raw) {
  std::vector<std::string> tags;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tags.push_back(util::to_lower_ascii(current));
    current.clear();
  };
  for (char c : raw) {
    if (c == '<' || c == '>' || c == '|' || util::is_ascii_space(c)) {
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();
  return tags;
}

std::optional<RawPost> decode_row(std::string_view element) {
  if (element.substr(0, kRowOpen.size()) != kRowOpen) throw RowError("not a row element");
  std::unordered_map<std::string, std::string> attrs;
  std::size_t i = kRowOpen.size();
  while (true) {
    while (i < element.size() && util::is_ascii_space(element[i])) ++i;
    if (i >= element.size()) throw RowError("row not terminated");
    if (element[i] == '>' || element.substr(i, 2) == "/>") break;
    const auto name_start = i;
    while (i < element.size() && is_name_char(element[i])) ++i;
    if (i == name_start) throw RowError("bad attribute name");
    std::string name(element.substr(name_start, i - name_start));
    while (i < element.size() && util::is_ascii_space(element[i])) ++i;
    if (i >= element.size() || element[i] != '=') throw RowError("attribute without value");
    ++i;
    while (i < element.size() && util::is_ascii_space(element[i])) ++i;
    if (i >= element.size() || (element[i] != '"' && element[i] != '\'')) {
      throw RowError("unquoted attribute value");
    }
    const char quote = element[i++];
    const auto close = element.find(quote, i);
    if (close == std::string_view::npos) throw RowError("unterminated attribute value");
    auto value = decode_xml_entities(element.substr(i, close - i));
    if (!attrs.emplace(std::move(name), std::move(value)).second) throw RowError("duplicate attribute");
    i = close + 1;
  }

  auto get = [&](const char* key) -> const std::string* {
    auto it = attrs.find(key);
    return it == attrs.end() ? nullptr : &it->second;
  };

  const auto* type = get("PostTypeId");
  const auto* id = get("Id");
  if (!type) throw RowError("missing PostTypeId");
  const auto type_id = parse_int<int>(*type, "PostTypeId");
  if (type_id != 1 && type_id != 2) return std::nullopt;
  if (!id) throw RowError("missing Id");

  RawPost post;
  post.id = parse_id(*id, "Id");
  post.kind = type_id == 1 ? PostKind::Question : PostKind::Answer;
  if (const auto* score = get("Score")) post.score = parse_int<std::int64_t>(*score, "Score");
  if (const auto* body = get("Body")) post.body_html = *body;
  if (const auto* date = get("CreationDate")) post.creation_date = *date;

  if (post.kind == PostKind::Question) {
    if (get("ParentId")) throw RowError("question with ParentId");
    if (const auto* acc = get("AcceptedAnswerId")) post.accepted_answer_id = parse_id(*acc, "AcceptedAnswerId");
    if (const auto* title = get("Title")) post.title = *title;
    if (const auto* tags = get("Tags")) post.tags = parse_tags(*tags);
  } else {
    const auto* parent = get("ParentId");
    if (!parent) throw RowError("answer without ParentId");
    post.parent_id = parse_id(*parent, "ParentId");
  }
  return post;
}

PostsXmlReader::PostsXmlReader(std::istream& in, std::size_t max_row_bytes)
    : in_(in), max_row_bytes_(max_row_bytes) {
  if (!in_.good()) throw InputError("posts stream is not readable");
}

bool PostsXmlReader::fill() {
  if (eof_) return false;
  const auto old = buf_.size();
  buf_.resize(old + kChunkBytes);
  in_.read(buf_.data() + old, static_cast<std::streamsize>(kChunkBytes));
  const auto got = static_cast<std::size_t>(in_.gcount());
  buf_.resize(old + got);
  if (in_.bad()) throw InputError("read error while streaming posts");
  if (got == 0 || in_.eof()) eof_ = true;
  return got > 0;
}

void PostsXmlReader::compact() {
  if (pos_ > 0 && pos_ >= buf_.size() / 2) {
    buf_.erase(0, pos_);
    pos_ = 0;
  }
}

std::optional<RawPost> PostsXmlReader::next() {
  while (true) {
    compact();
    std::size_t start = std::string::npos;
    for (auto p = buf_.find('<', pos_); p != std::string::npos; p = buf_.find('<', p + 1)) {
      if (row_open_at(buf_, p)) {
        start = p;
        break;
      }
      // "<row" split across chunks: wait for more bytes before deciding.
      if (buf_.size() - p <= kRowOpen.size() && !eof_) break;
    }
    if (start == std::string::npos) {
      // Keep a short tail in case "<row" straddles the chunk boundary.
      const auto keep = std::min(buf_.size() - pos_, kRowOpen.size());
      pos_ = buf_.size() - keep;
      if (!fill()) {
        pos_ = buf_.size();
        return std::nullopt;
      }
      continue;
    }
    pos_ = start;

    const auto end = find_element_end(buf_, start + kRowOpen.size());
    if (end == std::string::npos) {
      if (buf_.size() - start > max_row_bytes_) {
        ++skipped_;
        pos_ = start + kRowOpen.size();
        continue;
      }
      if (!fill()) {
        // Truncated final row.
        ++skipped_;
        pos_ = buf_.size();
        return std::nullopt;
      }
      continue;
    }

    const std::string_view element(buf_.data() + start, end - start);
    pos_ = end;
    if (element.size() > max_row_bytes_ || element.back() != '>') {
      ++skipped_;
      continue;
    }
    try {
      auto post = decode_row(element);
      if (!post) {
        ++ignored_;
        continue;
      }
      return post;
    } catch (const RowError&) {
      ++skipped_;
    }
  }
}

std::vector<RawPost> parse_dump(std::istream& in, std::uint64_t* skipped_rows) {
  PostsXmlReader reader(in);
  std::vector<RawPost> posts;
  while (auto post = reader.next()) posts.push_back(std::move(*post));
  if (skipped_rows) *skipped_rows = reader.skipped_rows();
  return posts;
}

}  // namespace soeval::corpus
