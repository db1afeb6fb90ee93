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

#include "soeval/corpus/html_segments.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <utility>

#include "soeval/util/text.hpp"

namespace soeval::corpus {
namespace {

struct NamedEntity {
  std::string_view name;
  std::uint32_t code_point;
};

// Sorted by name for binary search.
constexpr auto kEntities = std::to_array<NamedEntity>({
    {"AElig", 0xC6},   {"Aacute", 0xC1}, {"Agrave", 0xC0}, {"Alpha", 0x391},  {"Auml", 0xC4},
    {"Beta", 0x392},   {"Ccedil", 0xC7}, {"Delta", 0x394}, {"Eacute", 0xC9},  {"Gamma", 0x393},
    {"Lambda", 0x39B}, {"Ntilde", 0xD1}, {"Omega", 0x3A9}, {"Ouml", 0xD6},    {"Phi", 0x3A6},
    {"Pi", 0x3A0},     {"Psi", 0x3A8},   {"Sigma", 0x3A3}, {"Theta", 0x398},  {"Uuml", 0xDC},
    {"aacute", 0xE1},  {"acirc", 0xE2},  {"acute", 0xB4},  {"aelig", 0xE6},   {"agrave", 0xE0},
    {"alpha", 0x3B1},  {"amp", 0x26},    {"and", 0x2227},  {"apos", 0x27},    {"aring", 0xE5},
    {"asymp", 0x2248}, {"atilde", 0xE3}, {"auml", 0xE4},   {"bdquo", 0x201E}, {"beta", 0x3B2},
    {"brvbar", 0xA6},  {"bull", 0x2022}, {"ccedil", 0xE7}, {"cedil", 0xB8},   {"cent", 0xA2},
    {"chi", 0x3C7},    {"circ", 0x2C6},  {"copy", 0xA9},   {"crarr", 0x21B5}, {"curren", 0xA4},
    {"dArr", 0x21D3},  {"dagger", 0x2020}, {"darr", 0x2193}, {"deg", 0xB0},   {"delta", 0x3B4},
    {"divide", 0xF7},  {"eacute", 0xE9}, {"ecirc", 0xEA},  {"egrave", 0xE8},  {"empty", 0x2205},
    {"emsp", 0x2003},  {"ensp", 0x2002}, {"epsilon", 0x3B5}, {"equiv", 0x2261}, {"eta", 0x3B7},
    {"euml", 0xEB},    {"euro", 0x20AC}, {"exist", 0x2203}, {"forall", 0x2200}, {"frac12", 0xBD},
    {"frac14", 0xBC},  {"frac34", 0xBE}, {"gamma", 0x3B3}, {"ge", 0x2265},    {"gt", 0x3E},
    {"hArr", 0x21D4},  {"harr", 0x2194}, {"hellip", 0x2026}, {"iacute", 0xED}, {"icirc", 0xEE},
    {"iexcl", 0xA1},   {"igrave", 0xEC}, {"infin", 0x221E}, {"int", 0x222B},  {"iota", 0x3B9},
    {"iquest", 0xBF},  {"isin", 0x2208}, {"iuml", 0xEF},   {"kappa", 0x3BA},  {"lArr", 0x21D0},
    {"lambda", 0x3BB}, {"laquo", 0xAB},  {"larr", 0x2190}, {"lceil", 0x2308}, {"ldquo", 0x201C},
    {"le", 0x2264},    {"lfloor", 0x230A}, {"lowast", 0x2217}, {"lrm", 0x200E}, {"lsaquo", 0x2039},
    {"lsquo", 0x2018}, {"lt", 0x3C},     {"macr", 0xAF},   {"mdash", 0x2014}, {"micro", 0xB5},
    {"middot", 0xB7},  {"minus", 0x2212}, {"mu", 0x3BC},   {"nabla", 0x2207}, {"nbsp", 0xA0},
    {"ndash", 0x2013}, {"ne", 0x2260},   {"ni", 0x220B},   {"not", 0xAC},     {"notin", 0x2209},
    {"ntilde", 0xF1},  {"nu", 0x3BD},    {"oacute", 0xF3}, {"ocirc", 0xF4},   {"ograve", 0xF2},
    {"omega", 0x3C9},  {"oplus", 0x2295}, {"or", 0x2228},  {"ordf", 0xAA},    {"ordm", 0xBA},
    {"oslash", 0xF8},  {"otilde", 0xF5}, {"otimes", 0x2297}, {"ouml", 0xF6},  {"para", 0xB6},
    {"part", 0x2202},  {"permil", 0x2030}, {"perp", 0x22A5}, {"phi", 0x3C6},  {"pi", 0x3C0},
    {"plusmn", 0xB1},  {"pound", 0xA3},  {"prime", 0x2032}, {"prod", 0x220F}, {"prop", 0x221D},
    {"psi", 0x3C8},    {"quot", 0x22},   {"rArr", 0x21D2}, {"radic", 0x221A}, {"raquo", 0xBB},
    {"rarr", 0x2192},  {"rceil", 0x2309}, {"rdquo", 0x201D}, {"reg", 0xAE},  {"rfloor", 0x230B},
    {"rho", 0x3C1},    {"rlm", 0x200F},  {"rsaquo", 0x203A}, {"rsquo", 0x2019}, {"sbquo", 0x201A},
    {"sdot", 0x22C5},  {"sect", 0xA7},   {"shy", 0xAD},    {"sigma", 0x3C3},  {"sim", 0x223C},
    {"sub", 0x2282},   {"sube", 0x2286}, {"sum", 0x2211},  {"sup", 0x2283},   {"sup1", 0xB9},
    {"sup2", 0xB2},    {"sup3", 0xB3},   {"supe", 0x2287}, {"szlig", 0xDF},   {"tau", 0x3C4},
    {"there4", 0x2234}, {"theta", 0x3B8}, {"thinsp", 0x2009}, {"times", 0xD7}, {"trade", 0x2122},
    {"uArr", 0x21D1},  {"uacute", 0xFA}, {"uarr", 0x2191}, {"ucirc", 0xFB},   {"ugrave", 0xF9},
    {"uml", 0xA8},     {"upsilon", 0x3C5}, {"uuml", 0xFC}, {"xi", 0x3BE},     {"yacute", 0xFD},
    {"yen", 0xA5},     {"yuml", 0xFF},   {"zeta", 0x3B6},  {"zwj", 0x200D},   {"zwnj", 0x200C},
});

static_assert(std::is_sorted(kEntities.begin(), kEntities.end(),
                             [](const NamedEntity& a, const NamedEntity& b) { return a.name < b.name; }));

const NamedEntity* find_entity(std::string_view name) {
  auto it = std::lower_bound(kEntities.begin(), kEntities.end(), name,
                             [](const NamedEntity& e, std::string_view n) { return e.name < n; });
  return (it != kEntities.end() && it->name == name) ? &*it : nullptr;
}

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_alnum(char c) { return is_alpha(c) || (c >= '0' && c <= '9'); }

bool is_block(std::string_view tag) {
  static constexpr std::array<std::string_view, 26> kBlocks = {
      "address", "article", "blockquote", "br", "dd", "div", "dl", "dt", "footer",
      "h1", "h2", "h3", "h4", "h5", "h6", "header", "hr", "li", "ol", "p",
      "pre", "section", "table", "td", "tr", "ul"};
  return std::find(kBlocks.begin(), kBlocks.end(), tag) != kBlocks.end();
}

struct Tag {
  std::string name;  // lowercase
  bool closing = false;
  std::size_t end = 0;  // offset one past '>'
};

// Parses a tag starting at html[pos] == '<'. Returns false if this '<' does not open markup.
// Comments, doctypes and processing instructions come back with an empty name.
bool parse_tag(std::string_view html, std::size_t pos, Tag& tag) {
  const auto rest = html.substr(pos);
  if (rest.starts_with("<!--")) {
    const auto close = html.find("-->", pos + 4);
    tag = Tag{{}, false, close == std::string_view::npos ? html.size() : close + 3};
    return true;
  }
  if (rest.size() < 2) return false;
  std::size_t i = pos + 1;
  if (html[i] == '!' || html[i] == '?') {
    const auto close = html.find('>', i);
    tag = Tag{{}, false, close == std::string_view::npos ? html.size() : close + 1};
    return true;
  }
  bool closing = false;
  if (html[i] == '/') {
    closing = true;
    ++i;
  }
  if (i >= html.size() || !is_alpha(html[i])) return false;
  const auto name_start = i;
  while (i < html.size() && (is_alnum(html[i]) || html[i] == '-' || html[i] == ':')) ++i;
  std::string name = util::to_lower_ascii(html.substr(name_start, i - name_start));
  char quote = 0;
  for (; i < html.size(); ++i) {
    const char c = html[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '>') {
      tag = Tag{std::move(name), closing, i + 1};
      return true;
    }
  }
  // Unterminated tag: swallow the remainder rather than leak markup into the text.
  tag = Tag{std::move(name), closing, html.size()};
  return true;
}

class SegmentBuilder {
 public:
  explicit SegmentBuilder(const StripOptions& options) : options_(options) {}

  void text(std::string_view raw) {
    if (raw.empty()) return;
    const auto decoded = unescape_html(raw);
    if (pre_depth_ > 0) {
      code_ += decoded;
    } else if (options_.inline_code_is_code && inline_code_depth_ > 0) {
      code_ += decoded;
    } else {
      nl_text(decoded);
    }
  }

  void start_tag(const std::string& name) {
    if (pre_depth_ > 0) {
      if (name == "pre") ++pre_depth_;
      return;
    }
    if (name == "pre") {
      boundary();
      flush_nl();
      ++pre_depth_;
      return;
    }
    if (name == "code" && options_.inline_code_is_code) {
      if (inline_code_depth_++ == 0) flush_nl();
      return;
    }
    if (inline_code_depth_ == 0 && is_block(name)) boundary();
  }

  void end_tag(const std::string& name) {
    if (pre_depth_ > 0) {
      if (name == "pre" && --pre_depth_ == 0) flush_code();
      return;
    }
    if (name == "code" && options_.inline_code_is_code && inline_code_depth_ > 0) {
      if (--inline_code_depth_ == 0) flush_code();
      return;
    }
    if (inline_code_depth_ == 0 && is_block(name)) boundary();
  }

  SegmentList finish() {
    if (pre_depth_ > 0 || inline_code_depth_ > 0) flush_code();
    flush_nl();
    return std::move(segments_);
  }

 private:
  void nl_text(std::string_view text) {
    for (char c : text) {
      if (util::is_ascii_space(c)) {
        pending_space_ = true;
        continue;
      }
      if (pending_space_ && !nl_.empty() && nl_.back() != '\n') nl_.push_back(' ');
      pending_space_ = false;
      nl_.push_back(c);
    }
  }

  void boundary() {
    pending_space_ = false;
    if (!nl_.empty() && nl_.back() != '\n') nl_.push_back('\n');
  }

  void flush_nl() {
    pending_space_ = false;
    if (nl_.empty()) return;
    if (!segments_.empty() && segments_.back().kind == SegmentKind::NL) {
      segments_.back().text += nl_;
    } else {
      segments_.push_back({SegmentKind::NL, std::move(nl_)});
    }
    nl_.clear();
  }

  void flush_code() {
    pre_depth_ = 0;
    inline_code_depth_ = 0;
    pending_space_ = false;
    if (!code_.empty()) segments_.push_back({SegmentKind::Code, std::move(code_)});
    code_.clear();
  }

  StripOptions options_;
  SegmentList segments_;
  std::string nl_;
  std::string code_;
  bool pending_space_ = false;
  int pre_depth_ = 0;
  int inline_code_depth_ = 0;
};

// Index of the case-insensitive "</name" at or after `from`, or npos.
std::size_t find_raw_text_end(std::string_view html, std::size_t from, std::string_view name) {
  for (auto p = html.find("</", from); p != std::string_view::npos; p = html.find("</", p + 2)) {
    if (util::to_lower_ascii(html.substr(p + 2, name.size())) == name) return p;
  }
  return std::string_view::npos;
}

}  // namespace

std::string unescape_html(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '&') {
      out.push_back(text[i]);
      continue;
    }
    const auto semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 32) {
      out.push_back('&');
      continue;
    }
    const auto name = text.substr(i + 1, semi - i - 1);
    if (name.size() >= 2 && name[0] == '#') {
      const bool hex = name[1] == 'x' || name[1] == 'X';
      const auto digits = name.substr(hex ? 2 : 1);
      std::uint32_t cp = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
      if (!digits.empty() && ec == std::errc{} && ptr == digits.data() + digits.size()) {
        util::append_utf8(out, cp);
        i = semi;
        continue;
      }
    } else if (const auto* entity = find_entity(name)) {
      util::append_utf8(out, entity->code_point);
      i = semi;
      continue;
    }
    out.push_back('&');
  }
  return out;
}

SegmentList strip_html(std::string_view html, const StripOptions& options) {
  SegmentBuilder builder(options);
  std::size_t text_start = 0;
  std::size_t i = 0;
  while (i < html.size()) {
    const auto lt = html.find('<', i);
    if (lt == std::string_view::npos) break;
    Tag tag;
    if (!parse_tag(html, lt, tag)) {
      i = lt + 1;
      continue;
    }
    builder.text(html.substr(text_start, lt - text_start));
    i = tag.end;
    if (!tag.closing && (tag.name == "script" || tag.name == "style")) {
      const auto close = find_raw_text_end(html, i, tag.name);
      if (close == std::string_view::npos) {
        i = html.size();
      } else {
        const auto gt = html.find('>', close);
        i = gt == std::string_view::npos ? html.size() : gt + 1;
      }
    } else if (!tag.name.empty()) {
      if (tag.closing) {
        builder.end_tag(tag.name);
      } else {
        builder.start_tag(tag.name);
      }
    }
    text_start = i;
  }
  builder.text(html.substr(std::min(text_start, html.size())));
  return builder.finish();
}

}  // namespace soeval::corpus
