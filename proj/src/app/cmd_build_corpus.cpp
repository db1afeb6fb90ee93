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

#include <array>
#include <fstream>
#include <istream>
#include <streambuf>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <zlib.h>

#include "soeval/app/commands.hpp"
#include "soeval/app/manifest.hpp"
#include "soeval/util/error.hpp"

namespace soeval::app {
namespace {

// gzread passes uncompressed files through unchanged, so one reader covers both.
class GzStreamBuf : public std::streambuf {
 public:
  explicit GzStreamBuf(const std::filesystem::path& path) : file_(gzopen(path.c_str(), "rb")) {
    if (!file_) throw InputError("cannot open dump '" + path.string() + "'");
    gzbuffer(file_, 1 << 17);
    path_ = path.string();
  }
  ~GzStreamBuf() override {
    if (file_) gzclose(file_);
  }
  GzStreamBuf(const GzStreamBuf&) = delete;
  GzStreamBuf& operator=(const GzStreamBuf&) = delete;

 protected:
  int_type underflow() override {
    if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
    const int got = gzread(file_, buffer_.data(), static_cast<unsigned>(buffer_.size()));
    if (got < 0) {
      int code = 0;
      const char* msg = gzerror(file_, &code);
      throw InputError("read error in '" + path_ + "': " + (msg ? msg : "unknown"));
    }
    if (got == 0) return traits_type::eof();
    setg(buffer_.data(), buffer_.data(), buffer_.data() + got);
    return traits_type::to_int_type(*gptr());
  }

 private:
  gzFile file_;
  std::string path_;
  std::array<char, 1 << 16> buffer_{};
};

class GzIStream : public std::istream {
 public:
  explicit GzIStream(const std::filesystem::path& path) : std::istream(nullptr), buf_(path) { rdbuf(&buf_); }

 private:
  GzStreamBuf buf_;
};

}  // namespace

std::unique_ptr<std::istream> open_dump(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw InputError("dump not found: '" + path.string() + "'");
  return std::make_unique<GzIStream>(path);
}

corpus::CorpusOutputs cmd_build_corpus(const BuildCorpusOptions& options, Console console) {
  corpus::CorpusConfig config;
  if (options.tags.empty()) throw ConfigError("--tags needs at least one predicate");
  config.filter = corpus::TagFilter::parse(options.tags);
  config.variants.clear();
  for (const auto& name : options.variants) {
    const auto v = corpus::parse_variant(name);
    if (!v) throw ConfigError("unknown variant '" + name + "' (expected full, no_code or no_nl)");
    config.variants.push_back(*v);
  }
  config.record.separator = options.separator;
  config.record.strip.inline_code_is_code = options.inline_code_is_code;
  config.pack.window_size = options.window_size;
  config.pack.min_window_fill = options.min_window_fill;
  config.pack.record_separator = options.record_separator;
  if (options.window_size < 2) throw ConfigError("--window-size must be at least 2");
  if (options.min_window_fill && *options.min_window_fill > options.window_size) {
    throw ConfigError("--min-window-fill exceeds --window-size");
  }
  config.emit_windows = options.emit_windows;
  config.workers = options.workers;
  if (options.token_counts) {
    config.token_counts = std::make_shared<corpus::ExternalTokenCounts>(corpus::ExternalTokenCounts::load(*options.token_counts));
  }

  RunManifest manifest;
  manifest.command = "build-corpus";
  manifest.started_at = utc_timestamp();
  auto& c = manifest.config;
  c["variants"] = options.variants;
  c["tags"] = options.tags;
  c["separator"] = options.separator;
  c["inline_code_is_code"] = options.inline_code_is_code;
  c["window_size"] = options.window_size;
  c["min_window_fill"] = config.pack.effective_min_fill();
  c["record_separator"] = options.record_separator;
  c["emit_windows"] = options.emit_windows;
  c["token_counts"] = options.token_counts ? util::OrderedJson(options.token_counts->string()) : util::OrderedJson(nullptr);
  // workers is left out on purpose: output bytes do not depend on it.

  auto dump = open_dump(options.dump);
  manifest.add_input(options.dump);
  if (options.token_counts) manifest.add_input(*options.token_counts);

  auto outputs = corpus::build_corpus(*dump, config, options.out_dir);
  manifest.finished_at = utc_timestamp();
  write_manifest(options.out_dir / "manifest.json", manifest);

  const auto& s = outputs.stats;
  fmt::print(console.err, "build-corpus: {} questions, {} answers, {} records, {} tokens, {} skipped rows\n",
             s.question_count, s.answer_count, s.record_count, s.total_approx_tokens, s.skipped_rows);
  for (const auto& [variant, path] : outputs.corpus_files) fmt::print(console.err, "  wrote {}\n", path.string());
  return outputs;
}

}  // namespace soeval::app
