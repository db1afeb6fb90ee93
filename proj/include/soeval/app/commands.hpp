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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "soeval/corpus/builder.hpp"
#include "soeval/eval/tasks.hpp"
#include "soeval/metrics/render.hpp"
#include "soeval/metrics/report.hpp"
#include "soeval/sandbox/sandbox.hpp"

namespace soeval::app {

/// Where commands write tables (out) and diagnostics (err).
struct Console {
  std::ostream& out;
  std::ostream& err;
};

// ---- build-corpus ---------------------------------------------------------------------------

struct BuildCorpusOptions {
  std::filesystem::path dump;  // Posts.xml, plain or gzip
  std::filesystem::path out_dir;
  std::vector<std::string> variants{"full", "no_code", "no_nl"};
  std::vector<std::string> tags{"python", "python*"};
  std::string separator = "\n";
  bool inline_code_is_code = false;
  std::uint64_t window_size = 1024;
  std::optional<std::uint64_t> min_window_fill;
  std::string record_separator = "\n<|endoftext|>\n";
  bool emit_windows = true;
  std::optional<std::filesystem::path> token_counts;
  int workers = 1;
};

corpus::CorpusOutputs cmd_build_corpus(const BuildCorpusOptions& options, Console console);

/// Opens a dump for streaming. gzip input is detected from its magic bytes.
std::unique_ptr<std::istream> open_dump(const std::filesystem::path& path);

// ---- generate -------------------------------------------------------------------------------

struct GenerateOptions {
  std::filesystem::path suite_path;
  std::optional<eval::Suite> suite;  // detected from the file when absent
  std::string gateway = "127.0.0.1:8000";
  std::vector<double> temperatures{0.2, 0.6, 0.8};
  std::uint32_t n = 200;
  double top_p = 0.95;
  std::uint32_t max_new_tokens = 300;
  std::optional<std::vector<std::string>> stop_sequences;  // suite defaults when absent
  std::string preamble;
  std::uint32_t samples_per_request = 10;
  std::uint32_t retries = 3;
  double request_timeout_s = 300.0;
  std::optional<std::int64_t> seed;
  std::filesystem::path output;
};

struct GenerateSummary {
  std::size_t already_present = 0;
  std::size_t generated = 0;
  std::size_t failed = 0;  // written with error=true after exhausting retries
  std::size_t requests = 0;
  bool truncated_partial_line = false;
};

GenerateSummary cmd_generate(const GenerateOptions& options, Console console);

// ---- eval -----------------------------------------------------------------------------------

struct EvalOptions {
  std::filesystem::path suite_path;
  std::optional<eval::Suite> suite;
  std::optional<std::filesystem::path> completions;  // required unless `canonical`
  bool canonical = false;  // evaluate each task's reference solution as one sample at T=0
  std::filesystem::path out_dir;
  sandbox::ExecLimits limits;
  std::optional<std::string> interpreter;
  int workers = 1;
  std::optional<std::vector<std::uint64_t>> ks;  // explicit ks must not exceed n
  bool allow_partial = false;
  std::string preamble;
  std::optional<std::vector<std::string>> stop_sequences;
  std::string model_label;
};

struct EvalSummary {
  metrics::SuiteReport report;
  std::size_t programs = 0;
  std::size_t harness_errors = 0;
  std::vector<std::uint64_t> dropped_ks;
};

/// Writes results.jsonl, report.json and manifest.json under out_dir. Throws HarnessError after
/// writing results if any job hit an infrastructure failure (the report would be incomplete).
EvalSummary cmd_eval(const EvalOptions& options, Console console);

// ---- report ---------------------------------------------------------------------------------

struct ReportOptions {
  std::vector<std::filesystem::path> inputs;  // report .json files or results .jsonl files
  std::optional<eval::Suite> suite;           // for .jsonl inputs whose task ids do not tell
  std::optional<std::string> label;           // label for .jsonl inputs (default: file stem)
  std::optional<std::vector<std::uint64_t>> ks;
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> compare;
  std::optional<std::vector<std::uint64_t>> compare_ks;  // default {1,10,50,80,100} where present
  metrics::Format format = metrics::Format::Markdown;
  metrics::Table table = metrics::Table::All;
  std::optional<std::filesystem::path> output;  // stdout when absent
};

/// Reports of the same model and suite at different temperatures are merged first, so three
/// single-temperature runs yield one best-over-temperature row.
std::vector<metrics::SuiteReport> load_reports(const std::vector<std::filesystem::path>& inputs,
                                               const ReportOptions& options, Console console);

std::string cmd_report(const ReportOptions& options, Console console);

// ---- stats ----------------------------------------------------------------------------------

struct StatsOptions {
  std::vector<std::filesystem::path> corpus_files;
  std::optional<std::filesystem::path> token_counts;
};

corpus::CorpusStats cmd_stats(const StatsOptions& options, Console console);

}  // namespace soeval::app
