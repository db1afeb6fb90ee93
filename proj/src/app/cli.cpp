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

#include "soeval/app/cli.hpp"

#include <iostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "soeval/app/commands.hpp"
#include "soeval/app/gateway_client.hpp"
#include "soeval/util/error.hpp"
#include "soeval/util/text.hpp"

namespace soeval::app {
namespace {

std::vector<std::string> unescape_all(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& s : items) out.push_back(util::unescape_backslashes(s));
  return out;
}

std::optional<eval::Suite> suite_option(const std::string& name) {
  if (name.empty()) return std::nullopt;
  return eval::parse_suite(name);  // validated by CLI::IsMember
}

const auto kSuiteNames = std::vector<std::string>{"humaneval", "mbpp"};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Console console{out, err};
  CLI::App app{"StackOverflow corpus builder and code-generation evaluation harness", "soeval"};
  app.set_config("--config", "", "TOML/INI file of option values; flags on the command line win");
  app.require_subcommand(1);
  app.fallthrough();

  int workers = 1;
  std::optional<std::int64_t> seed;
  app.add_option("--workers", workers, "Concurrent workers for corpus building and execution")
      ->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seed", seed, "Sampling seed forwarded to the gateway");

  // build-corpus
  BuildCorpusOptions corpus_opts;
  std::string corpus_sep = "\\n";
  std::string corpus_record_sep = "\\n<|endoftext|>\\n";
  bool no_windows = false;
  auto* build = app.add_subcommand("build-corpus", "Build full/no_code/no_nl corpora and packed windows from Posts.xml");
  build->add_option("--dump", corpus_opts.dump, "Posts.xml or Posts.xml.gz")->required();
  build->add_option("--out", corpus_opts.out_dir, "Output directory")->required();
  build->add_option("--variants", corpus_opts.variants, "Variants to emit")
      ->check(CLI::IsMember({"full", "no_code", "no_nl"}))->capture_default_str();
  build->add_option("--tags", corpus_opts.tags, "Tag predicates; a trailing * matches a prefix")->capture_default_str();
  build->add_option("--separator", corpus_sep, "Separator between title, body and answers (backslash escapes)")->capture_default_str();
  build->add_flag("--inline-code-is-code", corpus_opts.inline_code_is_code, "Treat inline <code> spans as code");
  build->add_option("--window-size", corpus_opts.window_size, "Tokens per packed window")->capture_default_str();
  build->add_option("--min-window-fill", corpus_opts.min_window_fill, "Smallest trailing window kept (default window/2)");
  build->add_option("--record-separator", corpus_record_sep, "Separator between records in the packed stream")->capture_default_str();
  build->add_flag("--no-windows", no_windows, "Skip packed window output");
  build->add_option("--token-counts", corpus_opts.token_counts, "JSONL of exact per-record token counts");

  // generate
  GenerateOptions gen_opts;
  std::string gen_suite;
  std::vector<std::string> gen_stops;
  auto* gen = app.add_subcommand("generate", "Sample completions from the model gateway (resumable)");
  gen->add_option("--tasks", gen_opts.suite_path, "Suite JSONL")->required()->check(CLI::ExistingFile);
  gen->add_option("--suite", gen_suite, "Suite kind (detected when omitted)")->check(CLI::IsMember(kSuiteNames));
  gen->add_option("--gateway", gen_opts.gateway, "Gateway address host:port")->capture_default_str();
  gen->add_option("--temperatures", gen_opts.temperatures, "Temperature grid")->capture_default_str();
  gen->add_option("--n", gen_opts.n, "Samples per task and temperature")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--top-p", gen_opts.top_p, "Nucleus sampling p")->capture_default_str();
  gen->add_option("--max-new-tokens", gen_opts.max_new_tokens)->capture_default_str();
  gen->add_option("--stop", gen_stops, "Stop sequences (backslash escapes); suite defaults when omitted");
  gen->add_option("--preamble", gen_opts.preamble, "Text placed before each prompt");
  gen->add_option("--samples-per-request", gen_opts.samples_per_request)->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--retries", gen_opts.retries, "Retries per request before recording an error")->capture_default_str();
  gen->add_option("--request-timeout", gen_opts.request_timeout_s, "Seconds")->capture_default_str();
  gen->add_option("--out", gen_opts.output, "Completions JSONL (appended to when resuming)")->required();

  // eval
  EvalOptions eval_opts;
  std::string eval_suite;
  std::vector<std::string> eval_stops;
  std::vector<std::uint64_t> eval_ks;
  std::uint64_t memory_mb = eval_opts.limits.memory_cap_bytes >> 20;
  std::string python;
  auto* ev = app.add_subcommand("eval", "Execute completions in the sandbox and compute pass@k");
  ev->add_option("--tasks", eval_opts.suite_path, "Suite JSONL")->required()->check(CLI::ExistingFile);
  ev->add_option("--suite", eval_suite, "Suite kind (detected when omitted)")->check(CLI::IsMember(kSuiteNames));
  auto* comp_opt = ev->add_option("--completions", eval_opts.completions, "Completions JSONL")->check(CLI::ExistingFile);
  ev->add_flag("--canonical", eval_opts.canonical, "Evaluate the suite's reference solutions instead")->excludes(comp_opt);
  ev->add_option("--out", eval_opts.out_dir, "Output directory")->required();
  ev->add_option("--timeout", eval_opts.limits.wall_timeout_s, "Wall-clock seconds per program")->capture_default_str();
  ev->add_option("--memory-mb", memory_mb, "Address-space cap per program")->check(CLI::PositiveNumber)->capture_default_str();
  ev->add_option("--python", python, "Interpreter (default $SOEVAL_PYTHON, then python3)");
  ev->add_option("--ks", eval_ks, "k values (default: suite ks that fit under n)");
  ev->add_flag("--allow-partial", eval_opts.allow_partial, "Evaluate even if some tasks have no completions");
  ev->add_option("--preamble", eval_opts.preamble, "Preamble used at generation time (recorded)");
  ev->add_option("--stop", eval_stops, "Stop sequences (backslash escapes)");
  ev->add_option("--label", eval_opts.model_label, "Model label in the report");

  // report
  ReportOptions rep_opts;
  std::string rep_suite;
  std::string rep_format = "markdown";
  std::string rep_table = "all";
  std::vector<std::uint64_t> rep_ks;
  std::vector<std::uint64_t> rep_compare_ks;
  std::vector<std::pair<std::string, std::string>> rep_compare;
  std::string rep_label;
  auto* rep = app.add_subcommand("report", "Render report.json / results.jsonl files as tables");
  rep->add_option("inputs", rep_opts.inputs, "report .json or results .jsonl files")->check(CLI::ExistingFile);
  rep->add_option("--suite", rep_suite, "Suite for .jsonl inputs")->check(CLI::IsMember(kSuiteNames));
  rep->add_option("--label", rep_label, "Model label for .jsonl inputs");
  rep->add_option("--ks", rep_ks, "k values for .jsonl inputs");
  rep->add_option("--compare", rep_compare, "BASELINE TREATMENT: mean percent change of best pass@k");
  rep->add_option("--compare-ks", rep_compare_ks, "k values averaged by --compare");
  rep->add_option("--format", rep_format)->check(CLI::IsMember({"markdown", "md", "csv", "json"}))->capture_default_str();
  rep->add_option("--table", rep_table)->check(CLI::IsMember({"all", "pass", "errors", "proportions"}))->capture_default_str();
  rep->add_option("--output", rep_opts.output, "Write here instead of standard output");

  // stats
  StatsOptions stats_opts;
  auto* st = app.add_subcommand("stats", "Recount corpus JSONL files (answer and skip counts need the dump)");
  st->add_option("corpus", stats_opts.corpus_files, "corpus_*.jsonl files")->required()->check(CLI::ExistingFile);
  st->add_option("--token-counts", stats_opts.token_counts, "JSONL of exact per-record token counts");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build) {
      corpus_opts.separator = util::unescape_backslashes(corpus_sep);
      corpus_opts.record_separator = util::unescape_backslashes(corpus_record_sep);
      corpus_opts.emit_windows = !no_windows;
      corpus_opts.workers = workers;
      cmd_build_corpus(corpus_opts, console);
    } else if (*gen) {
      gen_opts.suite = suite_option(gen_suite);
      if (!gen_stops.empty()) gen_opts.stop_sequences = unescape_all(gen_stops);
      gen_opts.seed = seed;
      cmd_generate(gen_opts, console);
    } else if (*ev) {
      eval_opts.suite = suite_option(eval_suite);
      if (!eval_stops.empty()) eval_opts.stop_sequences = unescape_all(eval_stops);
      if (!eval_ks.empty()) eval_opts.ks = eval_ks;
      eval_opts.limits.memory_cap_bytes = memory_mb << 20;
      if (!python.empty()) eval_opts.interpreter = python;
      eval_opts.workers = workers;
      cmd_eval(eval_opts, console);
    } else if (*rep) {
      rep_opts.suite = suite_option(rep_suite);
      if (!rep_label.empty()) rep_opts.label = rep_label;
      if (!rep_ks.empty()) rep_opts.ks = rep_ks;
      if (!rep_compare_ks.empty()) rep_opts.compare_ks = rep_compare_ks;
      for (const auto& [b, t] : rep_compare) rep_opts.compare.emplace_back(b, t);
      rep_opts.format = *metrics::parse_format(rep_format);
      rep_opts.table = *metrics::parse_table(rep_table);
      cmd_report(rep_opts, console);
    } else if (*st) {
      cmd_stats(stats_opts, console);
    }
  } catch (const sandbox::HarnessError& e) {
    fmt::print(err, "soeval: harness error: {}\n", e.what());
    return 3;
  } catch (const metrics::IncompleteResultsError& e) {
    fmt::print(err, "soeval: incomplete results: {}\n", e.what());
    return 1;
  } catch (const GatewayError& e) {
    fmt::print(err, "soeval: gateway: {}\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    fmt::print(err, "soeval: {}\n", e.what());
    return 1;
  }
  return 0;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace soeval::app
