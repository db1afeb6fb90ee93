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

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "soeval/metrics/report.hpp"

namespace soeval::metrics {

enum class Format { Markdown, CSV, JSON };
enum class Table { All, PassAtK, Errors, Proportions };

std::optional<Format> parse_format(std::string_view name);  // "markdown" | "csv" | "json"
std::optional<Table> parse_table(std::string_view name);    // "all" | "pass" | "errors" | "proportions"

/// Fixed-point text with round-half-to-even on the decimal value. Values within 1e-9 (relative)
/// of a tie are treated as ties, so 2.675 renders as "2.68" despite its binary representation.
std::string format_fixed(double value, int decimals);

/// Markdown: pass@k as percentages with 2 decimals (best-over-temperature and per-temperature
/// tables), per-problem S/R/T/C averages with 1 decimal, outcome proportions as percentages.
/// CSV: the same tables at full precision, one section per table. JSON: report_to_json, lossless.
std::string render_report(const SuiteReport& report, Format format, Table table = Table::All);

/// Several models in one set of tables (one row per model), grouped by suite.
std::string render_reports(std::span<const SuiteReport> reports, Format format, Table table = Table::All);

struct Comparison {
  std::string baseline_label;
  std::string treatment_label;
  eval::Suite suite = eval::Suite::HumanEval;
  PercentChange change;
};

std::string render_comparison(std::span<const Comparison> comparisons, Format format);

}  // namespace soeval::metrics
