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

#include "soeval/metrics/render.hpp"

#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

namespace soeval::metrics {
namespace {

constexpr const char* kAbsent = "---";

std::string suite_title(eval::Suite s) { return s == eval::Suite::HumanEval ? "HumanEval" : "MBPP"; }

std::string label_of(const SuiteReport& r) { return r.model_label.empty() ? "model" : r.model_label; }

std::string full(double v) { return fmt::format("{}", v); }

std::string percent(double fraction) { return format_fixed(100.0 * fraction, 2); }

std::vector<std::uint64_t> union_ks(std::span<const SuiteReport* const> group) {
  std::set<std::uint64_t> ks;
  for (const auto* r : group) {
    ks.insert(r->ks.begin(), r->ks.end());
    for (const auto& [k, _] : r->best_per_k) ks.insert(k);
  }
  return {ks.begin(), ks.end()};
}

class TableWriter {
 public:
  TableWriter(Format format, std::string& out) : format_(format), out_(out) {}

  void begin(const std::string& title, const std::vector<std::string>& header) {
    if (!out_.empty()) out_ += "\n";
    if (format_ == Format::Markdown) {
      out_ += "### " + title + "\n\n";
      row(header);
      std::string rule = "|";
      for (std::size_t i = 0; i < header.size(); ++i) rule += i == 0 ? "---|" : "---:|";
      out_ += rule + "\n";
    } else {
      out_ += "# " + title + "\n";
      row(header);
    }
  }

  void row(const std::vector<std::string>& cells) {
    if (format_ == Format::Markdown) {
      out_ += "|";
      for (const auto& c : cells) out_ += " " + c + " |";
      out_ += "\n";
      return;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ += ",";
      out_ += csv_escape(cells[i]);
    }
    out_ += "\n";
  }

 private:
  static std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string quoted = "\"";
    for (char c : cell) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }

  Format format_;
  std::string& out_;
};

void render_group(eval::Suite suite, std::span<const SuiteReport* const> group, Format format, Table table,
                  std::string& out) {
  TableWriter w(format, out);
  const bool md = format == Format::Markdown;
  const auto ks = union_ks(group);
  const auto title = suite_title(suite);

  if (table == Table::All || table == Table::PassAtK) {
    std::vector<std::string> header = {"Model"};
    for (auto k : ks) header.push_back("@" + std::to_string(k));
    w.begin(title + " pass@k (best over temperatures)", header);
    for (const auto* r : group) {
      std::vector<std::string> cells = {label_of(*r)};
      for (auto k : ks) {
        const auto it = r->best_per_k.find(k);
        cells.push_back(it == r->best_per_k.end() ? kAbsent : md ? percent(it->second.value) : full(it->second.value));
      }
      w.row(cells);
    }

    header.insert(header.begin() + 1, "T");
    w.begin(title + " pass@k per temperature", header);
    for (const auto* r : group) {
      for (const auto& t : r->per_temperature) {
        std::vector<std::string> cells = {label_of(*r), full(t.temperature)};
        for (auto k : ks) {
          const auto it = t.pass_at_k.find(k);
          cells.push_back(it == t.pass_at_k.end() ? kAbsent : md ? percent(it->second) : full(it->second));
        }
        w.row(cells);
      }
    }
  }

  if (table == Table::All || table == Table::Errors) {
    w.begin(title + " mean programs per problem by outcome", {"Model", "S", "R", "T", "C"});
    for (const auto* r : group) {
      const auto f = r->error_averages.folded();
      auto cell = [&](double v) { return md ? format_fixed(v, 1) : full(v); };
      w.row({label_of(*r), cell(f.syntax_error), cell(f.runtime_error), cell(f.test_failure), cell(f.correct)});
    }
  }

  if (table == Table::All || table == Table::Proportions) {
    w.begin(title + " outcome proportions per temperature",
            {"Model", "T", "syntax_error", "runtime_error", "test_failure", "correct"});
    for (const auto* r : group) {
      for (const auto& p : r->proportions) {
        const auto f = p.fractions.folded();
        auto cell = [&](double v) { return md ? percent(v) : full(v); };
        w.row({label_of(*r), full(p.temperature), cell(f.syntax_error), cell(f.runtime_error),
               cell(f.test_failure), cell(f.correct)});
      }
    }
  }
}

}  // namespace

std::optional<Format> parse_format(std::string_view name) {
  if (name == "markdown" || name == "md") return Format::Markdown;
  if (name == "csv") return Format::CSV;
  if (name == "json") return Format::JSON;
  return std::nullopt;
}

std::optional<Table> parse_table(std::string_view name) {
  if (name == "all") return Table::All;
  if (name == "pass") return Table::PassAtK;
  if (name == "errors") return Table::Errors;
  if (name == "proportions") return Table::Proportions;
  return std::nullopt;
}

std::string format_fixed(double value, int decimals) {
  if (!std::isfinite(value)) return fmt::format("{}", value);
  const double scale = std::pow(10.0, decimals);
  const double scaled = value * scale;
  const double floor_v = std::floor(scaled);
  const double frac = scaled - floor_v;
  double rounded;
  if (std::fabs(frac - 0.5) <= 1e-9 * std::max(1.0, std::fabs(scaled))) {
    rounded = std::fmod(floor_v, 2.0) == 0.0 ? floor_v : floor_v + 1.0;
  } else {
    rounded = std::round(scaled);
  }
  if (rounded == 0.0) rounded = 0.0;  // no "-0.00"
  return fmt::format("{:.{}f}", rounded / scale, decimals);
}

std::string render_reports(std::span<const SuiteReport> reports, Format format, Table table) {
  if (format == Format::JSON) {
    if (reports.size() == 1) return report_to_json(reports.front()).dump(2) + "\n";
    auto arr = util::OrderedJson::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    return arr.dump(2) + "\n";
  }
  std::map<eval::Suite, std::vector<const SuiteReport*>> groups;
  for (const auto& r : reports) groups[r.suite].push_back(&r);
  std::string out;
  for (const auto& [suite, group] : groups) render_group(suite, group, format, table, out);
  if (reports.empty()) {
    // Header-only layout so an empty run still yields a well-formed table.
    const SuiteReport* none = nullptr;
    render_group(eval::Suite::HumanEval, std::span<const SuiteReport* const>(&none, 0), format, table, out);
  }
  return out;
}

std::string render_report(const SuiteReport& report, Format format, Table table) {
  return render_reports(std::span<const SuiteReport>(&report, 1), format, table);
}

std::string render_comparison(std::span<const Comparison> comparisons, Format format) {
  if (format == Format::JSON) {
    auto arr = util::OrderedJson::array();
    for (const auto& c : comparisons) {
      util::OrderedJson j;
      j["suite"] = eval::suite_name(c.suite);
      j["baseline"] = c.baseline_label;
      j["treatment"] = c.treatment_label;
      j["ks"] = c.change.used_ks;
      j["excluded_ks"] = c.change.excluded_ks;
      j["mean_percent_change"] = c.change.defined() ? util::OrderedJson(c.change.mean_percent) : util::OrderedJson(nullptr);
      j["warnings"] = c.change.warnings;
      arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
  }
  std::string out;
  TableWriter w(format, out);
  w.begin("Mean percent change of pass@k", {"Suite", "Baseline", "Treatment", "k", "Change %"});
  for (const auto& c : comparisons) {
    std::string ks;
    for (auto k : c.change.used_ks) ks += (ks.empty() ? "" : " ") + std::to_string(k);
    const auto value = !c.change.defined() ? std::string(kAbsent)
                       : format == Format::Markdown ? format_fixed(c.change.mean_percent, 2)
                                                    : full(c.change.mean_percent);
    w.row({suite_title(c.suite), c.baseline_label, c.treatment_label, ks, value});
  }
  for (const auto& c : comparisons) {
    for (const auto& warning : c.change.warnings) out += "warning: " + warning + "\n";
  }
  return out;
}

}  // namespace soeval::metrics
