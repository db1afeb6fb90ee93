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

#include "soeval/metrics/report.hpp"

namespace soeval::metrics {
namespace {

util::OrderedJson averages_to_json(const ClassAverages& a) {
  util::OrderedJson j;
  j["syntax_error"] = a.syntax_error;
  j["runtime_error"] = a.runtime_error;
  j["test_failure"] = a.test_failure;
  j["timeout"] = a.timeout;
  j["correct"] = a.correct;
  return j;
}

ClassAverages averages_from_json(const util::Json& j) {
  return {j.at("syntax_error").get<double>(), j.at("runtime_error").get<double>(), j.at("test_failure").get<double>(),
          j.value("timeout", 0.0), j.at("correct").get<double>()};
}

util::OrderedJson k_map_to_json(const std::map<std::uint64_t, double>& m) {
  util::OrderedJson j = util::OrderedJson::object();
  for (const auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

std::uint64_t parse_k(const std::string& key) {
  try {
    std::size_t used = 0;
    const auto k = std::stoull(key, &used);
    if (used != key.size()) throw std::invalid_argument(key);
    return k;
  } catch (const std::exception&) {
    throw InputError("report: invalid k key '" + key + "'");
  }
}

}  // namespace

util::OrderedJson report_to_json(const SuiteReport& report) {
  util::OrderedJson j;
  j["suite"] = eval::suite_name(report.suite);
  j["model_label"] = report.model_label;
  j["ks"] = report.ks;
  auto runs = util::OrderedJson::array();
  for (const auto& t : report.per_temperature) {
    util::OrderedJson run;
    run["temperature"] = t.temperature;
    run["n"] = t.n;
    run["pass_at_k"] = k_map_to_json(t.pass_at_k);
    auto problems = util::OrderedJson::array();
    for (const auto& p : t.problems) {
      problems.push_back({{"task_id", p.task_id},
                          {"syntax_error", p.counts.syntax_error},
                          {"runtime_error", p.counts.runtime_error},
                          {"test_failure", p.counts.test_failure},
                          {"timeout", p.counts.timeout},
                          {"correct", p.counts.correct}});
    }
    run["problems"] = std::move(problems);
    runs.push_back(std::move(run));
  }
  j["per_temperature"] = std::move(runs);
  util::OrderedJson best = util::OrderedJson::object();
  for (const auto& [k, b] : report.best_per_k) {
    best[std::to_string(k)] = {{"value", b.value}, {"temperature", b.temperature}};
  }
  j["best_per_k"] = std::move(best);
  j["error_averages"] = averages_to_json(report.error_averages.folded());
  j["error_averages"].erase("timeout");
  j["error_averages_unfolded"] = averages_to_json(report.error_averages);
  auto props = util::OrderedJson::array();
  for (const auto& p : report.proportions) {
    util::OrderedJson entry;
    entry["temperature"] = p.temperature;
    entry.update(averages_to_json(p.fractions));
    props.push_back(std::move(entry));
  }
  j["proportions"] = std::move(props);
  return j;
}

SuiteReport report_from_json(const util::Json& j) {
  try {
    SuiteReport report;
    const auto suite = eval::parse_suite(j.at("suite").get<std::string>());
    if (!suite) throw InputError("report: unknown suite " + j.at("suite").dump());
    report.suite = *suite;
    report.model_label = j.value("model_label", std::string{});
    report.ks = j.at("ks").get<std::vector<std::uint64_t>>();
    for (const auto& run : j.at("per_temperature")) {
      TemperatureReport t;
      t.temperature = run.at("temperature").get<double>();
      t.n = run.at("n").get<std::uint64_t>();
      for (const auto& [k, v] : run.at("pass_at_k").items()) t.pass_at_k[parse_k(k)] = v.get<double>();
      for (const auto& p : run.at("problems")) {
        ProblemCounts pc;
        pc.task_id = p.at("task_id").get<std::string>();
        pc.counts = {p.at("syntax_error").get<std::uint64_t>(), p.at("runtime_error").get<std::uint64_t>(),
                     p.at("test_failure").get<std::uint64_t>(), p.value("timeout", std::uint64_t{0}),
                     p.at("correct").get<std::uint64_t>()};
        t.problems.push_back(std::move(pc));
      }
      report.per_temperature.push_back(std::move(t));
    }
    for (const auto& [k, b] : j.at("best_per_k").items()) {
      report.best_per_k[parse_k(k)] = {b.at("value").get<double>(), b.at("temperature").get<double>()};
    }
    if (j.contains("error_averages_unfolded")) {
      report.error_averages = averages_from_json(j.at("error_averages_unfolded"));
    } else {
      report.error_averages = averages_from_json(j.at("error_averages"));
    }
    for (const auto& p : j.value("proportions", util::Json::array())) {
      report.proportions.push_back({p.at("temperature").get<double>(), averages_from_json(p)});
    }
    return report;
  } catch (const util::Json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
}

}  // namespace soeval::metrics
