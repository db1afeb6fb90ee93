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

#include "soeval/app/commands.hpp"
#include "soeval/util/error.hpp"

namespace soeval::app {

corpus::CorpusStats cmd_stats(const StatsOptions& options, Console console) {
  if (options.corpus_files.empty()) throw ConfigError("stats needs at least one corpus file");
  std::unique_ptr<corpus::ExternalTokenCounts> external;
  if (options.token_counts) {
    external = std::make_unique<corpus::ExternalTokenCounts>(corpus::ExternalTokenCounts::load(*options.token_counts));
  }
  std::vector<corpus::TrainingRecord> records;
  for (const auto& path : options.corpus_files) {
    util::for_each_jsonl(path, [&](std::size_t, const util::Json& j) { records.push_back(corpus::record_from_json(j)); });
  }
  auto stats = corpus::corpus_stats(records, corpus::PipelineCounters{}, external.get());
  console.out << corpus::stats_to_json(stats).dump(2) << "\n";
  return stats;
}

}  // namespace soeval::app
