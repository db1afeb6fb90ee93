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

#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "soeval/corpus/packing.hpp"
#include "soeval/corpus/record.hpp"
#include "soeval/corpus/stats.hpp"
#include "soeval/corpus/thread.hpp"

namespace soeval::corpus {

// Record materialization: strip every body once, then render each requested variant.
// Output is thread-major: records[t * variants.size() + v].

/// Reference implementation; one thread at a time.
std::vector<TrainingRecord> build_records_serial(std::span<const QAThread> threads,
                                                 std::span<const Variant> variants,
                                                 const RecordOptions& options);

/// OpenMP version with the same output, element for element. `workers` <= 0 uses the runtime default.
std::vector<TrainingRecord> build_records_parallel(std::span<const QAThread> threads,
                                                   std::span<const Variant> variants,
                                                   const RecordOptions& options, int workers);

struct CorpusConfig {
  TagFilter filter = TagFilter::python_default();
  std::vector<Variant> variants{Variant::Full, Variant::NoCode, Variant::NoNL};
  RecordOptions record;
  PackOptions pack;
  bool emit_windows = true;
  int workers = 1;
  std::shared_ptr<const ExternalTokenCounts> token_counts;
  std::size_t chunk_threads = 4096;  // threads materialized per parallel batch
};

struct CorpusOutputs {
  std::map<Variant, std::filesystem::path> corpus_files;  // corpus_<variant>.jsonl
  std::map<Variant, std::filesystem::path> window_files;  // windows_<variant>.jsonl
  std::filesystem::path stats_file;                        // stats.json
  CorpusStats stats;
};

std::filesystem::path corpus_file_name(Variant v);
std::filesystem::path window_file_name(Variant v);

/// Parse -> align -> strip/render -> JSONL + windows + stats.json under `out_dir`.
/// Output bytes depend only on the dump bytes and the config (not on `workers`).
CorpusOutputs build_corpus(std::istream& dump, const CorpusConfig& config, const std::filesystem::path& out_dir);

util::OrderedJson record_to_json(const TrainingRecord& record);
TrainingRecord record_from_json(const util::Json& json);
util::OrderedJson window_to_json(const PackedWindow& window);

}  // namespace soeval::corpus
