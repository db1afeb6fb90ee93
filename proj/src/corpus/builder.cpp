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

#include "soeval/corpus/builder.hpp"

#include <omp.h>

#include <fstream>

#include "soeval/util/error.hpp"

namespace soeval::corpus {
namespace {

void materialize_thread(const QAThread& thread, std::span<const Variant> variants, const RecordOptions& options,
                        TrainingRecord* out) {
  const auto prepared = prepare_thread(thread, options);
  for (std::size_t v = 0; v < variants.size(); ++v) out[v] = build_record(prepared, variants[v], options);
}

}  // namespace

std::vector<TrainingRecord> build_records_serial(std::span<const QAThread> threads,
                                                 std::span<const Variant> variants,
                                                 const RecordOptions& options) {
  std::vector<TrainingRecord> records(threads.size() * variants.size());
  for (std::size_t t = 0; t < threads.size(); ++t) {
    materialize_thread(threads[t], variants, options, records.data() + t * variants.size());
  }
  return records;
}

std::vector<TrainingRecord> build_records_parallel(std::span<const QAThread> threads,
                                                   std::span<const Variant> variants,
                                                   const RecordOptions& options, int workers) {
  std::vector<TrainingRecord> records(threads.size() * variants.size());
  const auto n = static_cast<std::int64_t>(threads.size());
  const int nthreads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(nthreads)
  for (std::int64_t t = 0; t < n; ++t) {
    const auto idx = static_cast<std::size_t>(t);
    materialize_thread(threads[idx], variants, options, records.data() + idx * variants.size());
  }
  return records;
}

std::filesystem::path corpus_file_name(Variant v) {
  return "corpus_" + std::string(variant_name(v)) + ".jsonl";
}

std::filesystem::path window_file_name(Variant v) {
  return "windows_" + std::string(variant_name(v)) + ".jsonl";
}

util::OrderedJson record_to_json(const TrainingRecord& record) {
  util::OrderedJson j;
  j["question_id"] = record.question_id;
  j["variant"] = variant_name(record.variant);
  j["text"] = record.text;
  j["approx_tokens"] = record.approx_tokens;
  return j;
}

TrainingRecord record_from_json(const util::Json& j) {
  TrainingRecord record;
  record.question_id = j.at("question_id").get<std::uint64_t>();
  const auto variant = parse_variant(j.at("variant").get<std::string>());
  if (!variant) throw InputError("unknown variant " + j.at("variant").dump());
  record.variant = *variant;
  record.text = j.at("text").get<std::string>();
  record.approx_tokens = j.at("approx_tokens").get<std::uint64_t>();
  return record;
}

util::OrderedJson window_to_json(const PackedWindow& window) {
  util::OrderedJson j;
  j["window_index"] = window.window_index;
  j["text"] = window.text;
  j["source_question_ids"] = window.source_question_ids;
  j["tokens"] = window.token_count;
  return j;
}

CorpusOutputs build_corpus(std::istream& dump, const CorpusConfig& config, const std::filesystem::path& out_dir) {
  if (config.variants.empty()) throw ConfigError("no corpus variants requested");
  std::filesystem::create_directories(out_dir);

  PostsXmlReader reader(dump);
  ThreadAligner aligner(config.filter);
  while (auto post = reader.next()) aligner.add(std::move(*post));
  const auto threads = aligner.finish();
  const auto& align = aligner.counters();

  CorpusOutputs outputs;
  std::map<Variant, std::ofstream> corpus_out;
  std::map<Variant, std::ofstream> window_out;
  std::map<Variant, std::unique_ptr<WindowPacker>> packers;
  for (auto v : config.variants) {
    if (corpus_out.contains(v)) continue;
    outputs.corpus_files[v] = out_dir / corpus_file_name(v);
    corpus_out[v].open(outputs.corpus_files[v], std::ios::binary | std::ios::trunc);
    if (!corpus_out[v]) throw InputError("cannot write " + outputs.corpus_files[v].string());
    if (config.emit_windows) {
      outputs.window_files[v] = out_dir / window_file_name(v);
      auto& wout = window_out[v];
      wout.open(outputs.window_files[v], std::ios::binary | std::ios::trunc);
      if (!wout) throw InputError("cannot write " + outputs.window_files[v].string());
      packers[v] = std::make_unique<WindowPacker>(
          config.pack, [&wout](PackedWindow&& w) { util::write_jsonl_line(wout, window_to_json(w)); });
    }
  }
  std::vector<Variant> variants;
  for (const auto& [v, _] : corpus_out) variants.push_back(v);

  PipelineCounters counters;
  counters.skipped_rows = reader.skipped_rows();
  counters.answer_count = align.answers_aligned;
  counters.orphan_answers = align.answers_orphaned;
  counters.filtered_answers = align.answers_filtered;
  counters.unanswered_questions = align.questions_unanswered;

  // Records are streamed chunk by chunk; only the per-variant stats are kept.
  CorpusStats stats = corpus_stats({}, counters);
  const std::size_t chunk = std::max<std::size_t>(1, config.chunk_threads);
  for (std::size_t begin = 0; begin < threads.size(); begin += chunk) {
    const auto slice = std::span(threads).subspan(begin, std::min(chunk, threads.size() - begin));
    auto records = config.workers == 1 ? build_records_serial(slice, variants, config.record)
                                       : build_records_parallel(slice, variants, config.record, config.workers);
    for (auto& record : records) {
      record.approx_tokens = record_tokens(record, config.token_counts.get());
      util::write_jsonl_line(corpus_out[record.variant], record_to_json(record));
      if (config.emit_windows) packers[record.variant]->add(record);
      auto& vs = stats.variants[std::string(variant_name(record.variant))];
      ++vs.records;
      vs.approx_tokens += record.approx_tokens;
      stats.total_approx_tokens += record.approx_tokens;
      ++stats.record_count;
    }
    stats.question_count += slice.size();
  }
  for (auto& [v, packer] : packers) {
    const auto totals = packer->finish();
    auto& vs = stats.variants[std::string(variant_name(v))];
    vs.windows = totals.windows;
    vs.dropped_tail_tokens = totals.dropped_tail_tokens;
  }
  for (auto v : variants) stats.variants.try_emplace(std::string(variant_name(v)));

  outputs.stats = stats;
  outputs.stats_file = out_dir / "stats.json";
  util::write_json_file(outputs.stats_file, stats_to_json(stats));
  for (auto& [v, out] : corpus_out) {
    out.flush();
    if (!out) throw InputError("write failed for " + outputs.corpus_files[v].string());
  }
  return outputs;
}

}  // namespace soeval::corpus
