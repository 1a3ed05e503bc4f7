// Copyright 2026 The Learnability Authors. All Rights Reserved.
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

#include "learnability/commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "learnability/error.hpp"

namespace learnability {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ComputeError("cannot write " + path.string());
  out << content;
  if (!out) throw ComputeError("failed writing " + path.string());
}

bool wants(const std::vector<OutputFormat>& formats, OutputFormat f) {
  return std::find(formats.begin(), formats.end(), f) != formats.end();
}

// Keeps file names portable.
std::string file_stem(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  return out;
}

std::string per_iteration_jsonl(const AggregateResult& a) {
  std::ostringstream out;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& r = a.records[i];
    out << nlohmann::json{{"iteration", i},
                          {"accuracy", r.values.accuracy},
                          {"recall", r.values.recall},
                          {"fpr", r.values.fpr},
                          {"precision", r.values.precision},
                          {"auc", r.values.auc},
                          {"tp", r.tp},
                          {"fp", r.fp},
                          {"tn", r.tn},
                          {"fn", r.fn},
                          {"threshold", r.threshold}}
               .dump()
        << "\n";
  }
  return out.str();
}

void log_line(std::ostream* log, const std::string& msg) {
  if (log) *log << msg << std::endl;
}

struct LoadedInputs {
  std::vector<EmbeddingStore> stores;
  std::vector<std::vector<ResolvedConcept>> resolved;  // [embedding][concept]
};

// Loads everything before any training so bad inputs fail early.
LoadedInputs load_inputs(const RunManifest& m, const std::vector<std::string>& only,
                         std::ostream* log) {
  validate_manifest(m);
  LoadedInputs in;
  std::vector<Concept> shared;
  if (!m.expand_wildcards) shared = load_manifest_concepts(m, nullptr);
  for (const auto& entry : m.embeddings) {
    if (!only.empty() && std::find(only.begin(), only.end(), entry.name) == only.end()) continue;
    log_line(log, "loading embedding '" + entry.name + "'");
    EmbeddingStore store = materialize_embedding(m, entry);
    const auto concepts = m.expand_wildcards ? load_manifest_concepts(m, &store) : shared;
    std::vector<ResolvedConcept> resolved;
    for (const auto& c : concepts) resolved.push_back(resolve(c, store));
    in.stores.push_back(std::move(store));
    in.resolved.push_back(std::move(resolved));
  }
  return in;
}

}  // namespace

std::filesystem::path create_run_directory(const std::filesystem::path& out_root,
                                           const std::string& name) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &utc);
  const std::string base = std::string(stamp) + "-" + file_stem(name);
  std::filesystem::create_directories(out_root);
  for (int suffix = 0;; ++suffix) {
    auto dir = out_root / (suffix == 0 ? base : base + "-" + std::to_string(suffix));
    if (std::filesystem::create_directory(dir)) return dir;
  }
}

std::vector<Concept> load_manifest_concepts(const RunManifest& m,
                                            const EmbeddingStore* expand_against) {
  std::vector<Concept> out;
  for (const auto& c : m.concepts) {
    out.push_back(expand_against ? load_concept(c.path, c.name, *expand_against)
                                 : load_concept(c.path, c.name));
  }
  return out;
}

EmbeddingReport evaluate_embedding(const RunManifest& m, const EmbeddingStore& store,
                                   const std::vector<ResolvedConcept>& concepts, bool with_null,
                                   std::ostream* log) {
  const ExperimentConfig& cfg = m.experiment;
  EmbeddingReport r;
  r.embedding = store.name();
  r.dimension = store.dimension();
  r.vocabulary = store.size();
  r.normalized = store.normalized();
  r.skipped_duplicates = store.skipped_duplicates();
  for (const auto& c : concepts) {
    log_line(log, "  " + store.name() + " / " + c.list.name + " (" + std::to_string(c.size()) +
                      " words, " + std::to_string(cfg.iterations) + " iterations)");
    r.concepts.push_back(run_concept(store, c, cfg));
  }
  if (!with_null) return r;

  std::vector<std::string> exclude;
  std::map<std::size_t, std::size_t> null_by_size;
  auto null_for = [&](std::size_t size) {
    auto it = null_by_size.find(size);
    if (it != null_by_size.end()) return it->second;
    log_line(log, "  " + store.name() + " / null: " + std::to_string(cfg.random_list_count) +
                      " random lists of " + std::to_string(size) + " words");
    r.nulls.push_back(run_null(store, cfg, exclude, size));
    null_by_size.emplace(size, r.nulls.size() - 1);
    return r.nulls.size() - 1;
  };
  for (const auto& a : r.concepts) {
    const std::size_t idx = null_for(cfg.match_null_size ? a.resolved_size : cfg.random_list_size);
    r.null_of.push_back(idx);
    const auto null_auc = r.nulls[idx].values(&MetricValues::auc);
    r.auc_p.push_back(empirical_p_value(a.mean.auc, null_auc));
  }
  if (r.nulls.empty()) null_for(cfg.random_list_size);
  return r;
}

EvalOutcome cmd_eval(const RunManifest& m, std::ostream* log) {
  LoadedInputs in = load_inputs(m, {}, log);
  EvalOutcome out;
  for (std::size_t e = 0; e < in.stores.size(); ++e) {
    out.reports.push_back(evaluate_embedding(m, in.stores[e], in.resolved[e], true, log));
  }

  out.run_dir = create_run_directory(m.output_dir, m.name);
  write_file(out.run_dir / "config" / "manifest.json", effective_config_json(m));
  for (const auto& r : out.reports) {
    const std::string stem = file_stem(r.embedding);
    const std::vector<EmbeddingReport> one{r};
    if (wants(m.formats, OutputFormat::delimited)) {
      write_file(out.run_dir / "aggregates" / (stem + ".tsv"), render_eval_tsv(m, one));
    }
    if (wants(m.formats, OutputFormat::structured)) {
      write_file(out.run_dir / "aggregates" / (stem + ".jsonl"), render_eval_jsonl(m, one));
    }
    if (wants(m.formats, OutputFormat::human)) {
      write_file(out.run_dir / "aggregates" / (stem + ".txt"), render_eval_text(m, one));
    }
    for (const auto& null : r.nulls) {
      const std::string null_stem = stem + "-size" + std::to_string(null.list_size);
      write_file(out.run_dir / "null" / (null_stem + ".jsonl"), render_null_jsonl(null));
    }
    if (m.spill_iterations) {
      for (const auto& a : r.concepts) {
        write_file(out.run_dir / "per-iteration" / stem / (file_stem(a.concept_name) + ".jsonl"),
                   per_iteration_jsonl(a));
      }
    }
  }
  return out;
}

NullOutcome cmd_null(const RunManifest& m, const std::string& embedding, std::ostream* log) {
  validate_manifest(m);
  const EmbeddingEntry& entry = m.embedding(embedding);
  log_line(log, "loading embedding '" + entry.name + "'");
  const EmbeddingStore store = materialize_embedding(m, entry);
  log_line(log, "  null: " + std::to_string(m.experiment.random_list_count) + " random lists of " +
                    std::to_string(m.experiment.random_list_size) + " words");
  NullOutcome out;
  out.null = run_null(store, m.experiment);
  out.run_dir = create_run_directory(m.output_dir, m.name + "-null-" + embedding);
  write_file(out.run_dir / "config" / "manifest.json", effective_config_json(m));
  const std::string stem = file_stem(embedding);
  write_file(out.run_dir / "null" / (stem + ".jsonl"), render_null_jsonl(out.null));
  if (wants(m.formats, OutputFormat::delimited)) {
    write_file(out.run_dir / "null" / (stem + ".histogram.tsv"), render_null_histogram_tsv(out.null));
  }
  if (wants(m.formats, OutputFormat::human)) {
    write_file(out.run_dir / "null" / (stem + ".txt"), render_null_text(m, out.null));
  }
  return out;
}

namespace {

void write_comparison(const std::filesystem::path& dir, const ComparisonReport& r,
                      const std::vector<OutputFormat>& formats, const std::string& config_header) {
  const std::string stem = file_stem(r.a) + "-vs-" + file_stem(r.b);
  if (wants(formats, OutputFormat::delimited)) {
    write_file(dir / "compare" / (stem + ".tsv"), render_comparison_tsv(r));
  }
  if (wants(formats, OutputFormat::structured)) {
    write_file(dir / "compare" / (stem + ".jsonl"), render_comparison_jsonl(r));
  }
  if (wants(formats, OutputFormat::human)) {
    write_file(dir / "compare" / (stem + ".txt"), render_comparison_text(r, config_header));
  }
}

}  // namespace

CompareOutcome cmd_compare(const RunManifest& m, const CompareOptions& options, std::ostream* log) {
  m.embedding(options.a);
  m.embedding(options.b);
  LoadedInputs in = load_inputs(m, {}, log);

  CompareOutcome out;
  ComparisonReport& r = out.report;
  r.reference_w = options.reference_w;
  r.reference_p = options.reference_p;
  for (const auto& c : m.concepts) r.concepts.push_back(c.name);
  r.auc.assign(r.concepts.size(), {});
  for (std::size_t e = 0; e < in.stores.size(); ++e) {
    r.embeddings.push_back(in.stores[e].name());
    const EmbeddingReport rep = evaluate_embedding(m, in.stores[e], in.resolved[e], false, log);
    for (std::size_t c = 0; c < rep.concepts.size(); ++c) r.auc[c].push_back(rep.concepts[c].mean.auc);
  }
  run_comparison_test(r, options.a, options.b, options.alternative, options.alpha);

  out.run_dir = create_run_directory(m.output_dir, m.name + "-compare");
  write_file(out.run_dir / "config" / "manifest.json", effective_config_json(m));
  write_comparison(out.run_dir, r, m.formats, nlohmann::json::parse(effective_config_json(m)).dump());
  return out;
}

CompareOutcome cmd_compare_table(const std::filesystem::path& table, const CompareOptions& options,
                                 const std::filesystem::path& out_root,
                                 const std::vector<OutputFormat>& formats) {
  CompareOutcome out;
  out.report = read_auc_table(table);
  out.report.reference_w = options.reference_w;
  out.report.reference_p = options.reference_p;
  run_comparison_test(out.report, options.a, options.b, options.alternative, options.alpha);
  out.run_dir = create_run_directory(out_root, "compare-table");
  write_comparison(out.run_dir, out.report, formats, "auc table " + table.filename().string());
  return out;
}

}  // namespace learnability
