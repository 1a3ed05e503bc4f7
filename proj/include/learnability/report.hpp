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

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "learnability/experiment.hpp"
#include "learnability/manifest.hpp"
#include "learnability/stats.hpp"

namespace learnability {

// Everything needed to print the per-concept block for one embedding.
struct EmbeddingReport {
  std::string embedding;
  std::size_t dimension = 0;
  std::size_t vocabulary = 0;
  bool normalized = false;
  std::size_t skipped_duplicates = 0;
  std::vector<AggregateResult> concepts;
  std::vector<EmpiricalPValue> auc_p;   // parallel to concepts
  std::vector<std::size_t> null_of;     // index into nulls, parallel to concepts
  std::vector<NullDistribution> nulls;  // one per null list size used
};

// Per-concept AUC table across embeddings, plus the paired test of two columns.
struct ComparisonReport {
  std::vector<std::string> embeddings;               // column order
  std::vector<std::string> concepts;                 // row order
  std::vector<std::vector<double>> auc;              // [concept][embedding]
  std::string a;
  std::string b;
  std::optional<WilcoxonOutcome> test;               // unset when indistinguishable
  std::string indistinguishable_reason;
  double alpha = 0.01;
  std::optional<int> critical_value;                 // table value when n_effective <= 30
  // Externally reported statistic and p-value to check the result against.
  std::optional<double> reference_w;
  std::optional<double> reference_p;
  // Whether the AUC values were read from a rounded table rather than computed.
  bool from_table = false;

  double mean(std::size_t column) const;
  double median(std::size_t column) const;
};

std::string render_eval_text(const RunManifest& m, const std::vector<EmbeddingReport>& reports);
std::string render_eval_tsv(const RunManifest& m, const std::vector<EmbeddingReport>& reports);
std::string render_eval_jsonl(const RunManifest& m, const std::vector<EmbeddingReport>& reports);

// One line per random list: list index and the list's mean metrics.
std::string render_null_jsonl(const NullDistribution& null);
std::string render_null_histogram_tsv(const NullDistribution& null);
std::string render_null_text(const RunManifest& m, const NullDistribution& null, std::size_t bins = 20);

std::string render_comparison_text(const ComparisonReport& r, const std::string& config_header);
std::string render_comparison_tsv(const ComparisonReport& r);
std::string render_comparison_jsonl(const ComparisonReport& r);

// Reads `concept<TAB>emb1<TAB>emb2...` with a header row; '#' lines and rows
// named Mean or Median are skipped.
ComparisonReport read_auc_table(const std::filesystem::path& path);
ComparisonReport parse_auc_table(const std::string& text, const std::string& source);

// Fills r.test / r.critical_value for columns a and b. All-zero differences
// set indistinguishable_reason instead of throwing.
void run_comparison_test(ComparisonReport& r, const std::string& a, const std::string& b,
                         Alternative alternative, double alpha);

// Formats a number with 3 decimals, as in the printed tables.
std::string fixed3(double v);

}  // namespace learnability
