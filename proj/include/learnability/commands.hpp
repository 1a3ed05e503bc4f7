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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "learnability/manifest.hpp"
#include "learnability/report.hpp"

namespace learnability {

// Creates <out_root>/<UTC timestamp>-<name>, adding a numeric suffix if that
// directory already exists.
std::filesystem::path create_run_directory(const std::filesystem::path& out_root,
                                           const std::string& name);

struct EvalOutcome {
  std::filesystem::path run_dir;
  std::vector<EmbeddingReport> reports;
};

// Validates the manifest, loads every embedding and list, then evaluates each
// concept against each embedding together with the random-list nulls.
// Writes config/, aggregates/, null/ and (optionally) per-iteration/.
EvalOutcome cmd_eval(const RunManifest& manifest, std::ostream* log = nullptr);

struct NullOutcome {
  std::filesystem::path run_dir;
  NullDistribution null;
};

NullOutcome cmd_null(const RunManifest& manifest, const std::string& embedding,
                     std::ostream* log = nullptr);

struct CompareOptions {
  std::string a;
  std::string b;
  Alternative alternative = Alternative::greater;
  double alpha = 0.01;
  std::optional<double> reference_w;
  std::optional<double> reference_p;
};

struct CompareOutcome {
  std::filesystem::path run_dir;
  ComparisonReport report;
};

// Evaluates every manifest embedding over the manifest concepts and tests
// column a against column b.
CompareOutcome cmd_compare(const RunManifest& manifest, const CompareOptions& options,
                           std::ostream* log = nullptr);

// Same report, from a table of already computed AUCs.
CompareOutcome cmd_compare_table(const std::filesystem::path& table, const CompareOptions& options,
                                 const std::filesystem::path& out_root,
                                 const std::vector<OutputFormat>& formats);

// Per-embedding evaluation shared by eval and compare.
EmbeddingReport evaluate_embedding(const RunManifest& manifest, const EmbeddingStore& store,
                                   const std::vector<ResolvedConcept>& concepts,
                                   bool with_null, std::ostream* log = nullptr);

std::vector<Concept> load_manifest_concepts(const RunManifest& manifest,
                                            const EmbeddingStore* expand_against);

}  // namespace learnability
