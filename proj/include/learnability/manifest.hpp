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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "learnability/embedding_store.hpp"
#include "learnability/experiment.hpp"

namespace learnability {

enum class OutputFormat {
  delimited,   // .tsv
  structured,  // .jsonl
  human,       // .txt
};

std::string to_string(OutputFormat f);
// Accepts "tsv", "jsonl", "text" (and the long names).
OutputFormat parse_output_format(const std::string& s);
std::vector<OutputFormat> parse_output_formats(const std::string& comma_separated);

struct RandomEmbeddingSpec {
  std::size_t words = 0;                       // synthetic vocabulary of this size, or
  std::string vocabulary_from;                 // the vocabulary of another embedding, or
  std::filesystem::path vocabulary_file;       // one word per line
  std::size_t dimension = 300;
  std::uint64_t seed = 0;
};

struct EmbeddingEntry {
  std::string name;
  // Exactly one of the two is set.
  std::optional<EmbeddingSourceSpec> file;
  std::optional<RandomEmbeddingSpec> random;
  Precision precision = Precision::f32;
};

struct ConceptEntry {
  std::string name;
  std::filesystem::path path;
};

struct RunManifest {
  std::string name = "run";
  std::vector<EmbeddingEntry> embeddings;
  std::vector<ConceptEntry> concepts;
  ExperimentConfig experiment;
  std::filesystem::path output_dir = "runs";
  std::vector<OutputFormat> formats = {OutputFormat::delimited, OutputFormat::structured,
                                       OutputFormat::human};
  bool expand_wildcards = false;
  bool spill_iterations = false;

  const EmbeddingEntry& embedding(const std::string& name) const;
};

// Parses the JSON manifest; relative paths are taken from the manifest's
// directory. Unknown keys are errors.
RunManifest load_manifest(const std::filesystem::path& path);
RunManifest parse_manifest(const std::string& json_text, const std::filesystem::path& base_dir);

// Fail-fast checks before any compute: shapes, unique names, readable files.
// Collects every problem into one InputError.
void validate_manifest(const RunManifest& manifest);

// Effective configuration as pretty-printed JSON. Excludes the worker count,
// which never changes results.
std::string effective_config_json(const RunManifest& manifest);

// Loads (or generates) one embedding and applies the experiment's
// normalization choice.
EmbeddingStore materialize_embedding(const RunManifest& manifest, const EmbeddingEntry& entry);

}  // namespace learnability
