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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "learnability/concepts.hpp"
#include "learnability/embedding_store.hpp"
#include "learnability/metrics.hpp"
#include "learnability/perceptron.hpp"

namespace learnability {

struct ExperimentConfig {
  std::size_t iterations = 1000;
  std::size_t random_list_count = 1000;
  std::size_t random_list_size = 400;
  // Size each concept's null lists like the concept instead of random_list_size.
  bool match_null_size = false;
  std::uint64_t master_seed = 0;
  TrainConfig train;
  // Classifier inputs are unit-normalized rows when set.
  bool normalize = false;
  double threshold = kDefaultThreshold;
  // 0 means one worker per hardware thread. Results never depend on it.
  unsigned workers = 0;
  // Keep per-iteration records in AggregateResult::records.
  bool keep_records = true;
};

void validate(const ExperimentConfig& cfg);

// Returns the store the classifier should see under `cfg` (normalized or as is).
EmbeddingStore prepare_store(const EmbeddingStore& store, const ExperimentConfig& cfg);

struct AggregateResult {
  std::string concept_name;
  std::string embedding;
  std::size_t raw_size = 0;
  std::size_t resolved_size = 0;
  std::size_t iterations = 0;
  MetricValues mean;
  MetricValues stddev;  // sample standard deviation; 0 for a single iteration
  std::size_t precision_undefined = 0;  // iterations with nothing predicted positive
  std::vector<MetricsRecord> records;
};

struct NullDistribution {
  std::string embedding;
  std::size_t list_size = 0;
  std::vector<AggregateResult> lists;
  MetricValues max;   // per-metric maximum over lists
  MetricValues mean;  // per-metric mean over lists

  std::vector<double> values(double MetricValues::*metric) const;
};

// One split, one training run, one set of test metrics.
MetricsRecord run_iteration(const EmbeddingStore& store, const ResolvedConcept& resolved,
                            const ExperimentConfig& cfg, std::size_t iteration_index);

// `iterations` independent split/train/test rounds, aggregated in index order.
AggregateResult run_concept(const EmbeddingStore& store, const ResolvedConcept& resolved,
                            const ExperimentConfig& cfg);

// random_list_count random lists of `list_size` words (random_list_size when
// unset), each run through run_concept. Lists run in parallel; each list's
// iterations run sequentially.
NullDistribution run_null(const EmbeddingStore& store, const ExperimentConfig& cfg,
                          std::span<const std::string> exclude = {},
                          std::optional<std::size_t> list_size = std::nullopt);

struct EmpiricalPValue {
  double value = 1.0;
  std::size_t exceedances = 0;  // null values >= observed
  std::size_t null_count = 0;

  // "< 0.001"-style bound when nothing in the null reached the observation,
  // otherwise the value to 3 decimals.
  std::string display() const;
};

// Add-one estimator (1 + #{null >= observed}) / (1 + N).
EmpiricalPValue empirical_p_value(double observed, std::span<const double> null_values);

MetricValues mean_of(std::span<const MetricsRecord> records);

}  // namespace learnability
