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
#include <string>
#include <vector>

#include "learnability/concepts.hpp"
#include "learnability/embedding_store.hpp"

namespace learnability {

// One balanced train/test partition. Entries are vocabulary indices of the
// embedding the split was drawn from.
struct EvaluationSplit {
  std::vector<std::size_t> train_pos;
  std::vector<std::size_t> train_neg;
  std::vector<std::size_t> test_pos;
  std::vector<std::size_t> test_neg;
  std::size_t iteration_index = 0;
  std::uint64_t seed = 0;  // key of the stream the split was drawn from
};

// Positives: the concept's in-vocabulary words shuffled, the first
// ceil(n / 2) to train and the rest to test. Negatives: n distinct words from
// V \ L in random order, the first |train_pos| to train and the next
// |test_pos| to test. Deterministic in (master_seed, concept name, embedding
// name, iteration_index).
EvaluationSplit make_split(const ResolvedConcept& resolved, const EmbeddingStore& store,
                           std::size_t iteration_index, std::uint64_t master_seed);

std::vector<std::string> words_of(const EmbeddingStore& store,
                                  const std::vector<std::size_t>& indices);

}  // namespace learnability
