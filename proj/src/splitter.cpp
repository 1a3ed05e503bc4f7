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

#include "learnability/splitter.hpp"

#include <algorithm>

#include "learnability/error.hpp"
#include "learnability/random.hpp"

namespace learnability {

EvaluationSplit make_split(const ResolvedConcept& resolved, const EmbeddingStore& store,
                           std::size_t iteration_index, std::uint64_t master_seed) {
  const std::size_t n = resolved.indices.size();
  if (n < kMinResolvedConceptSize) {
    throw InvalidArgument("concept '" + resolved.list.name + "' has " + std::to_string(n) +
                          " words; at least " + std::to_string(kMinResolvedConceptSize) +
                          " are needed for a split");
  }
  if (store.size() < 2 * n + 2) {
    throw InvalidArgument("vocabulary of embedding '" + store.name() + "' (" +
                          std::to_string(store.size()) +
                          " words) is too small for disjoint negatives of concept '" +
                          resolved.list.name + "' (" + std::to_string(n) + " words)");
  }
  for (std::size_t idx : resolved.indices) {
    if (idx >= store.size()) {
      throw InvalidArgument("concept '" + resolved.list.name +
                            "' was resolved against a different embedding");
    }
  }

  EvaluationSplit split;
  split.iteration_index = iteration_index;
  split.seed = derive_key(master_seed, {"split", resolved.list.name, store.name()},
                          iteration_index);
  RandomStream stream(split.seed);

  std::vector<std::size_t> positives = resolved.indices;
  stream.shuffle(std::span(positives));
  const std::size_t n_train = (n + 1) / 2;
  split.train_pos.assign(positives.begin(), positives.begin() + static_cast<std::ptrdiff_t>(n_train));
  split.test_pos.assign(positives.begin() + static_cast<std::ptrdiff_t>(n_train), positives.end());

  std::vector<std::uint64_t> concept_sorted(resolved.indices.begin(), resolved.indices.end());
  std::sort(concept_sorted.begin(), concept_sorted.end());
  concept_sorted.erase(std::unique(concept_sorted.begin(), concept_sorted.end()),
                       concept_sorted.end());
  const std::uint64_t complement = store.size() - concept_sorted.size();
  const auto ranks = sample_without_replacement(stream, complement, n);
  split.train_neg.reserve(n_train);
  split.test_neg.reserve(n - n_train);
  for (std::size_t k = 0; k < ranks.size(); ++k) {
    const auto idx = static_cast<std::size_t>(complement_element(ranks[k], concept_sorted));
    (k < n_train ? split.train_neg : split.test_neg).push_back(idx);
  }
  return split;
}

std::vector<std::string> words_of(const EmbeddingStore& store,
                                  const std::vector<std::size_t>& indices) {
  std::vector<std::string> out;
  out.reserve(indices.size());
  for (std::size_t idx : indices) out.push_back(store.word(idx));
  return out;
}

}  // namespace learnability
