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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "learnability/embedding_store.hpp"

namespace learnability {

// Smallest resolved list that still yields two train and two test positives.
inline constexpr std::size_t kMinResolvedConceptSize = 4;

// A named word list. Words are lowercase, unique, and kept in file order.
struct Concept {
  std::string name;
  std::vector<std::string> words;
  std::string source;
  // Non-comment entries in the source before folding and deduplication.
  std::size_t raw_entries = 0;
  // Wildcard entries that were expanded against a vocabulary.
  std::size_t expanded_wildcards = 0;
};

struct ResolvedConcept {
  Concept list;
  std::string embedding_name;
  std::vector<std::string> in_vocab;
  std::vector<std::size_t> indices;  // parallel to in_vocab
  std::vector<std::string> dropped;

  std::size_t size() const noexcept { return in_vocab.size(); }
};

// One word per line, '#' starts a comment line, blank lines ignored. Entries
// with a '*' are rejected; use the overload taking a vocabulary to expand them.
Concept load_concept(const std::filesystem::path& path, std::string name);

// Same, but a trailing '*' is expanded to every vocabulary word with that prefix.
Concept load_concept(const std::filesystem::path& path, std::string name,
                     const EmbeddingStore& expand_against);

Concept parse_concept(std::istream& in, std::string name, std::string source,
                      const EmbeddingStore* expand_against = nullptr);

// Builds a concept from literal words (folded and deduplicated).
Concept make_concept(std::string name, std::span<const std::string> words,
                     std::string source = "inline");

// Throws InputError when fewer than kMinResolvedConceptSize words survive.
ResolvedConcept resolve(const Concept& list, const EmbeddingStore& store);

// Uniform sample of `size` distinct vocabulary indices from V \ exclude, in
// sampled order.
std::vector<std::size_t> sample_vocabulary(const EmbeddingStore& store, std::size_t size,
                                           std::span<const std::string> exclude,
                                           std::uint64_t seed);

// A random list of `size` in-vocabulary words (size >= kMinResolvedConceptSize).
ResolvedConcept random_concept(const EmbeddingStore& store, std::size_t size,
                               std::span<const std::string> exclude, std::uint64_t seed,
                               std::string name = "random");

}  // namespace learnability
