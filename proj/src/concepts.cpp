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

#include "learnability/concepts.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <string_view>
#include <unordered_set>

#include "learnability/error.hpp"
#include "learnability/random.hpp"

namespace learnability {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string fold(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

class WordSet {
 public:
  void add(std::string word) {
    if (seen_.insert(word).second) words_.push_back(std::move(word));
  }
  std::vector<std::string> take() { return std::move(words_); }

 private:
  std::unordered_set<std::string> seen_;
  std::vector<std::string> words_;
};

}  // namespace

Concept parse_concept(std::istream& in, std::string name, std::string source,
                      const EmbeddingStore* expand_against) {
  Concept result;
  result.name = std::move(name);
  result.source = std::move(source);

  // Sorted view of the vocabulary, built on first wildcard.
  std::vector<std::string_view> sorted_vocab;

  WordSet words;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view entry = trim(line);
    if (entry.empty() || entry.front() == '#') continue;
    ++result.raw_entries;
    const std::string word = fold(entry);
    const auto star = word.find('*');
    if (star == std::string::npos) {
      words.add(word);
      continue;
    }
    if (expand_against == nullptr) {
      throw ParseError(result.source, line_no,
                       "wildcard entry '" + word +
                           "' is not supported here; rerun with --expand-wildcards to expand "
                           "it against the embedding vocabulary");
    }
    if (star != word.size() - 1 || star == 0) {
      throw ParseError(result.source, line_no,
                       "only a single trailing '*' is supported, got '" + word + "'");
    }
    if (sorted_vocab.empty()) {
      sorted_vocab.assign(expand_against->words().begin(), expand_against->words().end());
      std::sort(sorted_vocab.begin(), sorted_vocab.end());
    }
    const std::string_view prefix = std::string_view(word).substr(0, star);
    for (auto it = std::lower_bound(sorted_vocab.begin(), sorted_vocab.end(), prefix);
         it != sorted_vocab.end() && it->starts_with(prefix); ++it) {
      words.add(fold(*it));
    }
    ++result.expanded_wildcards;
  }
  result.words = words.take();
  if (result.words.empty()) {
    throw InputError("word list '" + result.name + "' (" + result.source + ") is empty");
  }
  return result;
}

Concept load_concept(const std::filesystem::path& path, std::string name) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open word list " + path.string());
  return parse_concept(in, std::move(name), path.string());
}

Concept load_concept(const std::filesystem::path& path, std::string name,
                     const EmbeddingStore& expand_against) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open word list " + path.string());
  return parse_concept(in, std::move(name), path.string(), &expand_against);
}

Concept make_concept(std::string name, std::span<const std::string> words, std::string source) {
  Concept result;
  result.name = std::move(name);
  result.source = std::move(source);
  WordSet set;
  for (const auto& w : words) {
    std::string_view entry = trim(w);
    if (entry.empty()) continue;
    ++result.raw_entries;
    set.add(fold(entry));
  }
  result.words = set.take();
  if (result.words.empty()) throw InputError("word list '" + result.name + "' is empty");
  return result;
}

ResolvedConcept resolve(const Concept& list, const EmbeddingStore& store) {
  ResolvedConcept out;
  out.list = list;
  out.embedding_name = store.name();
  for (const auto& w : list.words) {
    if (auto idx = store.index_of(w)) {
      out.in_vocab.push_back(w);
      out.indices.push_back(*idx);
    } else {
      out.dropped.push_back(w);
    }
  }
  if (out.in_vocab.size() < kMinResolvedConceptSize) {
    throw InputError("list too small after vocabulary resolution: '" + list.name + "' has " +
                     std::to_string(out.in_vocab.size()) + " of " +
                     std::to_string(list.words.size()) + " words in embedding '" +
                     store.name() + "' (need at least " +
                     std::to_string(kMinResolvedConceptSize) + ")");
  }
  return out;
}

std::vector<std::size_t> sample_vocabulary(const EmbeddingStore& store, std::size_t size,
                                           std::span<const std::string> exclude,
                                           std::uint64_t seed) {
  std::vector<std::uint64_t> excluded;
  for (const auto& w : exclude) {
    if (auto idx = store.index_of(w)) excluded.push_back(*idx);
  }
  std::sort(excluded.begin(), excluded.end());
  excluded.erase(std::unique(excluded.begin(), excluded.end()), excluded.end());

  const std::size_t available = store.size() - excluded.size();
  if (size == 0) throw InvalidArgument("random list size must be positive");
  if (size > available) {
    throw InvalidArgument("cannot sample " + std::to_string(size) + " words: only " +
                          std::to_string(available) + " available in embedding '" +
                          store.name() + "'");
  }
  RandomStream stream(derive_key(seed, {"random-list", store.name()}, size));
  std::vector<std::size_t> out;
  out.reserve(size);
  for (std::uint64_t rank : sample_without_replacement(stream, available, size)) {
    out.push_back(complement_element(rank, excluded));
  }
  return out;
}

ResolvedConcept random_concept(const EmbeddingStore& store, std::size_t size,
                               std::span<const std::string> exclude, std::uint64_t seed,
                               std::string name) {
  if (size < kMinResolvedConceptSize) {
    throw InvalidArgument("random list size must be at least " +
                          std::to_string(kMinResolvedConceptSize));
  }
  ResolvedConcept out;
  out.indices = sample_vocabulary(store, size, exclude, seed);
  out.list.name = std::move(name);
  out.list.source = "random sample, seed " + std::to_string(seed);
  out.list.raw_entries = size;
  out.embedding_name = store.name();
  out.in_vocab.reserve(size);
  for (std::size_t idx : out.indices) out.in_vocab.push_back(store.word(idx));
  out.list.words = out.in_vocab;
  return out;
}

}  // namespace learnability
