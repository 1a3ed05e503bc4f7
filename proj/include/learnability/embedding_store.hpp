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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace learnability {

enum class VectorFormat {
  automatic,  // header detected when the first line is exactly two integers
  plain,
  header,
};

// Element type used to hold the matrix. Parsing and all arithmetic on rows
// are done in double regardless.
enum class Precision { f32, f64 };

struct EmbeddingSourceSpec {
  std::string name;
  std::filesystem::path path;
  VectorFormat format = VectorFormat::automatic;
  bool lowercase = false;
  std::optional<std::size_t> max_words;
  Precision precision = Precision::f32;
};

// Vocabulary plus one dense row per word. Immutable once built.
class EmbeddingStore {
 public:
  // Validates shape, finiteness and vocabulary uniqueness.
  EmbeddingStore(std::string name, std::size_t dimension, std::vector<std::string> words,
                 std::span<const double> values, Precision precision = Precision::f32);

  const std::string& name() const noexcept { return name_; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return words_.size(); }
  const std::vector<std::string>& words() const noexcept { return words_; }
  const std::string& word(std::size_t index) const { return words_.at(index); }
  bool normalized() const noexcept { return normalized_; }
  Precision precision() const noexcept { return std::holds_alternative<std::vector<float>>(values_) ? Precision::f32 : Precision::f64; }

  // Number of repeated words skipped while loading (first occurrence wins).
  std::size_t skipped_duplicates() const noexcept { return skipped_duplicates_; }

  std::optional<std::size_t> index_of(std::string_view word) const;
  bool contains(std::string_view word) const { return index_of(word).has_value(); }

  // Row for an in-vocabulary word, nullopt otherwise.
  std::optional<std::vector<double>> lookup(std::string_view word) const;

  std::vector<double> row(std::size_t index) const;
  void copy_row(std::size_t index, std::span<double> out) const;

  EmbeddingStore renamed(std::string name) const;

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  EmbeddingStore() = default;

  friend EmbeddingStore normalize(const EmbeddingStore& store);
  friend EmbeddingStore load_embedding(std::istream& in, const EmbeddingSourceSpec& spec);

  std::string name_;
  std::size_t dimension_ = 0;
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> index_;
  std::variant<std::vector<float>, std::vector<double>> values_;
  bool normalized_ = false;
  std::size_t skipped_duplicates_ = 0;
};

EmbeddingStore load_embedding(const EmbeddingSourceSpec& spec);
EmbeddingStore load_embedding(std::istream& in, const EmbeddingSourceSpec& spec);

// Divides every row by its Euclidean norm. A zero row is an InvalidArgument
// naming the word. Normalizing an already normalized store returns a copy.
EmbeddingStore normalize(const EmbeddingStore& store);

// Every entry an independent N(0, 1) draw. Entry (word i, component j) is
// gaussian_at(key, i * dimension + j), so rows can be generated in any order.
EmbeddingStore random_gaussian_embedding(std::vector<std::string> vocabulary,
                                         std::size_t dimension, std::uint64_t seed,
                                         std::string name = "gaussian",
                                         Precision precision = Precision::f32);

// Synthetic vocabulary "w000000", "w000001", ...
std::vector<std::string> synthetic_vocabulary(std::size_t count, std::string_view prefix = "w");

// Writes `word v1 ... vd` lines with 17 significant digits.
void write_embedding(const EmbeddingStore& store, std::ostream& out, bool with_header = false);

}  // namespace learnability
