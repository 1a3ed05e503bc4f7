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

#include "learnability/embedding_store.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <type_traits>
#include <utility>

#include "learnability/error.hpp"
#include "learnability/random.hpp"

namespace learnability {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_unsigned(std::string_view s, std::uint64_t& value) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  return ec == std::errc() && ptr == end;
}

bool parse_double(std::string_view s, double& value) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  return ec == std::errc() && ptr == end && std::isfinite(value);
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

template <class T>
void append_values(std::vector<T>& dst, std::span<const double> src) {
  for (double v : src) dst.push_back(static_cast<T>(v));
}

}  // namespace

EmbeddingStore::EmbeddingStore(std::string name, std::size_t dimension,
                               std::vector<std::string> words, std::span<const double> values,
                               Precision precision)
    : name_(std::move(name)), dimension_(dimension), words_(std::move(words)) {
  if (dimension_ == 0) throw InvalidArgument("embedding dimension must be positive");
  if (values.size() != words_.size() * dimension_) {
    throw InvalidArgument("embedding '" + name_ + "': expected " +
                          std::to_string(words_.size() * dimension_) + " values, got " +
                          std::to_string(values.size()));
  }
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], i).second) {
      throw InvalidArgument("embedding '" + name_ + "': duplicate word '" + words_[i] + "'");
    }
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) {
      throw InvalidArgument("embedding '" + name_ + "': non-finite value for word '" +
                            words_[k / dimension_] + "'");
    }
  }
  if (precision == Precision::f32) {
    std::vector<float> v;
    v.reserve(values.size());
    append_values(v, values);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!std::isfinite(v[k])) {
        throw InvalidArgument("embedding '" + name_ + "': value overflows 32-bit storage for word '" +
                              words_[k / dimension_] + "'");
      }
    }
    values_ = std::move(v);
  } else {
    values_ = std::vector<double>(values.begin(), values.end());
  }
}

std::optional<std::size_t> EmbeddingStore::index_of(std::string_view word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::vector<double>> EmbeddingStore::lookup(std::string_view word) const {
  auto idx = index_of(word);
  if (!idx) return std::nullopt;
  return row(*idx);
}

std::vector<double> EmbeddingStore::row(std::size_t index) const {
  std::vector<double> out(dimension_);
  copy_row(index, out);
  return out;
}

void EmbeddingStore::copy_row(std::size_t index, std::span<double> out) const {
  if (index >= words_.size()) throw InvalidArgument("row index out of range");
  if (out.size() != dimension_) throw InvalidArgument("row buffer has wrong dimension");
  std::visit(
      [&](const auto& values) {
        const auto* src = values.data() + index * dimension_;
        std::copy(src, src + dimension_, out.begin());
      },
      values_);
}

EmbeddingStore EmbeddingStore::renamed(std::string name) const {
  EmbeddingStore copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

EmbeddingStore load_embedding(const EmbeddingSourceSpec& spec) {
  if (spec.max_words && *spec.max_words == 0) {
    throw InvalidArgument("max_words must be at least 1");
  }
  std::ifstream in(spec.path, std::ios::binary);
  if (!in) throw InputError("cannot open embedding file " + spec.path.string());
  return load_embedding(in, spec);
}

EmbeddingStore load_embedding(std::istream& in, const EmbeddingSourceSpec& spec) {
  if (spec.max_words && *spec.max_words == 0) {
    throw InvalidArgument("max_words must be at least 1");
  }
  const std::string source = spec.path.empty() ? spec.name : spec.path.string();

  EmbeddingStore store;
  store.name_ = spec.name;
  std::vector<float> f32;
  std::vector<double> f64;
  std::vector<double> row;
  std::optional<std::uint64_t> header_dimension;

  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = split_fields(line);
    if (fields.empty()) continue;

    if (first_content_line) {
      first_content_line = false;
      std::uint64_t count = 0;
      std::uint64_t dim = 0;
      const bool looks_like_header = fields.size() == 2 && parse_unsigned(fields[0], count) &&
                                     parse_unsigned(fields[1], dim);
      if (spec.format == VectorFormat::header) {
        if (!looks_like_header || dim == 0) {
          throw ParseError(source, line_no, "expected header 'vocab_count dimension'");
        }
        header_dimension = dim;
        continue;
      }
      if (spec.format == VectorFormat::automatic && looks_like_header && dim > 0) {
        header_dimension = dim;
        continue;
      }
    }

    if (fields.size() < 2) {
      throw ParseError(source, line_no, "expected a word followed by at least one number");
    }
    const std::size_t dim = fields.size() - 1;
    if (store.dimension_ == 0) {
      if (header_dimension && *header_dimension != dim) {
        throw ParseError(source, line_no,
                         "dimension mismatch: header says " + std::to_string(*header_dimension) +
                             ", line has " + std::to_string(dim));
      }
      store.dimension_ = dim;
      row.resize(dim);
    } else if (dim != store.dimension_) {
      throw ParseError(source, line_no,
                       "dimension mismatch: expected " + std::to_string(store.dimension_) +
                           " values, found " + std::to_string(dim));
    }
    for (std::size_t k = 0; k < dim; ++k) {
      if (!parse_double(fields[k + 1], row[k])) {
        throw ParseError(source, line_no,
                         "non-numeric or non-finite value '" + std::string(fields[k + 1]) + "'");
      }
    }

    std::string word = spec.lowercase ? ascii_lower(fields[0]) : std::string(fields[0]);
    if (store.index_.contains(word)) {
      ++store.skipped_duplicates_;
      continue;
    }
    if (spec.precision == Precision::f32) {
      for (double v : row) {
        if (!std::isfinite(static_cast<float>(v))) {
          throw ParseError(source, line_no, "value overflows 32-bit storage");
        }
      }
      append_values(f32, row);
    } else {
      append_values(f64, row);
    }
    store.index_.emplace(word, store.words_.size());
    store.words_.push_back(std::move(word));
    if (spec.max_words && store.words_.size() >= *spec.max_words) break;
  }

  if (store.words_.empty()) throw InputError(source + ": no embedding vectors found");
  if (spec.precision == Precision::f32) {
    store.values_ = std::move(f32);
  } else {
    store.values_ = std::move(f64);
  }
  return store;
}

EmbeddingStore normalize(const EmbeddingStore& store) {
  EmbeddingStore out = store;
  if (store.normalized_) return out;
  const std::size_t d = store.dimension_;
  std::visit(
      [&](auto& values) {
        for (std::size_t i = 0; i < out.words_.size(); ++i) {
          auto* r = values.data() + i * d;
          double sq = 0.0;
          for (std::size_t k = 0; k < d; ++k) sq += static_cast<double>(r[k]) * r[k];
          const double norm = std::sqrt(sq);
          if (norm == 0.0) {
            throw InvalidArgument("zero vector for word '" + out.words_[i] + "'");
          }
          for (std::size_t k = 0; k < d; ++k) {
            r[k] = static_cast<std::remove_reference_t<decltype(r[k])>>(r[k] / norm);
          }
        }
      },
      out.values_);
  out.normalized_ = true;
  return out;
}

EmbeddingStore random_gaussian_embedding(std::vector<std::string> vocabulary,
                                         std::size_t dimension, std::uint64_t seed,
                                         std::string name, Precision precision) {
  if (dimension == 0) throw InvalidArgument("dimension must be at least 1");
  if (vocabulary.empty()) throw InvalidArgument("vocabulary must not be empty");
  const std::uint64_t key = derive_key(seed, {"gaussian-embedding"}, 0);
  std::vector<double> values(vocabulary.size() * dimension);
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = gaussian_at(key, k);
  return EmbeddingStore(std::move(name), dimension, std::move(vocabulary), values, precision);
}

std::vector<std::string> synthetic_vocabulary(std::size_t count, std::string_view prefix) {
  std::vector<std::string> words;
  words.reserve(count);
  char buf[32];
  for (std::size_t i = 0; i < count; ++i) {
    std::snprintf(buf, sizeof buf, "%06zu", i);
    words.push_back(std::string(prefix) + buf);
  }
  return words;
}

void write_embedding(const EmbeddingStore& store, std::ostream& out, bool with_header) {
  if (with_header) out << store.size() << ' ' << store.dimension() << '\n';
  std::vector<double> row(store.dimension());
  char buf[40];
  for (std::size_t i = 0; i < store.size(); ++i) {
    store.copy_row(i, row);
    out << store.word(i);
    for (double v : row) {
      std::snprintf(buf, sizeof buf, " %.17g", v);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace learnability
