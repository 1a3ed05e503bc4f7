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

// Counter-based random streams.
//
// Every random quantity in the toolkit is a pure function of a 64-bit key and
// a 64-bit counter: bits(key, i) = splitmix64_finalize(finalize(key) + (i + 1) * gamma),
// i.e. SplitMix64 evaluated at an arbitrary position. Keys are derived by
// hashing (master seed, labels, index), so any task can open its own stream
// without coordinating with other tasks, and results do not depend on the
// order in which tasks execute.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace learnability {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t finalize64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t counter_bits(std::uint64_t key, std::uint64_t counter) noexcept {
  return finalize64(finalize64(key) + (counter + 1) * kGoldenGamma);
}

// Uniform double in [0, 1) with 53 random bits.
constexpr double to_unit_interval(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Derives a stream key from a master seed, an ordered list of labels and an
// index. Distinct label sequences give unrelated keys.
std::uint64_t derive_key(std::uint64_t master_seed,
                         std::initializer_list<std::string_view> labels,
                         std::uint64_t index);

// Standard normal deviate at a counter position; consumes counters 2i and 2i+1.
double gaussian_at(std::uint64_t key, std::uint64_t i) noexcept;

// Sequential view over one counter-based stream.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t position() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept { return counter_bits(key_, counter_++); }
  double uniform() noexcept { return to_unit_interval(next_u64()); }

  // Unbiased integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  template <class T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Draws `count` distinct values from [0, population) in uniformly random
// order (a partial Fisher-Yates shuffle over a virtual array, O(count) memory).
std::vector<std::uint64_t> sample_without_replacement(RandomStream& stream,
                                                      std::uint64_t population,
                                                      std::uint64_t count);

// Maps a rank in the complement of `sorted_excluded` (ascending, unique, all
// < universe) to the corresponding element of [0, universe).
std::uint64_t complement_element(std::uint64_t rank,
                                 std::span<const std::uint64_t> sorted_excluded) noexcept;

}  // namespace learnability
