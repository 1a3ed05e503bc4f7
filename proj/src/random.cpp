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

#include "learnability/random.hpp"

#include <cmath>
#include <numbers>
#include <unordered_map>

namespace learnability {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

}  // namespace

std::uint64_t derive_key(std::uint64_t master_seed,
                         std::initializer_list<std::string_view> labels,
                         std::uint64_t index) {
  std::uint64_t h = finalize64(master_seed ^ kFnvOffset);
  for (std::string_view label : labels) {
    std::uint64_t fnv = kFnvOffset;
    for (unsigned char c : label) {
      fnv = (fnv ^ c) * kFnvPrime;
    }
    // Length is mixed in so ("ab", "c") and ("a", "bc") differ.
    h = finalize64(h + kGoldenGamma * (fnv ^ label.size()));
  }
  return finalize64(h + kGoldenGamma * finalize64(index + 1));
}

double gaussian_at(std::uint64_t key, std::uint64_t i) noexcept {
  // Box-Muller, cosine branch only, so each deviate owns a fixed counter pair.
  const double u1 = static_cast<double>((counter_bits(key, 2 * i) >> 11) + 1) * 0x1.0p-53;
  const double u2 = to_unit_interval(counter_bits(key, 2 * i + 1));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RandomStream::below(std::uint64_t bound) noexcept {
  // Lemire's multiply-and-reject.
  std::uint64_t x = next_u64();
  auto m = static_cast<unsigned __int128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<unsigned __int128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::vector<std::uint64_t> sample_without_replacement(RandomStream& stream,
                                                      std::uint64_t population,
                                                      std::uint64_t count) {
  std::vector<std::uint64_t> out;
  out.reserve(count);
  std::unordered_map<std::uint64_t, std::uint64_t> displaced;
  auto slot = [&](std::uint64_t i) {
    auto it = displaced.find(i);
    return it == displaced.end() ? i : it->second;
  };
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t j = i + stream.below(population - i);
    const std::uint64_t picked = slot(j);
    displaced[j] = slot(i);
    out.push_back(picked);
  }
  return out;
}

std::uint64_t complement_element(std::uint64_t rank,
                                 std::span<const std::uint64_t> sorted_excluded) noexcept {
  std::uint64_t idx = rank;
  for (std::uint64_t e : sorted_excluded) {
    if (e > idx) break;
    ++idx;
  }
  return idx;
}

}  // namespace learnability
