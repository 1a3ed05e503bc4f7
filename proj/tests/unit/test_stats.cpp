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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "learnability/error.hpp"
#include "learnability/random.hpp"
#include "learnability/stats.hpp"

using namespace learnability;

namespace {

// Literal oracle: rank |d| by hand, then walk all 2^n sign patterns.
struct Enumerated {
  double w_plus = 0.0;
  double p_greater = 0.0;
  double p_less = 0.0;
};

Enumerated enumerate(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> d;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != y[i]) d.push_back(x[i] - y[i]);
  }
  const std::size_t n = d.size();
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    double below = 0.0;
    double equal = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(d[j]) < std::abs(d[i])) below += 1.0;
      else if (std::abs(d[j]) == std::abs(d[i])) equal += 1.0;
    }
    rank[i] = below + (equal + 1.0) / 2.0;
  }
  Enumerated e;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] > 0) e.w_plus += rank[i];
  }
  double ge = 0.0;
  double le = 0.0;
  for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ULL << i)) s += rank[i];
    }
    if (s >= e.w_plus) ge += 1.0;
    if (s <= e.w_plus) le += 1.0;
  }
  const double total = std::ldexp(1.0, static_cast<int>(n));
  e.p_greater = ge / total;
  e.p_less = le / total;
  return e;
}

// Values on a coarse grid so ties and zero differences are common and exact.
void random_pairs(std::uint64_t seed, std::vector<double>& x, std::vector<double>& y) {
  RandomStream rs(seed);
  const std::size_t n = 2 + rs.below(11);
  x.clear();
  y.clear();
  for (std::size_t i = 0; i < n; ++i) {
    x.push_back(static_cast<double>(rs.below(9)) / 8.0);
    y.push_back(static_cast<double>(rs.below(9)) / 8.0);
  }
  if (x == y) x[0] += 0.5;
}

}  // namespace

TEST_CASE("three positive differences") {
  const std::vector<double> x{2, 4, 6};
  const std::vector<double> y{1, 2, 3};
  const auto r = wilcoxon_signed_rank(x, y, Alternative::greater);
  CHECK(r.w_minus == 0.0);
  CHECK(r.w_plus == 6.0);
  CHECK(r.w_statistic == 0.0);
  CHECK(r.p_value == 0.125);
  CHECK(r.method == WilcoxonMethod::exact);
}

TEST_CASE("a zero difference is dropped") {
  const std::vector<double> x{1, 2, 3};
  const std::vector<double> y{1, 1, 1};
  const auto r = wilcoxon_signed_rank(x, y, Alternative::greater);
  CHECK(r.n_effective == 2);
  CHECK(r.zeros_dropped == 1);
  CHECK(r.p_value == 0.25);
}

TEST_CASE("all-zero differences are reported as indistinguishable") {
  const std::vector<double> x{0.5, 0.6, 0.7};
  try {
    wilcoxon_signed_rank(x, x);
    FAIL("expected an error");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("indistinguishable") != std::string::npos);
  }
  CHECK_THROWS_AS(wilcoxon_signed_rank(std::vector<double>{1.0}, std::vector<double>{0.0}),
                  InvalidArgument);
  CHECK_THROWS_AS(wilcoxon_signed_rank(std::vector<double>{1.0, 2.0}, std::vector<double>{0.0}),
                  InvalidArgument);
}

TEST_CASE("exact p-values match brute-force enumeration (n <= 12, 200 samples)") {
  std::vector<double> x;
  std::vector<double> y;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    random_pairs(seed, x, y);
    const auto oracle = enumerate(x, y);
    const auto g = wilcoxon_signed_rank(x, y, Alternative::greater);
    const auto l = wilcoxon_signed_rank(x, y, Alternative::less);
    const auto t = wilcoxon_signed_rank(x, y, Alternative::two_sided);
    CHECK(g.w_plus == oracle.w_plus);
    CHECK(std::abs(g.p_value - oracle.p_greater) <= 1e-12);
    CHECK(std::abs(l.p_value - oracle.p_less) <= 1e-12);
    CHECK(std::abs(t.p_value - std::min(1.0, 2.0 * std::min(oracle.p_greater, oracle.p_less))) <= 1e-12);
  }
}

TEST_CASE("signed-rank identities (property)") {
  std::vector<double> x;
  std::vector<double> y;
  for (std::uint64_t seed = 1000; seed < 1200; ++seed) {
    random_pairs(seed, x, y);
    const auto g = wilcoxon_signed_rank(x, y, Alternative::greater);
    const auto l = wilcoxon_signed_rank(x, y, Alternative::less);
    const double n = static_cast<double>(g.n_effective);
    CHECK(g.w_plus + g.w_minus == n * (n + 1) / 2);
    CHECK(g.p_value + l.p_value >= 1.0);

    // Swapping the samples swaps the statistics and the one-sided p-values.
    const auto swapped = wilcoxon_signed_rank(y, x, Alternative::less);
    CHECK(swapped.w_plus == g.w_minus);
    CHECK(swapped.p_value == g.p_value);

    // Positive rescaling changes nothing.
    std::vector<double> sx;
    std::vector<double> sy;
    for (double v : x) sx.push_back(v * 3.5);
    for (double v : y) sy.push_back(v * 3.5);
    const auto scaled = wilcoxon_signed_rank(sx, sy, Alternative::greater);
    CHECK(scaled.w_plus == g.w_plus);
    CHECK(scaled.p_value == g.p_value);
  }
}

TEST_CASE("normal approximation above the exact limit") {
  std::vector<double> x;
  for (int i = 0; i < 25; ++i) {
    const double mag = static_cast<double>((i * 37) % 25 + 1);
    x.push_back((i * 7) % 3 != 0 ? mag : -mag);
  }
  const std::vector<double> y(25, 0.0);
  const auto g = wilcoxon_signed_rank(x, y, Alternative::greater);
  CHECK(g.method == WilcoxonMethod::normal);
  CHECK(g.w_plus == 220.0);
  // Reference values from a standard statistics package (continuity-corrected).
  CHECK(g.p_value == doctest::Approx(0.06255247892671795).epsilon(1e-10));
  CHECK(wilcoxon_signed_rank(x, y, Alternative::less).p_value ==
        doctest::Approx(0.9406910247353513).epsilon(1e-10));
  const auto t = wilcoxon_signed_rank(x, y, Alternative::two_sided);
  CHECK(t.w_statistic == 105.0);
  CHECK(t.p_value == doctest::Approx(0.1251049578534359).epsilon(1e-10));
}

TEST_CASE("tail counts") {
  const std::vector<double> ranks{1, 2, 3};
  const auto t = signed_rank_tails(ranks, 6.0);
  CHECK(t.total == 8);
  CHECK(t.at_least == 1);
  CHECK(t.at_most == 8);
  const std::vector<double> half{1.5, 1.5, 3};
  const auto h = signed_rank_tails(half, 3.0);
  CHECK(h.at_least == 5);
  CHECK(h.at_most == 5);
  CHECK_THROWS_AS(signed_rank_tails(std::vector<double>{1.25}, 0.0), InvalidArgument);
}

TEST_CASE("critical values") {
  CHECK(wilcoxon_critical_value(10, 0.01, false) == 5);
  CHECK(wilcoxon_critical_value(10, 0.05, false) == 10);
  CHECK(wilcoxon_critical_value(10, 0.05, true) == 8);
  CHECK(wilcoxon_critical_value(20, 0.05, true) == 52);
  CHECK_FALSE(wilcoxon_critical_value(4, 0.05, false).has_value());
  CHECK(wilcoxon_critical_value(5, 0.05, false) == 0);
  CHECK_THROWS_AS(wilcoxon_critical_value(31, 0.05, false), InvalidArgument);
  CHECK_THROWS_AS(wilcoxon_critical_value(10, 1.5, false), InvalidArgument);
}

TEST_CASE("ten-concept AUC comparison with near-tied differences") {
  // Per-concept AUCs of two embeddings; the differences contain tie pairs that
  // only agree up to rounding (0.013 twice, 0.023 twice).
  const std::vector<double> a{0.965, 0.973, 0.970, 0.974, 0.961, 0.958, 0.973, 0.970, 0.963, 0.975};
  const std::vector<double> b{0.961, 0.965, 0.957, 0.960, 0.971, 0.960, 0.960, 0.947, 0.948, 0.952};
  const auto r = wilcoxon_signed_rank(a, b, Alternative::greater);
  CHECK(r.n_effective == 10);
  CHECK(r.has_ties);
  CHECK(r.w_plus == 50.0);
  CHECK(r.w_minus == 5.0);
  CHECK(r.w_statistic == 5.0);
  CHECK(r.p_value == 9.0 / 1024.0);
}

TEST_CASE("alternative names") {
  CHECK(parse_alternative("greater") == Alternative::greater);
  CHECK(parse_alternative("two-sided") == Alternative::two_sided);
  CHECK(to_string(Alternative::less) == "less");
  CHECK_THROWS_AS(parse_alternative("sideways"), InputError);
}
