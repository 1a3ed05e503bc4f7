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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace learnability {

enum class Alternative { greater, less, two_sided };
enum class WilcoxonMethod { exact, normal };

std::string to_string(Alternative a);
std::string to_string(WilcoxonMethod m);
Alternative parse_alternative(const std::string& s);

// Largest n for which p-values come from the exact null distribution.
inline constexpr std::size_t kWilcoxonExactLimit = 20;

// Relative gap under which two absolute differences share a rank. Absorbs
// rounding in values like 0.970 - 0.957 versus 0.973 - 0.960.
inline constexpr double kWilcoxonTieTolerance = 1e-9;
// |x - y| at or below this fraction of max(|x|, |y|) is a zero difference.
inline constexpr double kWilcoxonZeroTolerance = 1e-12;

struct WilcoxonOutcome {
  std::size_t n_effective = 0;
  std::size_t zeros_dropped = 0;
  double w_plus = 0.0;
  double w_minus = 0.0;
  // min(w_plus, w_minus) for two-sided, w_minus for greater, w_plus for less.
  double w_statistic = 0.0;
  double p_value = 1.0;
  WilcoxonMethod method = WilcoxonMethod::exact;
  Alternative alternative = Alternative::two_sided;
  bool has_ties = false;
  std::vector<double> ranks;  // rank of each kept pair, in input order
};

// Paired signed-rank test on d = x - y. Zero differences are dropped, tied
// |d| get average ranks. For n <= 20 the p-value is exact under the actual
// (possibly tied) rank multiset; above that, a normal approximation with tie
// and continuity corrections. "greater" tests whether x tends to exceed y.
WilcoxonOutcome wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y,
                                     Alternative alternative = Alternative::two_sided);

// Number of the 2^n sign assignments of `ranks` whose positive-rank sum is
// >= w_plus (greater), <= w_plus (less). Ranks must be multiples of 0.5.
struct SignedRankTail {
  unsigned long long at_least = 0;
  unsigned long long at_most = 0;
  unsigned long long total = 0;
};
SignedRankTail signed_rank_tails(std::span<const double> ranks, double w_plus);

// Classical table critical value for untied data: the largest W with
// P(W <= critical) <= alpha (one-sided) or alpha / 2 (two-sided). nullopt when
// no W is significant at that n. Supports n in [1, 30].
std::optional<int> wilcoxon_critical_value(std::size_t n, double alpha, bool two_sided);

}  // namespace learnability
