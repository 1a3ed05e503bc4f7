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

#include "learnability/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "learnability/error.hpp"

namespace learnability {

std::string to_string(Alternative a) {
  switch (a) {
    case Alternative::greater: return "greater";
    case Alternative::less: return "less";
    case Alternative::two_sided: return "two-sided";
  }
  return "?";
}

std::string to_string(WilcoxonMethod m) {
  return m == WilcoxonMethod::exact ? "exact" : "normal-approximation";
}

Alternative parse_alternative(const std::string& s) {
  if (s == "greater") return Alternative::greater;
  if (s == "less") return Alternative::less;
  if (s == "two-sided" || s == "two_sided") return Alternative::two_sided;
  throw InputError("unknown alternative '" + s + "' (expected greater, less or two-sided)");
}

namespace {

// Count of sign assignments per doubled positive-rank sum.
std::vector<unsigned long long> doubled_sum_distribution(std::span<const long long> doubled) {
  long long total = 0;
  for (long long r : doubled) total += r;
  std::vector<unsigned long long> counts(static_cast<std::size_t>(total) + 1, 0);
  counts[0] = 1;
  long long reach = 0;
  for (long long r : doubled) {
    for (long long s = reach; s >= 0; --s) {
      if (counts[static_cast<std::size_t>(s)] != 0) {
        counts[static_cast<std::size_t>(s + r)] += counts[static_cast<std::size_t>(s)];
      }
    }
    reach += r;
  }
  return counts;
}

std::vector<long long> doubled_ranks(std::span<const double> ranks) {
  std::vector<long long> out;
  out.reserve(ranks.size());
  for (double r : ranks) {
    const double d = 2.0 * r;
    if (d < 0.0 || std::abs(d - std::round(d)) > 1e-9) {
      throw InvalidArgument("signed ranks must be non-negative multiples of 0.5");
    }
    out.push_back(std::llround(d));
  }
  return out;
}

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

SignedRankTail signed_rank_tails(std::span<const double> ranks, double w_plus) {
  if (ranks.size() > 62) throw InvalidArgument("too many ranks for exact enumeration");
  const auto doubled = doubled_ranks(ranks);
  const auto counts = doubled_sum_distribution(doubled);
  const long long observed = std::llround(2.0 * w_plus);
  SignedRankTail t;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    const auto ss = static_cast<long long>(s);
    t.total += counts[s];
    if (ss >= observed) t.at_least += counts[s];
    if (ss <= observed) t.at_most += counts[s];
  }
  return t;
}

WilcoxonOutcome wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y,
                                     Alternative alternative) {
  if (x.size() != y.size()) {
    throw InvalidArgument("paired samples have different lengths (" + std::to_string(x.size()) +
                          " vs " + std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) throw InvalidArgument("at least two pairs are required");

  WilcoxonOutcome out;
  out.alternative = alternative;
  std::vector<double> diffs;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw InvalidArgument("paired samples must be finite");
    }
    const double d = x[i] - y[i];
    const double scale = std::max(std::abs(x[i]), std::abs(y[i]));
    if (std::abs(d) <= kWilcoxonZeroTolerance * scale) {
      ++out.zeros_dropped;
      continue;
    }
    diffs.push_back(d);
  }
  const std::size_t n = diffs.size();
  if (n == 0) throw InvalidArgument("all-zero differences: the samples are indistinguishable");
  out.n_effective = n;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return std::abs(diffs[a]) < std::abs(diffs[b]); });
  out.ranks.assign(n, 0.0);
  double tie_correction = 0.0;  // sum of t^3 - t over tie groups
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && std::abs(diffs[order[j]]) - std::abs(diffs[order[j - 1]]) <=
                        kWilcoxonTieTolerance * std::abs(diffs[order[j]])) {
      ++j;
    }
    const double avg = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) out.ranks[order[k]] = avg;
    const auto t = static_cast<double>(j - i);
    if (j - i > 1) {
      out.has_ties = true;
      tie_correction += t * t * t - t;
    }
    i = j;
  }
  for (std::size_t i = 0; i < n; ++i) (diffs[i] > 0 ? out.w_plus : out.w_minus) += out.ranks[i];

  switch (alternative) {
    case Alternative::greater: out.w_statistic = out.w_minus; break;
    case Alternative::less: out.w_statistic = out.w_plus; break;
    case Alternative::two_sided: out.w_statistic = std::min(out.w_plus, out.w_minus); break;
  }

  double p_greater = 1.0;
  double p_less = 1.0;
  if (n <= kWilcoxonExactLimit) {
    out.method = WilcoxonMethod::exact;
    const SignedRankTail t = signed_rank_tails(out.ranks, out.w_plus);
    p_greater = static_cast<double>(t.at_least) / static_cast<double>(t.total);
    p_less = static_cast<double>(t.at_most) / static_cast<double>(t.total);
  } else {
    out.method = WilcoxonMethod::normal;
    const auto nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_correction / 48.0;
    const double sd = std::sqrt(var);
    p_greater = normal_upper_tail((out.w_plus - mean - 0.5) / sd);
    p_less = 1.0 - normal_upper_tail((out.w_plus - mean + 0.5) / sd);
  }
  switch (alternative) {
    case Alternative::greater: out.p_value = p_greater; break;
    case Alternative::less: out.p_value = p_less; break;
    case Alternative::two_sided: out.p_value = std::min(1.0, 2.0 * std::min(p_greater, p_less)); break;
  }
  out.p_value = std::clamp(out.p_value, std::numeric_limits<double>::min(), 1.0);
  return out;
}

std::optional<int> wilcoxon_critical_value(std::size_t n, double alpha, bool two_sided) {
  if (n < 1 || n > 30) throw InvalidArgument("critical values are tabulated for 1 <= n <= 30");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  std::vector<long long> doubled(n);
  for (std::size_t i = 0; i < n; ++i) doubled[i] = 2 * static_cast<long long>(i + 1);
  const auto counts = doubled_sum_distribution(doubled);
  const double level = two_sided ? alpha / 2.0 : alpha;
  const double total = std::ldexp(1.0, static_cast<int>(n));
  std::optional<int> critical;
  unsigned long long cumulative = 0;
  for (std::size_t s = 0; s < counts.size(); s += 2) {
    cumulative += counts[s];
    if (static_cast<double>(cumulative) / total > level) break;
    critical = static_cast<int>(s / 2);
  }
  return critical;
}

}  // namespace learnability
