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

#include "learnability/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "learnability/error.hpp"

namespace learnability {

namespace {

void check_inputs(std::span<const double> scores, const std::vector<bool>& labels) {
  if (scores.size() != labels.size()) {
    throw InvalidArgument("scores and labels have different lengths");
  }
  for (double s : scores) {
    if (std::isnan(s)) throw InvalidArgument("scores must not be NaN");
  }
  const auto positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), true));
  if (positives == 0 || positives == labels.size()) {
    throw InvalidArgument("metrics need at least one positive and one negative label");
  }
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MetricsRecord confusion_metrics(std::span<const double> scores, const std::vector<bool>& labels,
                                double threshold) {
  check_inputs(scores, labels);
  MetricsRecord r;
  r.threshold = threshold;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    if (labels[i]) {
      predicted ? ++r.tp : ++r.fn;
    } else {
      predicted ? ++r.fp : ++r.tn;
    }
  }
  r.values.accuracy = ratio(r.tp + r.tn, scores.size());
  r.values.recall = ratio(r.tp, r.tp + r.fn);
  r.values.fpr = ratio(r.fp, r.fp + r.tn);
  r.values.precision = ratio(r.tp, r.tp + r.fp);
  r.precision_undefined = r.tp + r.fp == 0;
  return r;
}

double roc_auc(std::span<const double> scores, const std::vector<bool>& labels) {
  check_inputs(scores, labels);
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of (1-based, tie-averaged) ranks of the positives, doubled to stay integral.
  std::size_t doubled_rank_sum = 0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    // Ranks i+1 .. j share the average (i + 1 + j) / 2.
    const std::size_t doubled_avg = i + 1 + j;
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]]) {
        doubled_rank_sum += doubled_avg;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = n - positives;
  // U = R_pos - P(P+1)/2, all doubled.
  const double doubled_u =
      static_cast<double>(doubled_rank_sum) - static_cast<double>(positives * (positives + 1));
  return doubled_u / (2.0 * static_cast<double>(positives) * static_cast<double>(negatives));
}

MetricsRecord evaluate_scores(std::span<const double> scores, const std::vector<bool>& labels,
                              double threshold) {
  MetricsRecord r = confusion_metrics(scores, labels, threshold);
  r.values.auc = roc_auc(scores, labels);
  return r;
}

}  // namespace learnability
