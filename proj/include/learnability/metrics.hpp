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
#include <span>
#include <vector>

namespace learnability {

inline constexpr double kDefaultThreshold = 0.5;

// The five reported quantities, in table order.
struct MetricValues {
  double accuracy = 0.0;
  double recall = 0.0;
  double fpr = 0.0;
  double precision = 0.0;
  double auc = 0.0;
};

struct MetricsRecord {
  MetricValues values;
  double threshold = kDefaultThreshold;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
  // True when nothing was predicted positive and precision fell back to 0.
  bool precision_undefined = false;
};

// Thresholded metrics; a score >= threshold predicts positive. Precision is
// 0 when nothing is predicted positive. values.auc is left at 0.
MetricsRecord confusion_metrics(std::span<const double> scores, const std::vector<bool>& labels,
                                double threshold = kDefaultThreshold);

// Area under the ROC curve in Mann-Whitney form: the fraction of
// (positive, negative) pairs where the positive scores higher, ties counting
// one half. O(n log n) via average ranks.
double roc_auc(std::span<const double> scores, const std::vector<bool>& labels);

// confusion_metrics with the AUC filled in.
MetricsRecord evaluate_scores(std::span<const double> scores, const std::vector<bool>& labels,
                              double threshold = kDefaultThreshold);

}  // namespace learnability
