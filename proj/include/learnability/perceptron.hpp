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
#include <string>
#include <vector>

#include "learnability/embedding_store.hpp"
#include "learnability/splitter.hpp"

namespace learnability {

struct TrainConfig {
  double learning_rate = 0.1;
  int epochs = 100;
  // Training stops once the mean loss decreases by less than this.
  double early_stop_tol = 1e-6;
  // Coefficient of 0.5 * l2 * |weights|^2 added to the loss; 0 disables it.
  double l2 = 0.0;
};

void validate(const TrainConfig& cfg);

struct PerceptronModel {
  std::vector<double> weights;
  double bias = 0.0;
  // Mean loss at the start of each epoch.
  std::vector<double> loss_trace;
  int epochs_run = 0;
  double final_learning_rate = 0.0;
};

// Row-major design matrix with 0/1 labels.
struct LabeledBatch {
  std::size_t dimension = 0;
  std::vector<double> features;
  std::vector<double> labels;

  std::size_t rows() const noexcept { return labels.size(); }
  std::span<const double> row(std::size_t i) const {
    return std::span(features).subspan(i * dimension, dimension);
  }
};

// Positives first (label 1), then negatives (label 0).
LabeledBatch make_batch(const EmbeddingStore& store, std::span<const std::size_t> positives,
                        std::span<const std::size_t> negatives);

struct LossGradient {
  double loss = 0.0;
  std::vector<double> weights;
  double bias = 0.0;
};

// Mean binary cross-entropy of sigmoid(<x, w> + b) over the batch and its
// gradient with respect to (w, b).
LossGradient cross_entropy(const LabeledBatch& batch, std::span<const double> weights,
                           double bias, double l2 = 0.0);

// Logistic function, evaluated without overflow for any finite z.
double sigmoid(double z) noexcept;

// Full-batch gradient descent from zero weights. The learning rate is halved
// whenever the epoch loss goes up.
PerceptronModel train(const LabeledBatch& batch, const TrainConfig& cfg);
PerceptronModel train(const EvaluationSplit& split, const EmbeddingStore& store,
                      const TrainConfig& cfg);

double score(const PerceptronModel& model, std::span<const double> x);
std::vector<double> score(const PerceptronModel& model, const EmbeddingStore& store,
                          std::span<const std::size_t> indices);
// Throws InvalidArgument for out-of-vocabulary words.
std::vector<double> score(const PerceptronModel& model, const EmbeddingStore& store,
                          std::span<const std::string> words);

}  // namespace learnability
