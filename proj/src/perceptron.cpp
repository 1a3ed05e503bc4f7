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

#include "learnability/perceptron.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "learnability/error.hpp"

namespace learnability {

namespace {

// log(1 + e^z)
double softplus(double z) noexcept {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

void validate(const TrainConfig& cfg) {
  if (!(cfg.learning_rate > 0.0) || !std::isfinite(cfg.learning_rate)) {
    throw InvalidArgument("learning rate must be positive");
  }
  if (cfg.epochs < 1) throw InvalidArgument("epochs must be at least 1");
  if (!(cfg.early_stop_tol >= 0.0)) throw InvalidArgument("early-stop tolerance must be >= 0");
  if (!(cfg.l2 >= 0.0)) throw InvalidArgument("l2 coefficient must be >= 0");
}

double sigmoid(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

LabeledBatch make_batch(const EmbeddingStore& store, std::span<const std::size_t> positives,
                        std::span<const std::size_t> negatives) {
  LabeledBatch batch;
  batch.dimension = store.dimension();
  const std::size_t n = positives.size() + negatives.size();
  batch.features.resize(n * batch.dimension);
  batch.labels.reserve(n);
  std::size_t r = 0;
  for (std::size_t idx : positives) {
    store.copy_row(idx, std::span(batch.features).subspan(r++ * batch.dimension, batch.dimension));
    batch.labels.push_back(1.0);
  }
  for (std::size_t idx : negatives) {
    store.copy_row(idx, std::span(batch.features).subspan(r++ * batch.dimension, batch.dimension));
    batch.labels.push_back(0.0);
  }
  return batch;
}

LossGradient cross_entropy(const LabeledBatch& batch, std::span<const double> weights,
                           double bias, double l2) {
  if (weights.size() != batch.dimension) throw InvalidArgument("weight vector has wrong length");
  const std::size_t n = batch.rows();
  if (n == 0) throw InvalidArgument("empty training batch");
  LossGradient out;
  out.weights.assign(batch.dimension, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = batch.row(i);
    const double z = dot(x, weights) + bias;
    const double y = batch.labels[i];
    // -[y log s(z) + (1 - y) log(1 - s(z))] = y softplus(-z) + (1 - y) softplus(z)
    out.loss += y * softplus(-z) + (1.0 - y) * softplus(z);
    const double residual = sigmoid(z) - y;
    for (std::size_t k = 0; k < x.size(); ++k) out.weights[k] += residual * x[k];
    out.bias += residual;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  out.loss *= inv_n;
  out.bias *= inv_n;
  for (std::size_t k = 0; k < out.weights.size(); ++k) {
    out.weights[k] = out.weights[k] * inv_n + l2 * weights[k];
  }
  if (l2 > 0.0) out.loss += 0.5 * l2 * dot(weights, weights);
  return out;
}

PerceptronModel train(const LabeledBatch& batch, const TrainConfig& cfg) {
  validate(cfg);
  PerceptronModel model;
  model.weights.assign(batch.dimension, 0.0);
  double lr = cfg.learning_rate;
  double previous = std::numeric_limits<double>::infinity();
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const LossGradient g = cross_entropy(batch, model.weights, model.bias, cfg.l2);
    if (!std::isfinite(g.loss)) {
      std::ostringstream msg;
      msg << "non-finite training loss at epoch " << epoch << " (learning rate " << lr << ")";
      throw ComputeError(msg.str());
    }
    model.loss_trace.push_back(g.loss);
    if (epoch > 0) {
      if (g.loss > previous) {
        lr *= 0.5;
      } else if (previous - g.loss < cfg.early_stop_tol) {
        break;
      }
    }
    previous = g.loss;
    for (std::size_t k = 0; k < model.weights.size(); ++k) model.weights[k] -= lr * g.weights[k];
    model.bias -= lr * g.bias;
    ++model.epochs_run;
  }
  model.final_learning_rate = lr;
  return model;
}

PerceptronModel train(const EvaluationSplit& split, const EmbeddingStore& store,
                      const TrainConfig& cfg) {
  return train(make_batch(store, split.train_pos, split.train_neg), cfg);
}

double score(const PerceptronModel& model, std::span<const double> x) {
  if (x.size() != model.weights.size()) throw InvalidArgument("input has wrong dimension");
  return sigmoid(dot(x, model.weights) + model.bias);
}

std::vector<double> score(const PerceptronModel& model, const EmbeddingStore& store,
                          std::span<const std::size_t> indices) {
  std::vector<double> row(store.dimension());
  std::vector<double> out;
  out.reserve(indices.size());
  for (std::size_t idx : indices) {
    store.copy_row(idx, row);
    out.push_back(score(model, row));
  }
  return out;
}

std::vector<double> score(const PerceptronModel& model, const EmbeddingStore& store,
                          std::span<const std::string> words) {
  std::vector<double> row(store.dimension());
  std::vector<double> out;
  out.reserve(words.size());
  for (const auto& w : words) {
    auto idx = store.index_of(w);
    if (!idx) {
      throw InvalidArgument("cannot score '" + w + "': not in embedding '" + store.name() + "'");
    }
    store.copy_row(*idx, row);
    out.push_back(score(model, row));
  }
  return out;
}

}  // namespace learnability
