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

#include "learnability/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>

#include "learnability/error.hpp"
#include "learnability/parallel.hpp"
#include "learnability/random.hpp"
#include "learnability/splitter.hpp"

namespace learnability {

namespace {

constexpr double MetricValues::*kMetrics[] = {
    &MetricValues::accuracy, &MetricValues::recall, &MetricValues::fpr,
    &MetricValues::precision, &MetricValues::auc,
};

// Rethrows the in-flight exception with `context` prepended, keeping the
// input/compute distinction.
[[noreturn]] void rethrow_with_context(const std::string& context) {
  try {
    throw;
  } catch (const InputError& e) {
    throw InputError(context + ": " + e.what());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(context + ": " + e.what());
  } catch (const std::exception& e) {
    throw ComputeError(context + ": " + e.what());
  }
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.iterations < 1) throw InvalidArgument("iterations must be at least 1");
  if (cfg.random_list_count < 1) throw InvalidArgument("random list count must be at least 1");
  if (cfg.random_list_size < kMinResolvedConceptSize) {
    throw InvalidArgument("random list size must be at least " +
                          std::to_string(kMinResolvedConceptSize));
  }
  if (!std::isfinite(cfg.threshold)) throw InvalidArgument("threshold must be finite");
  validate(cfg.train);
}

EmbeddingStore prepare_store(const EmbeddingStore& store, const ExperimentConfig& cfg) {
  return cfg.normalize ? normalize(store) : store;
}

std::vector<double> NullDistribution::values(double MetricValues::*metric) const {
  std::vector<double> out;
  out.reserve(lists.size());
  for (const auto& l : lists) out.push_back(l.mean.*metric);
  return out;
}

MetricValues mean_of(std::span<const MetricsRecord> records) {
  MetricValues m;
  if (records.empty()) return m;
  for (auto metric : kMetrics) {
    double sum = 0.0;
    for (const auto& r : records) sum += r.values.*metric;
    m.*metric = sum / static_cast<double>(records.size());
  }
  return m;
}

MetricsRecord run_iteration(const EmbeddingStore& store, const ResolvedConcept& resolved,
                            const ExperimentConfig& cfg, std::size_t iteration_index) {
  const EvaluationSplit split = make_split(resolved, store, iteration_index, cfg.master_seed);
  const PerceptronModel model = train(split, store, cfg.train);

  std::vector<double> scores = score(model, store, split.test_pos);
  const std::vector<double> neg = score(model, store, split.test_neg);
  scores.insert(scores.end(), neg.begin(), neg.end());
  std::vector<bool> labels(split.test_pos.size(), true);
  labels.resize(scores.size(), false);
  return evaluate_scores(scores, labels, cfg.threshold);
}

AggregateResult run_concept(const EmbeddingStore& store, const ResolvedConcept& resolved,
                            const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.normalize && !store.normalized()) {
    throw InvalidArgument("configuration asks for normalized inputs but embedding '" +
                          store.name() + "' is not normalized (see prepare_store)");
  }
  std::vector<MetricsRecord> records(cfg.iterations);
  parallel_for(cfg.iterations, cfg.workers, [&](std::size_t i) {
    try {
      records[i] = run_iteration(store, resolved, cfg, i);
    } catch (...) {
      rethrow_with_context("concept '" + resolved.list.name + "', iteration " +
                           std::to_string(i));
    }
  });

  AggregateResult out;
  out.concept_name = resolved.list.name;
  out.embedding = store.name();
  out.raw_size = resolved.list.words.size();
  out.resolved_size = resolved.size();
  out.iterations = records.size();
  out.mean = mean_of(records);
  if (records.size() > 1) {
    for (auto metric : kMetrics) {
      double ss = 0.0;
      for (const auto& r : records) {
        const double d = r.values.*metric - out.mean.*metric;
        ss += d * d;
      }
      out.stddev.*metric = std::sqrt(ss / static_cast<double>(records.size() - 1));
    }
  }
  for (const auto& r : records) out.precision_undefined += r.precision_undefined ? 1 : 0;
  if (cfg.keep_records) out.records = std::move(records);
  return out;
}

NullDistribution run_null(const EmbeddingStore& store, const ExperimentConfig& cfg,
                          std::span<const std::string> exclude,
                          std::optional<std::size_t> list_size) {
  validate(cfg);
  const std::size_t size = list_size.value_or(cfg.random_list_size);
  if (size < kMinResolvedConceptSize) {
    throw InvalidArgument("random list size must be at least " +
                          std::to_string(kMinResolvedConceptSize));
  }

  ExperimentConfig inner = cfg;
  inner.workers = 1;
  inner.keep_records = false;

  NullDistribution out;
  out.embedding = store.name();
  out.list_size = size;
  out.lists.resize(cfg.random_list_count);
  const std::string size_label = std::to_string(size);
  parallel_for(cfg.random_list_count, cfg.workers, [&](std::size_t j) {
    const std::uint64_t seed = derive_key(cfg.master_seed, {"null-list", size_label}, j);
    const std::string name = "random-" + size_label + "-" + std::to_string(j);
    try {
      const ResolvedConcept list = random_concept(store, size, exclude, seed, name);
      out.lists[j] = run_concept(store, list, inner);
    } catch (...) {
      rethrow_with_context("random list " + std::to_string(j));
    }
  });

  for (auto metric : kMetrics) {
    double best = -1.0;
    double sum = 0.0;
    for (const auto& l : out.lists) {
      best = std::max(best, l.mean.*metric);
      sum += l.mean.*metric;
    }
    out.max.*metric = best;
    out.mean.*metric = sum / static_cast<double>(out.lists.size());
  }
  return out;
}

EmpiricalPValue empirical_p_value(double observed, std::span<const double> null_values) {
  if (null_values.empty()) throw InvalidArgument("null distribution is empty");
  EmpiricalPValue p;
  p.null_count = null_values.size();
  p.exceedances = static_cast<std::size_t>(
      std::count_if(null_values.begin(), null_values.end(), [&](double v) { return v >= observed; }));
  p.value = static_cast<double>(1 + p.exceedances) / static_cast<double>(1 + p.null_count);
  return p;
}

std::string EmpiricalPValue::display() const {
  char buf[32];
  if (exceedances == 0) {
    // Smallest 3-decimal number not below 1 / (N + 1).
    const double bound = std::ceil(value * 1000.0 - 1e-9) / 1000.0;
    std::snprintf(buf, sizeof buf, "< %.3f", bound);
  } else {
    std::snprintf(buf, sizeof buf, "%.3f", value);
  }
  return buf;
}

}  // namespace learnability
