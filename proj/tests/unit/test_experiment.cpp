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
#include "learnability/experiment.hpp"
#include "learnability/random.hpp"

using namespace learnability;

namespace {

ExperimentConfig small_config(std::size_t iterations) {
  ExperimentConfig cfg;
  cfg.iterations = iterations;
  cfg.random_list_count = 5;
  cfg.random_list_size = 20;
  cfg.master_seed = 17;
  cfg.workers = 1;
  cfg.train.epochs = 30;
  return cfg;
}

ResolvedConcept leading_words(const EmbeddingStore& store, std::size_t n) {
  std::vector<std::string> words(store.words().begin(), store.words().begin() + n);
  return resolve(make_concept("lead", words), store);
}

// The first `positives` rows are N(3 e_1, I), the rest N(0, I).
EmbeddingStore separable_store(std::size_t vocab, std::size_t positives, std::size_t dim) {
  const auto key = derive_key(99, {"separable"}, 0);
  std::vector<double> values(vocab * dim);
  for (std::size_t i = 0; i < vocab; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      values[i * dim + k] = gaussian_at(key, i * dim + k) + (i < positives && k == 0 ? 3.0 : 0.0);
    }
  }
  return EmbeddingStore("separable", dim, synthetic_vocabulary(vocab), values);
}

}  // namespace

TEST_CASE("one iteration: the mean is the record") {
  const auto store = random_gaussian_embedding(synthetic_vocabulary(300), 8, 1);
  const auto c = leading_words(store, 20);
  const auto cfg = small_config(1);
  const auto r = run_concept(store, c, cfg);
  REQUIRE(r.records.size() == 1);
  CHECK(r.mean.accuracy == r.records[0].values.accuracy);
  CHECK(r.mean.recall == r.records[0].values.recall);
  CHECK(r.mean.fpr == r.records[0].values.fpr);
  CHECK(r.mean.precision == r.records[0].values.precision);
  CHECK(r.mean.auc == r.records[0].values.auc);
  CHECK(r.stddev.auc == 0.0);
  const auto direct = run_iteration(store, c, cfg, 0);
  CHECK(direct.values.auc == r.records[0].values.auc);
}

TEST_CASE("random Gaussian vectors carry no signal") {
  const auto store = random_gaussian_embedding(synthetic_vocabulary(3000), 50, 4);
  const auto c = leading_words(store, 60);
  const auto r = run_concept(store, c, small_config(200));
  CHECK(r.iterations == 200);
  CHECK(r.records.size() == 200);
  for (double m : {r.mean.accuracy, r.mean.recall, r.mean.fpr, r.mean.precision, r.mean.auc}) {
    CHECK(m >= 0.42);
    CHECK(m <= 0.58);
  }
  CHECK(r.mean.auc >= 0.45);
  CHECK(r.mean.auc <= 0.55);
}

TEST_CASE("a separable concept is learned") {
  const auto store = separable_store(1500, 200, 10);
  const auto c = leading_words(store, 200);
  const auto r = run_concept(store, c, small_config(30));
  CHECK(r.mean.auc >= 0.9);
  CHECK(r.mean.accuracy >= 0.75);
}

TEST_CASE("normalize flag requires a normalized store") {
  const auto store = random_gaussian_embedding(synthetic_vocabulary(100), 4, 1);
  auto cfg = small_config(2);
  cfg.normalize = true;
  const auto c = leading_words(store, 10);
  CHECK_THROWS_AS(run_concept(store, c, cfg), InvalidArgument);
  const auto prepared = prepare_store(store, cfg);
  CHECK(prepared.normalized());
  CHECK_NOTHROW(run_concept(prepared, c, cfg));
}

TEST_CASE("empirical p-value examples") {
  std::vector<double> null(1000);
  for (std::size_t i = 0; i < null.size(); ++i) null[i] = 0.5 + 0.0001 * static_cast<double>(i);

  const auto above = empirical_p_value(0.9, null);
  CHECK(above.value == 1.0 / 1001.0);
  CHECK(above.exceedances == 0);
  CHECK(above.display() == "< 0.001");

  const auto below = empirical_p_value(0.1, null);
  CHECK(below.value == 1.0);
  CHECK(below.display() == "1.000");

  const std::vector<double> single{0.7};
  CHECK(empirical_p_value(0.7, single).value == 1.0);

  const std::vector<double> hundred(99, 0.2);
  CHECK(empirical_p_value(0.9, hundred).display() == "< 0.010");
  CHECK(empirical_p_value(0.1, hundred).display() == "1.000");

  CHECK_THROWS_AS(empirical_p_value(0.5, std::vector<double>{}), InvalidArgument);
}

TEST_CASE("empirical p-value is non-increasing in the observation") {
  RandomStream rs(3);
  std::vector<double> null(200);
  for (auto& v : null) v = std::floor(rs.uniform() * 20.0) / 20.0;
  double previous = 2.0;
  for (double obs = -0.1; obs <= 1.1; obs += 0.01) {
    const double p = empirical_p_value(obs, null).value;
    CHECK(p <= previous);
    CHECK(p > 0.0);
    previous = p;
  }
}

TEST_CASE("null distribution rows") {
  const auto store = random_gaussian_embedding(synthetic_vocabulary(400), 6, 8);
  auto cfg = small_config(4);
  const auto exclude = leading_words(store, 10).in_vocab;
  const auto null = run_null(store, cfg, exclude);
  CHECK(null.lists.size() == cfg.random_list_count);
  CHECK(null.list_size == 20);
  for (const auto& list : null.lists) {
    CHECK(list.resolved_size == 20);
    CHECK(list.records.empty());
    CHECK(list.mean.auc <= null.max.auc);
    CHECK(list.mean.accuracy <= null.max.accuracy);
    CHECK(list.mean.recall <= null.max.recall);
    CHECK(list.mean.fpr <= null.max.fpr);
    CHECK(list.mean.precision <= null.max.precision);
  }
  CHECK(null.max.auc >= null.mean.auc);
  CHECK(null.values(&MetricValues::auc).size() == cfg.random_list_count);

  const auto sized = run_null(store, cfg, exclude, 12);
  CHECK(sized.list_size == 12);

  cfg.random_list_count = 1;
  const auto one = run_null(store, cfg, exclude);
  CHECK(one.max.auc == one.mean.auc);
  CHECK(one.max.accuracy == one.mean.accuracy);
  CHECK(one.max.precision == one.mean.precision);
}

TEST_CASE("results do not depend on the worker count") {
  const auto store = random_gaussian_embedding(synthetic_vocabulary(500), 10, 2);
  const auto c = leading_words(store, 30);
  auto cfg = small_config(40);
  const auto serial = run_concept(store, c, cfg);
  cfg.workers = 8;
  const auto parallel = run_concept(store, c, cfg);
  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    CHECK(serial.records[i].values.auc == parallel.records[i].values.auc);
    CHECK(serial.records[i].tp == parallel.records[i].tp);
  }
  CHECK(serial.mean.auc == parallel.mean.auc);

  cfg.workers = 1;
  const auto n1 = run_null(store, cfg);
  cfg.workers = 8;
  const auto n8 = run_null(store, cfg);
  CHECK(n1.values(&MetricValues::auc) == n8.values(&MetricValues::auc));
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.iterations = 0;
  CHECK_THROWS_AS(validate(cfg), InvalidArgument);
  cfg = ExperimentConfig{};
  cfg.random_list_size = 3;
  CHECK_THROWS_AS(validate(cfg), InvalidArgument);
  cfg = ExperimentConfig{};
  CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("mean_of") {
  std::vector<MetricsRecord> records(2);
  records[0].values.auc = 0.25;
  records[1].values.auc = 0.75;
  records[0].values.recall = 1.0;
  const auto m = mean_of(records);
  CHECK(m.auc == 0.5);
  CHECK(m.recall == 0.5);
}
