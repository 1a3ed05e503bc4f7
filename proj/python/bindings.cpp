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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

#include "learnability/concepts.hpp"
#include "learnability/embedding_store.hpp"
#include "learnability/error.hpp"
#include "learnability/experiment.hpp"
#include "learnability/metrics.hpp"
#include "learnability/perceptron.hpp"
#include "learnability/splitter.hpp"
#include "learnability/stats.hpp"

namespace py = pybind11;
namespace lb = learnability;

namespace {

py::dict metrics_dict(const lb::MetricValues& v) {
  py::dict d;
  d["accuracy"] = v.accuracy;
  d["recall"] = v.recall;
  d["fpr"] = v.fpr;
  d["precision"] = v.precision;
  d["auc"] = v.auc;
  return d;
}

std::vector<bool> to_labels(const std::vector<int>& labels) {
  std::vector<bool> out;
  out.reserve(labels.size());
  for (int v : labels) out.push_back(v != 0);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Concept learnability evaluation for word embeddings";

  auto error = py::register_exception<lb::Error>(m, "Error", PyExc_RuntimeError);
  auto input_error = py::register_exception<lb::InputError>(m, "InputError", error.ptr());
  py::register_exception<lb::ParseError>(m, "ParseError", input_error.ptr());
  py::register_exception<lb::InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<lb::ComputeError>(m, "ComputeError", error.ptr());

  py::enum_<lb::Precision>(m, "Precision").value("f32", lb::Precision::f32).value("f64", lb::Precision::f64);
  py::enum_<lb::Alternative>(m, "Alternative")
      .value("greater", lb::Alternative::greater)
      .value("less", lb::Alternative::less)
      .value("two_sided", lb::Alternative::two_sided);

  py::class_<lb::EmbeddingStore>(m, "EmbeddingStore")
      .def(py::init([](std::string name, std::vector<std::string> words, const std::vector<std::vector<double>>& rows,
                       lb::Precision precision) {
             if (rows.empty() || rows.size() != words.size()) {
               throw lb::InvalidArgument("need one non-empty row per word");
             }
             const std::size_t dim = rows.front().size();
             std::vector<double> flat;
             flat.reserve(rows.size() * dim);
             for (const auto& r : rows) {
               if (r.size() != dim) throw lb::InvalidArgument("rows have different lengths");
               flat.insert(flat.end(), r.begin(), r.end());
             }
             return lb::EmbeddingStore(std::move(name), dim, std::move(words), flat, precision);
           }),
           py::arg("name"), py::arg("words"), py::arg("rows"), py::arg("precision") = lb::Precision::f64)
      .def_property_readonly("name", &lb::EmbeddingStore::name)
      .def_property_readonly("dimension", &lb::EmbeddingStore::dimension)
      .def_property_readonly("words", &lb::EmbeddingStore::words)
      .def_property_readonly("normalized", &lb::EmbeddingStore::normalized)
      .def_property_readonly("skipped_duplicates", &lb::EmbeddingStore::skipped_duplicates)
      .def("__len__", &lb::EmbeddingStore::size)
      .def("__contains__", [](const lb::EmbeddingStore& s, const std::string& w) { return s.contains(w); })
      .def("lookup", [](const lb::EmbeddingStore& s, const std::string& w) { return s.lookup(w); })
      .def("row", &lb::EmbeddingStore::row);

  m.def(
      "load_embedding",
      [](const std::filesystem::path& path, const std::string& name, bool lowercase,
         std::optional<std::size_t> max_words, lb::Precision precision) {
        lb::EmbeddingSourceSpec spec;
        spec.name = name.empty() ? path.stem().string() : name;
        spec.path = path;
        spec.lowercase = lowercase;
        spec.max_words = max_words;
        spec.precision = precision;
        return lb::load_embedding(spec);
      },
      py::arg("path"), py::arg("name") = "", py::arg("lowercase") = false, py::arg("max_words") = py::none(),
      py::arg("precision") = lb::Precision::f32);
  m.def("normalize", &lb::normalize, py::arg("store"));
  m.def("random_gaussian_embedding", &lb::random_gaussian_embedding, py::arg("vocabulary"),
        py::arg("dimension"), py::arg("seed"), py::arg("name") = "gaussian",
        py::arg("precision") = lb::Precision::f32);
  m.def("synthetic_vocabulary", &lb::synthetic_vocabulary, py::arg("count"), py::arg("prefix") = "w");

  py::class_<lb::Concept>(m, "Concept")
      .def_readonly("name", &lb::Concept::name)
      .def_readonly("words", &lb::Concept::words)
      .def_readonly("source", &lb::Concept::source);
  py::class_<lb::ResolvedConcept>(m, "ResolvedConcept")
      .def_property_readonly("name", [](const lb::ResolvedConcept& r) { return r.list.name; })
      .def_readonly("embedding_name", &lb::ResolvedConcept::embedding_name)
      .def_readonly("in_vocab", &lb::ResolvedConcept::in_vocab)
      .def_readonly("dropped", &lb::ResolvedConcept::dropped)
      .def("__len__", &lb::ResolvedConcept::size);

  m.def(
      "load_concept",
      [](const std::filesystem::path& path, const std::string& name, const lb::EmbeddingStore* expand_against) {
        const std::string n = name.empty() ? path.stem().string() : name;
        return expand_against ? lb::load_concept(path, n, *expand_against) : lb::load_concept(path, n);
      },
      py::arg("path"), py::arg("name") = "", py::arg("expand_against") = nullptr);
  m.def(
      "make_concept",
      [](std::string name, const std::vector<std::string>& words) { return lb::make_concept(std::move(name), words); },
      py::arg("name"), py::arg("words"));
  m.def("resolve", &lb::resolve, py::arg("concept"), py::arg("store"));
  m.def(
      "random_concept",
      [](const lb::EmbeddingStore& store, std::size_t size, const std::vector<std::string>& exclude,
         std::uint64_t seed, std::string name) {
        return lb::random_concept(store, size, exclude, seed, std::move(name));
      },
      py::arg("store"), py::arg("size"), py::arg("exclude") = std::vector<std::string>{}, py::arg("seed") = 0,
      py::arg("name") = "random");

  m.def(
      "make_split",
      [](const lb::ResolvedConcept& resolved, const lb::EmbeddingStore& store, std::size_t iteration,
         std::uint64_t seed) {
        const auto s = lb::make_split(resolved, store, iteration, seed);
        py::dict d;
        d["train_pos"] = lb::words_of(store, s.train_pos);
        d["train_neg"] = lb::words_of(store, s.train_neg);
        d["test_pos"] = lb::words_of(store, s.test_pos);
        d["test_neg"] = lb::words_of(store, s.test_neg);
        return d;
      },
      py::arg("resolved"), py::arg("store"), py::arg("iteration"), py::arg("seed"));

  py::class_<lb::TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("learning_rate", &lb::TrainConfig::learning_rate)
      .def_readwrite("epochs", &lb::TrainConfig::epochs)
      .def_readwrite("early_stop_tol", &lb::TrainConfig::early_stop_tol)
      .def_readwrite("l2", &lb::TrainConfig::l2);
  py::class_<lb::PerceptronModel>(m, "PerceptronModel")
      .def_readonly("weights", &lb::PerceptronModel::weights)
      .def_readonly("bias", &lb::PerceptronModel::bias)
      .def_readonly("loss_trace", &lb::PerceptronModel::loss_trace)
      .def_readonly("epochs_run", &lb::PerceptronModel::epochs_run);

  m.def(
      "train",
      [](const std::vector<std::vector<double>>& features, const std::vector<int>& labels,
         const lb::TrainConfig& cfg) {
        if (features.empty() || features.size() != labels.size()) {
          throw lb::InvalidArgument("need one label per feature row");
        }
        lb::LabeledBatch batch;
        batch.dimension = features.front().size();
        for (std::size_t i = 0; i < features.size(); ++i) {
          if (features[i].size() != batch.dimension) throw lb::InvalidArgument("rows have different lengths");
          batch.features.insert(batch.features.end(), features[i].begin(), features[i].end());
          batch.labels.push_back(labels[i] != 0 ? 1.0 : 0.0);
        }
        return lb::train(batch, cfg);
      },
      py::arg("features"), py::arg("labels"), py::arg("config") = lb::TrainConfig{});
  m.def(
      "score",
      [](const lb::PerceptronModel& model, const lb::EmbeddingStore& store, const std::vector<std::string>& words) {
        return lb::score(model, store, words);
      },
      py::arg("model"), py::arg("store"), py::arg("words"));
  m.def("sigmoid", &lb::sigmoid, py::arg("z"));

  m.def(
      "roc_auc",
      [](const std::vector<double>& scores, const std::vector<int>& labels) {
        return lb::roc_auc(scores, to_labels(labels));
      },
      py::arg("scores"), py::arg("labels"));
  m.def(
      "evaluate_scores",
      [](const std::vector<double>& scores, const std::vector<int>& labels, double threshold) {
        return metrics_dict(lb::evaluate_scores(scores, to_labels(labels), threshold).values);
      },
      py::arg("scores"), py::arg("labels"), py::arg("threshold") = lb::kDefaultThreshold);

  py::class_<lb::ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("iterations", &lb::ExperimentConfig::iterations)
      .def_readwrite("random_list_count", &lb::ExperimentConfig::random_list_count)
      .def_readwrite("random_list_size", &lb::ExperimentConfig::random_list_size)
      .def_readwrite("master_seed", &lb::ExperimentConfig::master_seed)
      .def_readwrite("train", &lb::ExperimentConfig::train)
      .def_readwrite("normalize", &lb::ExperimentConfig::normalize)
      .def_readwrite("threshold", &lb::ExperimentConfig::threshold)
      .def_readwrite("workers", &lb::ExperimentConfig::workers);

  m.def(
      "run_concept",
      [](const lb::EmbeddingStore& store, const lb::ResolvedConcept& resolved, const lb::ExperimentConfig& cfg) {
        lb::AggregateResult r;
        {
          py::gil_scoped_release release;
          r = lb::run_concept(lb::prepare_store(store, cfg), resolved, cfg);
        }
        py::dict d;
        d["concept"] = r.concept_name;
        d["size"] = r.resolved_size;
        d["iterations"] = r.iterations;
        d["mean"] = metrics_dict(r.mean);
        d["stddev"] = metrics_dict(r.stddev);
        py::list aucs;
        for (const auto& rec : r.records) aucs.append(rec.values.auc);
        d["auc_per_iteration"] = aucs;
        return d;
      },
      py::arg("store"), py::arg("resolved"), py::arg("config"));
  m.def(
      "run_null",
      [](const lb::EmbeddingStore& store, const lb::ExperimentConfig& cfg, const std::vector<std::string>& exclude) {
        lb::NullDistribution n;
        {
          py::gil_scoped_release release;
          n = lb::run_null(lb::prepare_store(store, cfg), cfg, exclude);
        }
        py::dict d;
        d["list_size"] = n.list_size;
        d["max"] = metrics_dict(n.max);
        d["mean"] = metrics_dict(n.mean);
        d["auc"] = n.values(&lb::MetricValues::auc);
        return d;
      },
      py::arg("store"), py::arg("config"), py::arg("exclude") = std::vector<std::string>{});

  py::class_<lb::EmpiricalPValue>(m, "EmpiricalPValue")
      .def_readonly("value", &lb::EmpiricalPValue::value)
      .def_readonly("exceedances", &lb::EmpiricalPValue::exceedances)
      .def_readonly("null_count", &lb::EmpiricalPValue::null_count)
      .def("display", &lb::EmpiricalPValue::display);
  m.def(
      "empirical_p_value",
      [](double observed, const std::vector<double>& null_values) { return lb::empirical_p_value(observed, null_values); },
      py::arg("observed"), py::arg("null_values"));

  py::class_<lb::WilcoxonOutcome>(m, "WilcoxonOutcome")
      .def_readonly("n_effective", &lb::WilcoxonOutcome::n_effective)
      .def_readonly("zeros_dropped", &lb::WilcoxonOutcome::zeros_dropped)
      .def_readonly("w_plus", &lb::WilcoxonOutcome::w_plus)
      .def_readonly("w_minus", &lb::WilcoxonOutcome::w_minus)
      .def_readonly("w_statistic", &lb::WilcoxonOutcome::w_statistic)
      .def_readonly("p_value", &lb::WilcoxonOutcome::p_value)
      .def_readonly("has_ties", &lb::WilcoxonOutcome::has_ties)
      .def_property_readonly("exact", [](const lb::WilcoxonOutcome& o) { return o.method == lb::WilcoxonMethod::exact; });
  m.def(
      "wilcoxon_signed_rank",
      [](const std::vector<double>& x, const std::vector<double>& y, lb::Alternative alternative) {
        return lb::wilcoxon_signed_rank(x, y, alternative);
      },
      py::arg("x"), py::arg("y"), py::arg("alternative") = lb::Alternative::two_sided);
  m.def("wilcoxon_critical_value", &lb::wilcoxon_critical_value, py::arg("n"), py::arg("alpha"),
        py::arg("two_sided") = false);
}
