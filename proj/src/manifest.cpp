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

#include "learnability/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "learnability/error.hpp"

namespace learnability {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw InputError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw InputError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key) || obj[key].is_null()) return fallback;
  try {
    return obj[key].get<T>();
  } catch (const json::exception&) {
    throw InputError("invalid value for '" + std::string(key) + "' in " + where);
  }
}

std::filesystem::path resolve_path(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

VectorFormat parse_vector_format(const std::string& s) {
  if (s == "auto") return VectorFormat::automatic;
  if (s == "plain") return VectorFormat::plain;
  if (s == "header") return VectorFormat::header;
  throw InputError("unknown embedding format '" + s + "' (expected auto, plain or header)");
}

std::string vector_format_name(VectorFormat f) {
  switch (f) {
    case VectorFormat::automatic: return "auto";
    case VectorFormat::plain: return "plain";
    case VectorFormat::header: return "header";
  }
  return "?";
}

Precision parse_precision(const std::string& s) {
  if (s == "f32" || s == "float32") return Precision::f32;
  if (s == "f64" || s == "float64") return Precision::f64;
  throw InputError("unknown precision '" + s + "' (expected f32 or f64)");
}

bool readable(const std::filesystem::path& p) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(p, ec)) return false;
  std::ifstream in(p);
  return static_cast<bool>(in);
}

std::vector<std::string> read_word_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError("cannot open vocabulary file " + p.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string w;
    if (fields >> w && w.front() != '#') words.push_back(w);
  }
  return words;
}

}  // namespace

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::delimited: return "tsv";
    case OutputFormat::structured: return "jsonl";
    case OutputFormat::human: return "text";
  }
  return "?";
}

OutputFormat parse_output_format(const std::string& s) {
  if (s == "tsv" || s == "delimited") return OutputFormat::delimited;
  if (s == "jsonl" || s == "structured") return OutputFormat::structured;
  if (s == "text" || s == "txt" || s == "human") return OutputFormat::human;
  throw InputError("unknown output format '" + s + "' (expected tsv, jsonl or text)");
}

std::vector<OutputFormat> parse_output_formats(const std::string& comma_separated) {
  std::vector<OutputFormat> out;
  std::stringstream ss(comma_separated);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const OutputFormat f = parse_output_format(item);
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  if (out.empty()) throw InputError("no output format given");
  return out;
}

const EmbeddingEntry& RunManifest::embedding(const std::string& wanted) const {
  for (const auto& e : embeddings) {
    if (e.name == wanted) return e;
  }
  throw InputError("manifest has no embedding named '" + wanted + "'");
}

RunManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest " + path.string());
  std::stringstream text;
  text << in.rdbuf();
  return parse_manifest(text.str(), path.parent_path());
}

RunManifest parse_manifest(const std::string& json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("manifest is not valid JSON: ") + e.what());
  }
  check_keys(root, "manifest", {"name", "embeddings", "concepts", "experiment", "output",
                                "expand_wildcards"});
  RunManifest m;
  m.name = get_or<std::string>(root, "name", m.name, "manifest");
  m.expand_wildcards = get_or<bool>(root, "expand_wildcards", false, "manifest");

  if (!root.contains("embeddings") || !root["embeddings"].is_array()) {
    throw InputError("manifest needs an 'embeddings' array");
  }
  for (const auto& e : root["embeddings"]) {
    const std::string where = "embedding entry";
    check_keys(e, where, {"name", "path", "format", "lowercase", "max_words", "precision", "random"});
    EmbeddingEntry entry;
    entry.name = get_or<std::string>(e, "name", "", where);
    if (entry.name.empty()) throw InputError("every embedding needs a 'name'");
    entry.precision = parse_precision(get_or<std::string>(e, "precision", "f32", where));
    const bool has_path = e.contains("path");
    const bool has_random = e.contains("random");
    if (has_path == has_random) {
      throw InputError("embedding '" + entry.name + "' needs exactly one of 'path' or 'random'");
    }
    if (has_path) {
      EmbeddingSourceSpec spec;
      spec.name = entry.name;
      spec.path = resolve_path(base_dir, get_or<std::string>(e, "path", "", where));
      spec.format = parse_vector_format(get_or<std::string>(e, "format", "auto", where));
      spec.lowercase = get_or<bool>(e, "lowercase", false, where);
      if (e.contains("max_words") && !e["max_words"].is_null()) {
        const auto cap = get_or<long long>(e, "max_words", 0, where);
        if (cap < 1) throw InputError("max_words of '" + entry.name + "' must be >= 1");
        spec.max_words = static_cast<std::size_t>(cap);
      }
      spec.precision = entry.precision;
      entry.file = spec;
    } else {
      const json& r = e["random"];
      check_keys(r, "random embedding '" + entry.name + "'",
                 {"words", "vocabulary_from", "vocabulary_file", "dimension", "seed"});
      RandomEmbeddingSpec spec;
      spec.words = get_or<std::size_t>(r, "words", 0, where);
      spec.vocabulary_from = get_or<std::string>(r, "vocabulary_from", "", where);
      const auto vocab_file = get_or<std::string>(r, "vocabulary_file", "", where);
      if (!vocab_file.empty()) spec.vocabulary_file = resolve_path(base_dir, vocab_file);
      spec.dimension = get_or<std::size_t>(r, "dimension", spec.dimension, where);
      spec.seed = get_or<std::uint64_t>(r, "seed", 0, where);
      entry.random = spec;
    }
    m.embeddings.push_back(std::move(entry));
  }

  if (!root.contains("concepts") || !root["concepts"].is_array()) {
    throw InputError("manifest needs a 'concepts' array");
  }
  for (const auto& c : root["concepts"]) {
    check_keys(c, "concept entry", {"name", "path"});
    ConceptEntry entry;
    entry.name = get_or<std::string>(c, "name", "", "concept entry");
    const auto path = get_or<std::string>(c, "path", "", "concept entry");
    if (entry.name.empty() || path.empty()) throw InputError("every concept needs 'name' and 'path'");
    entry.path = resolve_path(base_dir, path);
    m.concepts.push_back(std::move(entry));
  }

  if (root.contains("experiment")) {
    const json& x = root["experiment"];
    const std::string where = "experiment";
    check_keys(x, where, {"iterations", "random_lists", "random_list_size", "match_null_size",
                          "seed", "normalize", "threshold", "learning_rate", "epochs",
                          "early_stop_tol", "l2", "workers"});
    auto& cfg = m.experiment;
    cfg.iterations = get_or<std::size_t>(x, "iterations", cfg.iterations, where);
    cfg.random_list_count = get_or<std::size_t>(x, "random_lists", cfg.random_list_count, where);
    cfg.random_list_size = get_or<std::size_t>(x, "random_list_size", cfg.random_list_size, where);
    cfg.match_null_size = get_or<bool>(x, "match_null_size", cfg.match_null_size, where);
    cfg.master_seed = get_or<std::uint64_t>(x, "seed", cfg.master_seed, where);
    cfg.normalize = get_or<bool>(x, "normalize", cfg.normalize, where);
    cfg.threshold = get_or<double>(x, "threshold", cfg.threshold, where);
    cfg.train.learning_rate = get_or<double>(x, "learning_rate", cfg.train.learning_rate, where);
    cfg.train.epochs = get_or<int>(x, "epochs", cfg.train.epochs, where);
    cfg.train.early_stop_tol = get_or<double>(x, "early_stop_tol", cfg.train.early_stop_tol, where);
    cfg.train.l2 = get_or<double>(x, "l2", cfg.train.l2, where);
    cfg.workers = get_or<unsigned>(x, "workers", cfg.workers, where);
  }

  if (root.contains("output")) {
    const json& o = root["output"];
    check_keys(o, "output", {"directory", "formats", "spill_iterations"});
    if (o.contains("directory")) {
      m.output_dir = resolve_path(base_dir, get_or<std::string>(o, "directory", "runs", "output"));
    }
    if (o.contains("formats")) {
      if (!o["formats"].is_array()) throw InputError("output.formats must be an array");
      m.formats.clear();
      for (const auto& f : o["formats"]) {
        if (!f.is_string()) throw InputError("output.formats entries must be strings");
        const OutputFormat parsed = parse_output_format(f.get<std::string>());
        if (std::find(m.formats.begin(), m.formats.end(), parsed) == m.formats.end()) {
          m.formats.push_back(parsed);
        }
      }
    }
    m.spill_iterations = get_or<bool>(o, "spill_iterations", false, "output");
  }
  return m;
}

void validate_manifest(const RunManifest& m) {
  std::vector<std::string> problems;
  if (m.embeddings.empty()) problems.push_back("no embeddings listed");
  if (m.concepts.empty()) problems.push_back("no concepts listed");
  if (m.formats.empty()) problems.push_back("no output formats selected");

  std::set<std::string> names;
  for (const auto& e : m.embeddings) {
    if (!names.insert(e.name).second) problems.push_back("duplicate embedding name '" + e.name + "'");
    if (e.file) {
      if (!readable(e.file->path)) {
        problems.push_back("embedding '" + e.name + "': cannot read " + e.file->path.string());
      }
    } else if (e.random) {
      const auto& r = *e.random;
      const int sources = (r.words > 0) + !r.vocabulary_from.empty() + !r.vocabulary_file.empty();
      if (sources != 1) {
        problems.push_back("random embedding '" + e.name +
                           "' needs exactly one of words, vocabulary_from, vocabulary_file");
      }
      if (r.dimension == 0) problems.push_back("random embedding '" + e.name + "' has dimension 0");
      if (!r.vocabulary_file.empty() && !readable(r.vocabulary_file)) {
        problems.push_back("embedding '" + e.name + "': cannot read " + r.vocabulary_file.string());
      }
      if (!r.vocabulary_from.empty()) {
        bool found = false;
        for (const auto& other : m.embeddings) found = found || (other.name == r.vocabulary_from && other.file);
        if (!found) {
          problems.push_back("embedding '" + e.name + "': vocabulary_from '" + r.vocabulary_from +
                             "' is not a file-backed embedding in this manifest");
        }
      }
    }
  }
  std::set<std::string> concept_names;
  for (const auto& c : m.concepts) {
    if (!concept_names.insert(c.name).second) problems.push_back("duplicate concept name '" + c.name + "'");
    if (c.name.starts_with("random")) {
      problems.push_back("concept name '" + c.name + "' is reserved for random lists");
    }
    if (!readable(c.path)) problems.push_back("concept '" + c.name + "': cannot read " + c.path.string());
  }
  try {
    validate(m.experiment);
  } catch (const Error& e) {
    problems.push_back(e.what());
  }
  if (!problems.empty()) {
    std::string msg = "invalid manifest:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw InputError(msg);
  }
}

std::string effective_config_json(const RunManifest& m) {
  json root;
  root["name"] = m.name;
  root["expand_wildcards"] = m.expand_wildcards;
  json embeddings = json::array();
  for (const auto& e : m.embeddings) {
    json j;
    j["name"] = e.name;
    j["precision"] = e.precision == Precision::f32 ? "f32" : "f64";
    if (e.file) {
      j["path"] = e.file->path.string();
      j["format"] = vector_format_name(e.file->format);
      j["lowercase"] = e.file->lowercase;
      j["max_words"] = e.file->max_words ? json(*e.file->max_words) : json(nullptr);
    } else {
      const auto& r = *e.random;
      json rj;
      if (r.words > 0) rj["words"] = r.words;
      if (!r.vocabulary_from.empty()) rj["vocabulary_from"] = r.vocabulary_from;
      if (!r.vocabulary_file.empty()) rj["vocabulary_file"] = r.vocabulary_file.string();
      rj["dimension"] = r.dimension;
      rj["seed"] = r.seed;
      j["random"] = rj;
    }
    embeddings.push_back(j);
  }
  root["embeddings"] = embeddings;
  json concepts = json::array();
  for (const auto& c : m.concepts) {
    concepts.push_back({{"name", c.name}, {"path", c.path.string()}});
  }
  root["concepts"] = concepts;
  const auto& cfg = m.experiment;
  root["experiment"] = {
      {"iterations", cfg.iterations},
      {"random_lists", cfg.random_list_count},
      {"random_list_size", cfg.random_list_size},
      {"match_null_size", cfg.match_null_size},
      {"seed", cfg.master_seed},
      {"normalize", cfg.normalize},
      {"threshold", cfg.threshold},
      {"learning_rate", cfg.train.learning_rate},
      {"epochs", cfg.train.epochs},
      {"early_stop_tol", cfg.train.early_stop_tol},
      {"l2", cfg.train.l2},
  };
  json formats = json::array();
  for (auto f : m.formats) formats.push_back(to_string(f));
  root["output"] = {{"formats", formats}, {"spill_iterations", m.spill_iterations}};
  root["conventions"] = {
      "score >= threshold predicts positive",
      "precision is 0 when nothing is predicted positive",
      "AUC is computed from raw sigmoid scores (Mann-Whitney, ties count 1/2)",
      "odd-sized lists give the extra word to training",
      "train and test negatives are disjoint samples from V minus the list",
      "classifier: zero init, full-batch gradient descent, learning rate halved when the loss rises",
      "random(max) is a per-metric maximum over random lists",
      "p-values: (1 + #{null >= observed}) / (1 + N)",
  };
  return root.dump(2) + "\n";
}

EmbeddingStore materialize_embedding(const RunManifest& m, const EmbeddingEntry& entry) {
  if (entry.file) return prepare_store(load_embedding(*entry.file), m.experiment);
  const auto& r = *entry.random;
  std::vector<std::string> vocabulary;
  if (r.words > 0) {
    vocabulary = synthetic_vocabulary(r.words);
  } else if (!r.vocabulary_file.empty()) {
    vocabulary = read_word_lines(r.vocabulary_file);
  } else {
    const EmbeddingEntry& source = m.embedding(r.vocabulary_from);
    if (!source.file) throw InputError("vocabulary_from must name a file-backed embedding");
    vocabulary = load_embedding(*source.file).words();
  }
  // Repeated words in a vocabulary file keep their first occurrence.
  std::set<std::string> seen;
  std::vector<std::string> unique;
  for (auto& w : vocabulary) {
    if (seen.insert(w).second) unique.push_back(std::move(w));
  }
  return prepare_store(
      random_gaussian_embedding(std::move(unique), r.dimension, r.seed, entry.name, entry.precision),
      m.experiment);
}

}  // namespace learnability
