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

// learnability: measures how well word embeddings capture word-list concepts.
//
//   learnability eval    --manifest run.json [flags]
//   learnability null    --manifest run.json --embedding NAME [flags]
//   learnability compare --manifest run.json --a NAME --b NAME [flags]
//   learnability compare --auc-table table.tsv --a NAME --b NAME
//   learnability gen-random-embedding --words N --dim D --seed S --out FILE
//   learnability expand-wildcards --embedding FILE --list FILE --out FILE
//
// Exit codes: 0 success, 1 input error, 2 runtime error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "learnability/commands.hpp"
#include "learnability/concepts.hpp"
#include "learnability/embedding_store.hpp"
#include "learnability/error.hpp"

namespace lb = learnability;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitRuntime = 2;

struct RunFlags {
  std::string manifest;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> iterations;
  bool normalize = false;
  bool raw = false;
  std::optional<double> threshold;
  std::optional<std::size_t> random_lists;
  std::optional<std::size_t> random_list_size;
  bool match_null_size = false;
  std::optional<unsigned> workers;
  std::optional<std::string> out;
  std::optional<std::string> format;
  bool spill = false;
  bool expand_wildcards = false;
  std::optional<double> learning_rate;
  std::optional<int> epochs;
  bool quiet = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--manifest,-m", f.manifest, "JSON run manifest")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--iterations", f.iterations, "split/train/test rounds per concept")->check(CLI::PositiveNumber);
  auto* norm = cmd->add_flag("--normalize", f.normalize, "unit-normalize classifier inputs");
  cmd->add_flag("--raw", f.raw, "use raw (unnormalized) classifier inputs")->excludes(norm);
  cmd->add_option("--threshold", f.threshold, "score cut for the thresholded metrics");
  cmd->add_option("--random-lists", f.random_lists, "number of random lists in the null")->check(CLI::PositiveNumber);
  cmd->add_option("--random-list-size", f.random_list_size, "words per random list")->check(CLI::Range(4, 1 << 30));
  cmd->add_flag("--match-null-size", f.match_null_size, "size each concept's null lists like the concept");
  cmd->add_option("--workers", f.workers, "worker threads (0 = all hardware threads)");
  cmd->add_option("--out", f.out, "root directory for run output");
  cmd->add_option("--format", f.format, "comma-separated subset of tsv,jsonl,text");
  cmd->add_flag("--spill-iterations", f.spill, "write per-iteration records");
  cmd->add_flag("--expand-wildcards", f.expand_wildcards, "expand trailing '*' entries against each vocabulary");
  cmd->add_option("--learning-rate", f.learning_rate, "classifier learning rate");
  cmd->add_option("--epochs", f.epochs, "classifier epochs")->check(CLI::PositiveNumber);
  cmd->add_flag("--quiet,-q", f.quiet, "no progress output");
}

lb::RunManifest manifest_from(const RunFlags& f) {
  lb::RunManifest m = lb::load_manifest(f.manifest);
  auto& cfg = m.experiment;
  if (f.seed) cfg.master_seed = *f.seed;
  if (f.iterations) cfg.iterations = *f.iterations;
  if (f.normalize) cfg.normalize = true;
  if (f.raw) cfg.normalize = false;
  if (f.threshold) cfg.threshold = *f.threshold;
  if (f.random_lists) cfg.random_list_count = *f.random_lists;
  if (f.random_list_size) cfg.random_list_size = *f.random_list_size;
  if (f.match_null_size) cfg.match_null_size = true;
  if (f.workers) cfg.workers = *f.workers;
  if (f.learning_rate) cfg.train.learning_rate = *f.learning_rate;
  if (f.epochs) cfg.train.epochs = *f.epochs;
  if (f.out) m.output_dir = *f.out;
  if (f.format) m.formats = lb::parse_output_formats(*f.format);
  if (f.spill) m.spill_iterations = true;
  if (f.expand_wildcards) m.expand_wildcards = true;
  return m;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concept learnability evaluation for word embeddings"};
  app.require_subcommand(1);

  RunFlags eval_flags;
  auto* eval = app.add_subcommand("eval", "evaluate every concept on every embedding, with random-list nulls");
  add_run_flags(eval, eval_flags);

  RunFlags null_flags;
  std::string null_embedding;
  auto* null_cmd = app.add_subcommand("null", "null distribution of random word lists for one embedding");
  add_run_flags(null_cmd, null_flags);
  null_cmd->add_option("--embedding,-e", null_embedding, "embedding name from the manifest")->required();

  RunFlags compare_flags;
  lb::CompareOptions compare_opts;
  std::string alternative = "greater";
  std::string auc_table;
  std::optional<double> reference_w;
  std::optional<double> reference_p;
  auto* compare = app.add_subcommand("compare", "per-concept AUC table and Wilcoxon signed-rank test of A vs B");
  compare->add_option("--manifest,-m", compare_flags.manifest, "JSON run manifest")->check(CLI::ExistingFile);
  compare->add_option("--auc-table", auc_table, "TSV of precomputed AUCs (concept, embedding columns)")->check(CLI::ExistingFile);
  compare->add_option("--a", compare_opts.a, "first embedding (x)")->required();
  compare->add_option("--b", compare_opts.b, "second embedding (y)")->required();
  compare->add_option("--alternative", alternative, "greater (A > B), less or two-sided")
      ->check(CLI::IsMember({"greater", "less", "two-sided"}));
  compare->add_option("--alpha", compare_opts.alpha, "significance level for the table critical value");
  compare->add_option("--reference-w", reference_w, "externally reported W to check against");
  compare->add_option("--reference-p", reference_p, "externally reported p-value to check against");
  compare->add_option("--seed", compare_flags.seed, "master seed");
  compare->add_option("--iterations", compare_flags.iterations, "split/train/test rounds per concept");
  compare->add_flag("--normalize", compare_flags.normalize, "unit-normalize classifier inputs");
  compare->add_option("--threshold", compare_flags.threshold, "score cut for the thresholded metrics");
  compare->add_option("--workers", compare_flags.workers, "worker threads (0 = all hardware threads)");
  compare->add_option("--out", compare_flags.out, "root directory for run output");
  compare->add_option("--format", compare_flags.format, "comma-separated subset of tsv,jsonl,text");
  compare->add_flag("--quiet,-q", compare_flags.quiet, "no progress output");

  std::size_t gen_words = 0;
  std::string gen_vocabulary;
  std::size_t gen_dim = 300;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  bool gen_header = false;
  auto* gen = app.add_subcommand("gen-random-embedding", "write an N(0,1) embedding in text format");
  auto* gen_words_opt = gen->add_option("--words", gen_words, "size of a synthetic vocabulary");
  gen->add_option("--vocabulary", gen_vocabulary, "file with one word per line")
      ->check(CLI::ExistingFile)
      ->excludes(gen_words_opt);
  gen->add_option("--dim", gen_dim, "dimension")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--out", gen_out, "output vector file")->required();
  gen->add_flag("--header", gen_header, "write a 'count dimension' first line");

  std::string expand_embedding;
  std::string expand_list;
  std::string expand_out;
  bool expand_lowercase = false;
  auto* expand = app.add_subcommand("expand-wildcards", "expand trailing '*' entries of a word list against a vocabulary");
  expand->add_option("--embedding", expand_embedding, "vector file supplying the vocabulary")->required()->check(CLI::ExistingFile);
  expand->add_option("--list", expand_list, "word list with wildcard entries")->required()->check(CLI::ExistingFile);
  expand->add_option("--out", expand_out, "expanded word list")->required();
  expand->add_flag("--lowercase", expand_lowercase, "fold vocabulary words to lowercase on load");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*eval) {
      const lb::RunManifest m = manifest_from(eval_flags);
      const auto out = lb::cmd_eval(m, eval_flags.quiet ? nullptr : &std::cerr);
      for (const auto& r : out.reports) {
        const auto txt = out.run_dir / "aggregates" / (r.embedding + ".txt");
        if (std::filesystem::exists(txt)) std::cout << read_file(txt);
      }
      std::cout << "\nrun directory: " << out.run_dir.string() << "\n";
    } else if (*null_cmd) {
      const lb::RunManifest m = manifest_from(null_flags);
      const auto out = lb::cmd_null(m, null_embedding, null_flags.quiet ? nullptr : &std::cerr);
      std::cout << lb::render_null_text(m, out.null);
      std::cout << "\nrun directory: " << out.run_dir.string() << "\n";
    } else if (*compare) {
      compare_opts.alternative = lb::parse_alternative(alternative);
      compare_opts.reference_w = reference_w;
      compare_opts.reference_p = reference_p;
      if (compare_flags.manifest.empty() == auc_table.empty()) {
        throw lb::InputError("compare needs exactly one of --manifest or --auc-table");
      }
      lb::CompareOutcome out;
      std::string header;
      if (!auc_table.empty()) {
        const auto formats = compare_flags.format ? lb::parse_output_formats(*compare_flags.format)
                                                  : std::vector<lb::OutputFormat>{lb::OutputFormat::delimited,
                                                                                  lb::OutputFormat::structured,
                                                                                  lb::OutputFormat::human};
        out = lb::cmd_compare_table(auc_table, compare_opts, compare_flags.out.value_or("runs"), formats);
        header = "auc table " + std::filesystem::path(auc_table).filename().string();
      } else {
        const lb::RunManifest m = manifest_from(compare_flags);
        out = lb::cmd_compare(m, compare_opts, compare_flags.quiet ? nullptr : &std::cerr);
      }
      std::cout << lb::render_comparison_text(out.report, header);
      std::cout << "\nrun directory: " << out.run_dir.string() << "\n";
    } else if (*gen) {
      std::vector<std::string> vocabulary;
      if (!gen_vocabulary.empty()) {
        std::ifstream in(gen_vocabulary);
        std::set<std::string> seen;
        for (std::string word; in >> word;) {
          if (seen.insert(word).second) vocabulary.push_back(word);
        }
      } else if (gen_words > 0) {
        vocabulary = lb::synthetic_vocabulary(gen_words);
      } else {
        throw lb::InputError("gen-random-embedding needs --words or --vocabulary");
      }
      const auto store = lb::random_gaussian_embedding(std::move(vocabulary), gen_dim, gen_seed, "gaussian",
                                                       lb::Precision::f64);
      std::ofstream out(gen_out);
      if (!out) throw lb::InputError("cannot write " + gen_out);
      lb::write_embedding(store, out, gen_header);
      std::cout << "wrote " << store.size() << " x " << store.dimension() << " to " << gen_out << "\n";
    } else if (*expand) {
      lb::EmbeddingSourceSpec spec;
      spec.name = "vocabulary";
      spec.path = expand_embedding;
      spec.lowercase = expand_lowercase;
      const auto store = lb::load_embedding(spec);
      const auto expanded = lb::load_concept(expand_list, std::filesystem::path(expand_list).stem().string(), store);
      std::ofstream out(expand_out);
      if (!out) throw lb::InputError("cannot write " + expand_out);
      out << "# " << expanded.name << ": " << expanded.raw_entries << " entries, " << expanded.expanded_wildcards
          << " wildcards expanded against " << expand_embedding << "\n";
      for (const auto& w : expanded.words) out << w << "\n";
      std::cout << "wrote " << expanded.words.size() << " words to " << expand_out << "\n";
    }
  } catch (const lb::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const lb::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
