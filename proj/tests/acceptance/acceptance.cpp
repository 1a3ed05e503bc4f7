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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "learnability/commands.hpp"
#include "learnability/concepts.hpp"
#include "learnability/embedding_store.hpp"
#include "learnability/experiment.hpp"
#include "learnability/metrics.hpp"
#include "learnability/perceptron.hpp"
#include "learnability/random.hpp"
#include "learnability/stats.hpp"

namespace fs = std::filesystem;
using namespace learnability;

namespace {

const fs::path kCli = LEARNABILITY_CLI;
const fs::path kData = LEARNABILITY_TEST_DATA;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void guarded(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("learnability-acceptance-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args, const fs::path& stdout_file) {
  const std::string cmd = "'" + kCli.string() + "' " + args + " >'" + stdout_file.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path only_subdir(const fs::path& root) {
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(root)) dirs.push_back(e.path());
  if (dirs.size() != 1) throw std::runtime_error("expected one run directory under " + root.string());
  return dirs[0];
}

// 1. Gaussian vectors carry no concept signal.
void criterion_random_baseline() {
  const auto start = std::chrono::steady_clock::now();
  const auto store = random_gaussian_embedding(synthetic_vocabulary(20000), 300, 20240601);
  ExperimentConfig cfg;
  cfg.iterations = 200;
  cfg.master_seed = 1;
  const std::size_t sizes[] = {392, 492, 184, 558, 632, 908, 396, 322, 54, 232};
  const std::vector<std::string> none;
  double lo = 1.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < std::size(sizes); ++i) {
    const auto c = random_concept(store, sizes[i], none, 1000 + i, "concept-" + std::to_string(sizes[i]));
    const auto r = run_concept(store, c, cfg);
    for (double v : {r.mean.accuracy, r.mean.recall, r.mean.fpr, r.mean.precision, r.mean.auc}) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(1, lo >= 0.45 && hi <= 0.55,
         "Gaussian d=300, |V|=20000, 10 concepts x 200 iterations: all metric means in [" +
             fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "], required [0.45, 0.55] (" +
             fmt("%.1f", secs) + " s)");
}

// 2. A concept shifted along one axis is learned.
void criterion_separable() {
  // Bayes AUC for N(3, 1) vs N(0, 1) along e1: P(X > Y) = Phi(3 / sqrt(2)).
  const double closed = 0.5 * std::erfc(-3.0 / 2.0);
  // Oracle: integrate phi(y) * (1 - Phi(y - 3)) dy with Simpson's rule.
  const int steps = 20000;
  const double a = -12.0;
  const double b = 15.0;
  const double h = (b - a) / steps;
  auto f = [](double y) {
    const double phi = std::exp(-0.5 * y * y) / std::sqrt(2.0 * M_PI);
    return phi * 0.5 * std::erfc((y - 3.0) / std::sqrt(2.0));
  };
  double integral = f(a) + f(b);
  for (int k = 1; k < steps; ++k) integral += (k % 2 == 1 ? 4.0 : 2.0) * f(a + k * h);
  integral *= h / 3.0;

  const std::size_t vocab = 5000;
  const std::size_t dim = 10;
  const std::size_t concept_size = 200;
  const auto key = derive_key(7, {"separable-acceptance"}, 0);
  std::vector<double> values(vocab * dim);
  for (std::size_t i = 0; i < vocab; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      values[i * dim + k] = gaussian_at(key, i * dim + k) + (i < concept_size && k == 0 ? 3.0 : 0.0);
    }
  }
  const EmbeddingStore store("separable", dim, synthetic_vocabulary(vocab), values);
  std::vector<std::string> words(store.words().begin(), store.words().begin() + concept_size);
  const auto c = resolve(make_concept("shifted", words), store);
  ExperimentConfig cfg;
  cfg.iterations = 100;
  cfg.master_seed = 2;
  const auto r = run_concept(store, c, cfg);
  const bool oracle_ok = std::abs(integral - closed) < 1e-9;
  report(2, r.mean.auc >= 0.90 && oracle_ok,
         "separable N(3e1, I) vs N(0, I), d=10, size 200, 100 iterations: mean AUC " +
             fmt("%.4f", r.mean.auc) + " >= 0.90; Bayes AUC " + fmt("%.10f", closed) +
             " (numerical integration " + fmt("%.10f", integral) + ")");
}

// 3. Rank-based AUC equals the pairwise definition.
void criterion_auc_oracle() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    RandomStream rs(derive_key(seed, {"auc-acceptance"}, 0));
    const std::size_t n = 2 + rs.below(199);
    const std::size_t levels = 1 + rs.below(30);
    std::vector<double> s(n);
    std::vector<bool> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = seed % 2 == 0 ? static_cast<double>(rs.below(levels)) : rs.uniform();
      y[i] = rs.below(2) == 1;
    }
    y[0] = true;
    y[1] = false;
    double wins = 0.0;
    double pairs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!y[i] || y[j]) continue;
        pairs += 1.0;
        wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
      }
    }
    worst = std::max(worst, std::abs(roc_auc(s, y) - wins / pairs));
  }
  report(3, worst <= 1e-12,
         "roc_auc vs pairwise oracle on 1000 instances (n <= 200, ties): max |diff| = " +
             fmt("%.3g", worst));
}

// 4. Analytic gradient against central differences.
void criterion_gradient() {
  const double step = 1e-5;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomStream rs(derive_key(seed, {"gradient-acceptance"}, 0));
    const std::size_t dim = 1 + rs.below(12);
    const std::size_t rows = 2 + rs.below(30);
    LabeledBatch batch;
    batch.dimension = dim;
    for (std::size_t i = 0; i < rows * dim; ++i) batch.features.push_back(rs.uniform() * 4 - 2);
    for (std::size_t i = 0; i < rows; ++i) batch.labels.push_back(static_cast<double>(rs.below(2)));
    std::vector<double> w(dim);
    for (auto& v : w) v = rs.uniform() * 2 - 1;
    const double bias = rs.uniform() - 0.5;
    const double l2 = seed % 4 == 0 ? 0.05 : 0.0;

    const auto g = cross_entropy(batch, w, bias, l2);
    std::vector<double> numeric;
    for (std::size_t k = 0; k <= dim; ++k) {
      auto wp = w;
      auto wm = w;
      double bp = bias;
      double bm = bias;
      if (k < dim) {
        wp[k] += step;
        wm[k] -= step;
      } else {
        bp += step;
        bm -= step;
      }
      numeric.push_back((cross_entropy(batch, wp, bp, l2).loss - cross_entropy(batch, wm, bm, l2).loss) /
                        (2 * step));
    }
    double diff = 0.0;
    double na = 0.0;
    double nn = 0.0;
    for (std::size_t k = 0; k <= dim; ++k) {
      const double an = k < dim ? g.weights[k] : g.bias;
      diff += (an - numeric[k]) * (an - numeric[k]);
      na += an * an;
      nn += numeric[k] * numeric[k];
    }
    const double denom = std::max({std::sqrt(na), std::sqrt(nn), 1e-12});
    worst = std::max(worst, std::sqrt(diff) / denom);
  }
  report(4, worst <= 1e-5,
         "cross-entropy gradient vs central differences (step 1e-5) on 100 instances: max relative "
         "error " + fmt("%.3g", worst));
}

// 5. Exact Wilcoxon p-values and the table comparison.
void criterion_wilcoxon() {
  std::size_t mismatches = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomStream rs(derive_key(seed, {"wilcoxon-acceptance"}, 0));
    const std::size_t n = 2 + rs.below(11);
    std::vector<double> x(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(rs.below(7));
      y[i] = static_cast<double>(rs.below(7));
    }
    if (x == y) x[0] += 1.0;
    std::vector<double> d;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] != y[i]) d.push_back(x[i] - y[i]);
    }
    std::vector<double> rank(d.size());
    double w_plus = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      double below = 0.0;
      double equal = 0.0;
      for (double e : d) {
        if (std::abs(e) < std::abs(d[i])) below += 1.0;
        else if (std::abs(e) == std::abs(d[i])) equal += 1.0;
      }
      rank[i] = below + (equal + 1.0) / 2.0;
      if (d[i] > 0) w_plus += rank[i];
    }
    double ge = 0.0;
    double le = 0.0;
    const unsigned long long patterns = 1ULL << d.size();
    for (unsigned long long mask = 0; mask < patterns; ++mask) {
      double s = 0.0;
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (mask & (1ULL << i)) s += rank[i];
      }
      if (s >= w_plus) ge += 1.0;
      if (s <= w_plus) le += 1.0;
    }
    const double total = static_cast<double>(patterns);
    const double pg = ge / total;
    const double pl = le / total;
    const double pt = std::min(1.0, 2.0 * std::min(pg, pl));
    if (wilcoxon_signed_rank(x, y, Alternative::greater).p_value != pg) ++mismatches;
    if (wilcoxon_signed_rank(x, y, Alternative::less).p_value != pl) ++mismatches;
    if (wilcoxon_signed_rank(x, y, Alternative::two_sided).p_value != pt) ++mismatches;
  }

  const auto dir = scratch_dir("compare");
  const int code = run_cli("compare --auc-table '" + (kData / "auc_table.tsv").string() +
                               "' --a fasttext --b glove --alternative greater --alpha 0.01 "
                               "--reference-w 3 --reference-p 0.0088 --out '" + (dir / "runs").string() + "'",
                           dir / "stdout.txt");
  const std::string out = slurp(dir / "stdout.txt");
  const bool has_w = out.find("W = 5") != std::string::npos;
  const bool has_p = out.find("p = 0.00878906 (exact)") != std::string::npos;
  const bool has_note = out.find("rounded to 3 decimals") != std::string::npos &&
                        out.find("reference: W = 3 p = 0.0088") != std::string::npos &&
                        out.find("W differs from the reference") != std::string::npos;
  fs::remove_all(dir);
  report(5, mismatches == 0 && code == 0 && has_w && has_p && has_note,
         "Wilcoxon exact p vs 2^n enumeration on 200 samples (n <= 12, ties and zeros): " +
             std::to_string(mismatches) + " mismatches; rounded-table comparison fasttext vs glove: W = 5, "
             "p = 9/1024, reference W = 3 / p = 0.0088 note " + (has_note ? "present" : "MISSING"));
}

// 6. A concept that beats every one of 1000 random lists.
void criterion_null_p() {
  const std::size_t vocab = 3000;
  const std::size_t dim = 10;
  const auto key = derive_key(13, {"null-acceptance"}, 0);
  std::vector<double> values(vocab * dim);
  for (std::size_t i = 0; i < vocab; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      values[i * dim + k] = gaussian_at(key, i * dim + k) + (i < 100 && k == 0 ? 3.0 : 0.0);
    }
  }
  const EmbeddingStore store("shifted", dim, synthetic_vocabulary(vocab), values);
  RunManifest m;
  m.name = "null-check";
  m.experiment.iterations = 20;
  m.experiment.random_list_count = 1000;
  m.experiment.random_list_size = 100;
  m.experiment.master_seed = 5;
  m.experiment.train.epochs = 30;
  std::vector<std::string> words(store.words().begin(), store.words().begin() + 100);
  const std::vector<ResolvedConcept> concepts{resolve(make_concept("shifted", words), store)};
  const auto rep = evaluate_embedding(m, store, concepts, true);
  const auto& p = rep.auc_p[0];
  const auto nulls = rep.nulls[rep.null_of[0]].values(&MetricValues::auc);
  const double null_max = *std::max_element(nulls.begin(), nulls.end());
  const std::string text = render_eval_text(m, {rep});
  const bool printed = text.find("< 0.001") != std::string::npos;
  report(6, p.exceedances == 0 && p.value == 1.0 / 1001.0 && printed && nulls.size() == 1000,
         "observed AUC " + fmt("%.4f", rep.concepts[0].mean.auc) + " vs max of 1000 null lists " +
             fmt("%.4f", null_max) + ": p = " + fmt("%.9f", p.value) + " (1/1001 = " +
             fmt("%.9f", 1.0 / 1001.0) + "), report shows '" + p.display() + "'");
}

// 7. Two full CLI runs, 1 and 8 workers, give identical files.
void criterion_determinism() {
  const auto dir = scratch_dir("determinism");
  const auto vectors = dir / "vectors.txt";
  if (run_cli("gen-random-embedding --words 4000 --dim 50 --seed 9 --out '" + vectors.string() + "'",
              dir / "gen.txt") != 0) {
    throw std::runtime_error("gen-random-embedding failed: " + slurp(dir / "gen.txt"));
  }
  std::string concepts;
  for (int c = 0; c < 3; ++c) {
    std::ofstream list(dir / ("list" + std::to_string(c) + ".txt"));
    for (int i = 0; i < 40 + 30 * c; ++i) {
      char word[16];
      std::snprintf(word, sizeof word, "w%06d", c * 500 + i * 3);
      list << word << "\n";
    }
    concepts += std::string(c ? "," : "") + R"({"name": "list)" + std::to_string(c) + R"(", "path": "list)" +
                std::to_string(c) + R"(.txt"})";
  }
  std::ofstream(dir / "run.json") << R"({
  "name": "determinism",
  "embeddings": [{"name": "gauss", "path": "vectors.txt"},
                 {"name": "gauss-fresh", "random": {"vocabulary_from": "gauss", "dimension": 20, "seed": 4}}],
  "concepts": [)" << concepts << R"(],
  "experiment": {"iterations": 40, "random_lists": 30, "random_list_size": 30, "seed": 77},
  "output": {"spill_iterations": true}
})";
  std::map<std::string, std::string> trees[2];
  const unsigned workers[2] = {1, 8};
  for (int k = 0; k < 2; ++k) {
    const auto root = dir / ("out" + std::to_string(workers[k]));
    const int code = run_cli("eval -m '" + (dir / "run.json").string() + "' --workers " +
                                 std::to_string(workers[k]) + " --out '" + root.string() + "' -q",
                             dir / "eval.txt");
    if (code != 0) throw std::runtime_error("eval failed: " + slurp(dir / "eval.txt"));
    const auto run_dir = only_subdir(root);
    for (const auto& e : fs::recursive_directory_iterator(run_dir)) {
      if (e.is_regular_file()) trees[k][fs::relative(e.path(), run_dir).string()] = slurp(e.path());
    }
  }
  std::size_t differing = 0;
  for (const auto& [name, content] : trees[0]) {
    auto it = trees[1].find(name);
    if (it == trees[1].end() || it->second != content) ++differing;
  }
  const bool same = differing == 0 && trees[0].size() == trees[1].size();
  fs::remove_all(dir);
  report(7, same && trees[0].size() >= 10,
         "eval at --workers 1 and --workers 8: " + std::to_string(trees[0].size()) + " vs " +
             std::to_string(trees[1].size()) + " files, " + std::to_string(differing) +
             " differ byte-wise");
}

}  // namespace

int main() {
  guarded(1, criterion_random_baseline);
  guarded(2, criterion_separable);
  guarded(3, criterion_auc_oracle);
  guarded(4, criterion_gradient);
  guarded(5, criterion_wilcoxon);
  guarded(6, criterion_null_p);
  guarded(7, criterion_determinism);
  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
