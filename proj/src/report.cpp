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

#include "learnability/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "learnability/error.hpp"

namespace learnability {

using nlohmann::json;

namespace {

struct MetricColumn {
  const char* header;
  const char* key;
  double MetricValues::*member;
};

constexpr MetricColumn kColumns[] = {
    {"Accuracy", "accuracy", &MetricValues::accuracy},
    {"Recall", "recall", &MetricValues::recall},
    {"FPR", "fpr", &MetricValues::fpr},
    {"Prec", "precision", &MetricValues::precision},
    {"AUC", "auc", &MetricValues::auc},
};

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string fixed6(double v) { return format("%.6f", v); }

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? " " + s : std::string(width - s.size(), ' ') + s;
}

json metrics_json(const MetricValues& v) {
  json j;
  for (const auto& c : kColumns) j[c.key] = v.*c.member;
  return j;
}

std::string compact_config(const RunManifest& m) {
  return json::parse(effective_config_json(m)).dump();
}

std::string random_label(const char* kind, const NullDistribution& null, bool sized) {
  std::string label = std::string("random(") + kind + ")";
  if (sized) label += "[" + std::to_string(null.list_size) + "]";
  return label;
}

std::string embedding_line(const EmbeddingReport& r) {
  std::ostringstream out;
  out << "embedding: " << r.embedding << "  dimension: " << r.dimension
      << "  vocabulary: " << r.vocabulary << "  inputs: " << (r.normalized ? "unit-normalized" : "raw")
      << "  duplicates skipped: " << r.skipped_duplicates;
  return out.str();
}

}  // namespace

std::string fixed3(double v) { return format("%.3f", v); }

std::string render_eval_text(const RunManifest& m, const std::vector<EmbeddingReport>& reports) {
  std::ostringstream out;
  out << "# learnability report: " << m.name << "\n";
  out << "# config: " << compact_config(m) << "\n";
  for (const auto& r : reports) {
    out << "\n" << embedding_line(r) << "\n";
    out << pad_right("L", 18) << pad_left("Raw", 6) << pad_left("Size", 6);
    for (const auto& c : kColumns) out << pad_left(c.header, 10);
    out << pad_left("p(AUC)", 10) << "\n";
    for (std::size_t i = 0; i < r.concepts.size(); ++i) {
      const auto& a = r.concepts[i];
      out << pad_right(a.concept_name, 18) << pad_left(std::to_string(a.raw_size), 6)
          << pad_left(std::to_string(a.resolved_size), 6);
      for (const auto& c : kColumns) out << pad_left(fixed3(a.mean.*c.member), 10);
      out << pad_left(r.auc_p[i].display(), 10) << "\n";
    }
    const bool sized = r.nulls.size() > 1 || m.experiment.match_null_size;
    for (const auto& null : r.nulls) {
      for (const char* kind : {"max", "avg"}) {
        const MetricValues& v = std::string(kind) == "max" ? null.max : null.mean;
        out << pad_right(random_label(kind, null, sized), 18) << pad_left("-", 6)
            << pad_left(std::to_string(null.list_size), 6);
        for (const auto& c : kColumns) out << pad_left(fixed3(v.*c.member), 10);
        out << pad_left("-", 10) << "\n";
      }
    }
  }
  return out.str();
}

std::string render_eval_tsv(const RunManifest& m, const std::vector<EmbeddingReport>& reports) {
  std::ostringstream out;
  out << "# config=" << compact_config(m) << "\n";
  out << "embedding\tconcept\traw_size\tsize";
  for (const auto& c : kColumns) out << "\t" << c.key;
  out << "\tauc_p\tauc_p_display\n";
  for (const auto& r : reports) {
    for (std::size_t i = 0; i < r.concepts.size(); ++i) {
      const auto& a = r.concepts[i];
      out << r.embedding << "\t" << a.concept_name << "\t" << a.raw_size << "\t" << a.resolved_size;
      for (const auto& c : kColumns) out << "\t" << fixed6(a.mean.*c.member);
      out << "\t" << fixed6(r.auc_p[i].value) << "\t" << r.auc_p[i].display() << "\n";
    }
    const bool sized = r.nulls.size() > 1 || m.experiment.match_null_size;
    for (const auto& null : r.nulls) {
      for (const char* kind : {"max", "avg"}) {
        const MetricValues& v = std::string(kind) == "max" ? null.max : null.mean;
        out << r.embedding << "\t" << random_label(kind, null, sized) << "\t-\t" << null.list_size;
        for (const auto& c : kColumns) out << "\t" << fixed6(v.*c.member);
        out << "\t-\t-\n";
      }
    }
  }
  return out.str();
}

std::string render_eval_jsonl(const RunManifest& m, const std::vector<EmbeddingReport>& reports) {
  std::ostringstream out;
  out << json{{"type", "config"}, {"config", json::parse(effective_config_json(m))}}.dump() << "\n";
  for (const auto& r : reports) {
    out << json{{"type", "embedding"},
                {"embedding", r.embedding},
                {"dimension", r.dimension},
                {"vocabulary", r.vocabulary},
                {"normalized", r.normalized},
                {"skipped_duplicates", r.skipped_duplicates}}
               .dump()
        << "\n";
    for (std::size_t i = 0; i < r.concepts.size(); ++i) {
      const auto& a = r.concepts[i];
      const auto& p = r.auc_p[i];
      out << json{{"type", "concept"},
                  {"embedding", r.embedding},
                  {"concept", a.concept_name},
                  {"raw_size", a.raw_size},
                  {"size", a.resolved_size},
                  {"iterations", a.iterations},
                  {"mean", metrics_json(a.mean)},
                  {"stddev", metrics_json(a.stddev)},
                  {"precision_undefined", a.precision_undefined},
                  {"null_list_size", r.nulls[r.null_of[i]].list_size},
                  {"auc_p", {{"value", p.value},
                             {"exceedances", p.exceedances},
                             {"null_count", p.null_count},
                             {"display", p.display()}}}}
                 .dump()
          << "\n";
    }
    for (const auto& null : r.nulls) {
      out << json{{"type", "random_max"}, {"embedding", r.embedding}, {"size", null.list_size},
                  {"lists", null.lists.size()}, {"mean", metrics_json(null.max)}}
                 .dump()
          << "\n";
      out << json{{"type", "random_avg"}, {"embedding", r.embedding}, {"size", null.list_size},
                  {"lists", null.lists.size()}, {"mean", metrics_json(null.mean)}}
                 .dump()
          << "\n";
    }
  }
  return out.str();
}

std::string render_null_jsonl(const NullDistribution& null) {
  std::ostringstream out;
  for (std::size_t j = 0; j < null.lists.size(); ++j) {
    const auto& l = null.lists[j];
    out << json{{"list", j},
                {"name", l.concept_name},
                {"embedding", null.embedding},
                {"size", l.resolved_size},
                {"iterations", l.iterations},
                {"mean", metrics_json(l.mean)},
                {"stddev", metrics_json(l.stddev)}}
               .dump()
        << "\n";
  }
  return out.str();
}

std::string render_null_histogram_tsv(const NullDistribution& null) {
  std::ostringstream out;
  out << "list";
  for (const auto& c : kColumns) out << "\t" << c.key;
  out << "\n";
  for (std::size_t j = 0; j < null.lists.size(); ++j) {
    out << j;
    for (const auto& c : kColumns) out << "\t" << fixed6(null.lists[j].mean.*c.member);
    out << "\n";
  }
  return out.str();
}

std::string render_null_text(const RunManifest& m, const NullDistribution& null, std::size_t bins) {
  std::ostringstream out;
  out << "# learnability null distribution: " << m.name << "\n";
  out << "# config: " << compact_config(m) << "\n";
  out << "\nembedding: " << null.embedding << "  random lists: " << null.lists.size()
      << "  list size: " << null.list_size << "\n";
  out << pad_right("L", 18) << pad_left("Size", 6);
  for (const auto& c : kColumns) out << pad_left(c.header, 10);
  out << "\n";
  for (const char* kind : {"max", "avg"}) {
    const MetricValues& v = std::string(kind) == "max" ? null.max : null.mean;
    out << pad_right(random_label(kind, null, false), 18) << pad_left(std::to_string(null.list_size), 6);
    for (const auto& c : kColumns) out << pad_left(fixed3(v.*c.member), 10);
    out << "\n";
  }
  for (const auto& c : kColumns) {
    const auto values = null.values(c.member);
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double width = hi > lo ? (hi - lo) / static_cast<double>(bins) : 1.0;
    std::vector<std::size_t> counts(bins, 0);
    for (double v : values) {
      auto b = hi > lo ? static_cast<std::size_t>((v - lo) / width) : 0;
      counts[std::min(b, bins - 1)]++;
    }
    out << "\nhistogram " << c.header << " (" << values.size() << " lists)\n";
    for (std::size_t b = 0; b < bins; ++b) {
      if (hi == lo && b > 0) break;
      const double left = lo + width * static_cast<double>(b);
      const double right = hi > lo ? left + width : hi;
      out << "  [" << fixed3(left) << ", " << fixed3(right) << ")" << pad_left(std::to_string(counts[b]), 6)
          << " " << std::string(std::min<std::size_t>(counts[b], 60), '#') << "\n";
    }
  }
  return out.str();
}

double ComparisonReport::mean(std::size_t column) const {
  double sum = 0.0;
  for (const auto& row : auc) sum += row.at(column);
  return auc.empty() ? 0.0 : sum / static_cast<double>(auc.size());
}

double ComparisonReport::median(std::size_t column) const {
  std::vector<double> v;
  for (const auto& row : auc) v.push_back(row.at(column));
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void run_comparison_test(ComparisonReport& r, const std::string& a, const std::string& b,
                         Alternative alternative, double alpha) {
  const auto col = [&](const std::string& name) {
    auto it = std::find(r.embeddings.begin(), r.embeddings.end(), name);
    if (it == r.embeddings.end()) throw InputError("no AUC column named '" + name + "'");
    return static_cast<std::size_t>(it - r.embeddings.begin());
  };
  const std::size_t ia = col(a);
  const std::size_t ib = col(b);
  if (ia == ib) throw InputError("compare needs two different embeddings");
  r.a = a;
  r.b = b;
  r.alpha = alpha;
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& row : r.auc) {
    x.push_back(row[ia]);
    y.push_back(row[ib]);
  }
  r.test.reset();
  r.critical_value.reset();
  r.indistinguishable_reason.clear();
  try {
    r.test = wilcoxon_signed_rank(x, y, alternative);
  } catch (const InvalidArgument& e) {
    r.indistinguishable_reason = e.what();
    return;
  }
  if (r.test->n_effective <= 30) {
    r.critical_value = wilcoxon_critical_value(r.test->n_effective, alpha,
                                               alternative == Alternative::two_sided);
  }
}

std::string render_comparison_text(const ComparisonReport& r, const std::string& config_header) {
  std::ostringstream out;
  out << "# learnability comparison: " << r.a << " vs " << r.b << "\n";
  if (!config_header.empty()) out << "# config: " << config_header << "\n";
  out << "\n" << pad_right("L", 18);
  for (const auto& e : r.embeddings) out << pad_left(e, 12);
  out << "\n";
  // '*' marks the best embedding for each row.
  auto row_line = [&](const std::string& label, const std::vector<double>& values) {
    const double best = *std::max_element(values.begin(), values.end());
    out << pad_right(label, 18);
    for (double v : values) out << pad_left(fixed3(v) + (v == best ? "*" : " "), 12);
    out << "\n";
  };
  for (std::size_t i = 0; i < r.concepts.size(); ++i) row_line(r.concepts[i], r.auc[i]);
  std::vector<double> means;
  std::vector<double> medians;
  for (std::size_t c = 0; c < r.embeddings.size(); ++c) {
    means.push_back(r.mean(c));
    medians.push_back(r.median(c));
  }
  row_line("Mean", means);
  row_line("Median", medians);

  out << "\nWilcoxon signed-rank test: " << r.a << " vs " << r.b;
  if (!r.test) {
    out << "\n  embeddings indistinguishable: " << r.indistinguishable_reason << "\n";
    return out.str();
  }
  const auto& t = *r.test;
  out << " (alternative: " << to_string(t.alternative) << ")\n";
  out << "  pairs used: " << t.n_effective << "  zero differences dropped: " << t.zeros_dropped
      << "  tied ranks: " << (t.has_ties ? "yes" : "no") << "\n";
  out << "  W+ = " << format("%g", t.w_plus) << "  W- = " << format("%g", t.w_minus)
      << "  W = " << format("%g", t.w_statistic) << "\n";
  out << "  p = " << format("%.6g", t.p_value) << " (" << to_string(t.method) << ")\n";
  if (r.critical_value) {
    const bool reject = t.w_statistic <= *r.critical_value;
    out << "  table critical value (alpha " << format("%g", r.alpha) << ", "
        << (t.alternative == Alternative::two_sided ? "two-sided" : "one-sided") << ", n = "
        << t.n_effective << "): " << *r.critical_value << " -> "
        << (reject ? "reject" : "do not reject") << " the null hypothesis\n";
  } else if (t.n_effective <= 30) {
    out << "  table critical value: none at alpha " << format("%g", r.alpha) << " for n = "
        << t.n_effective << "\n";
  }
  if (r.from_table) {
    out << "  note: AUCs were read from a table rounded to 3 decimals; rounding merges and "
           "shifts ranks, so W can differ from a run on unrounded AUCs\n";
  }
  if (r.reference_w || r.reference_p) {
    out << "  reference:";
    if (r.reference_w) out << " W = " << format("%g", *r.reference_w);
    if (r.reference_p) out << " p = " << format("%g", *r.reference_p);
    out << "\n  recomputed: W = " << format("%g", t.w_statistic) << " p = " << format("%.6g", t.p_value);
    if (r.reference_w) {
      out << (std::abs(*r.reference_w - t.w_statistic) < 1e-9 ? "; W matches the reference"
                                                               : "; W differs from the reference");
    }
    if (r.reference_p) {
      out << (std::abs(*r.reference_p - t.p_value) <= 0.5e-4 ? "; p matches the reference to 4 decimals"
                                                            : "; p differs from the reference");
    }
    out << "\n";
  }
  return out.str();
}

std::string render_comparison_tsv(const ComparisonReport& r) {
  std::ostringstream out;
  out << "concept";
  for (const auto& e : r.embeddings) out << "\t" << e;
  out << "\n";
  for (std::size_t i = 0; i < r.concepts.size(); ++i) {
    out << r.concepts[i];
    for (double v : r.auc[i]) out << "\t" << fixed6(v);
    out << "\n";
  }
  out << "Mean";
  for (std::size_t c = 0; c < r.embeddings.size(); ++c) out << "\t" << fixed6(r.mean(c));
  out << "\nMedian";
  for (std::size_t c = 0; c < r.embeddings.size(); ++c) out << "\t" << fixed6(r.median(c));
  out << "\n";
  return out.str();
}

std::string render_comparison_jsonl(const ComparisonReport& r) {
  std::ostringstream out;
  for (std::size_t i = 0; i < r.concepts.size(); ++i) {
    json row{{"type", "concept"}, {"concept", r.concepts[i]}};
    for (std::size_t c = 0; c < r.embeddings.size(); ++c) row["auc"][r.embeddings[c]] = r.auc[i][c];
    out << row.dump() << "\n";
  }
  json mean{{"type", "mean"}};
  json median{{"type", "median"}};
  for (std::size_t c = 0; c < r.embeddings.size(); ++c) {
    mean["auc"][r.embeddings[c]] = r.mean(c);
    median["auc"][r.embeddings[c]] = r.median(c);
  }
  out << mean.dump() << "\n" << median.dump() << "\n";
  json test{{"type", "wilcoxon"}, {"a", r.a}, {"b", r.b}};
  if (r.test) {
    const auto& t = *r.test;
    test["alternative"] = to_string(t.alternative);
    test["method"] = to_string(t.method);
    test["n_effective"] = t.n_effective;
    test["zeros_dropped"] = t.zeros_dropped;
    test["w_plus"] = t.w_plus;
    test["w_minus"] = t.w_minus;
    test["w_statistic"] = t.w_statistic;
    test["p_value"] = t.p_value;
    test["has_ties"] = t.has_ties;
    test["alpha"] = r.alpha;
    test["critical_value"] = r.critical_value ? json(*r.critical_value) : json(nullptr);
  } else {
    test["indistinguishable"] = r.indistinguishable_reason;
  }
  if (r.reference_w) test["reference_w"] = *r.reference_w;
  if (r.reference_p) test["reference_p"] = *r.reference_p;
  test["from_table"] = r.from_table;
  out << test.dump() << "\n";
  return out.str();
}

ComparisonReport parse_auc_table(const std::string& text, const std::string& source) {
  ComparisonReport r;
  r.from_table = true;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::set<std::string> seen;
  std::vector<std::string> missing;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, '\t')) cells.push_back(cell);
    if (!have_header) {
      if (cells.size() < 3) throw ParseError(source, line_no, "header needs a concept column and two embeddings");
      r.embeddings.assign(cells.begin() + 1, cells.end());
      have_header = true;
      continue;
    }
    if (cells.empty()) continue;
    const std::string& name = cells[0];
    if (name == "Mean" || name == "Median" || name == "mean" || name == "median") continue;
    if (!seen.insert(name).second) throw ParseError(source, line_no, "duplicate concept '" + name + "'");
    std::vector<double> values;
    for (std::size_t c = 0; c < r.embeddings.size(); ++c) {
      const std::string v = c + 1 < cells.size() ? cells[c + 1] : "";
      if (v.empty() || v == "NA" || v == "-") {
        missing.push_back(name + " (" + r.embeddings[c] + ")");
        values.push_back(std::nan(""));
        continue;
      }
      try {
        std::size_t used = 0;
        values.push_back(std::stod(v, &used));
        if (used != v.size()) throw std::invalid_argument(v);
      } catch (const std::exception&) {
        throw ParseError(source, line_no, "non-numeric AUC '" + v + "'");
      }
    }
    r.concepts.push_back(name);
    r.auc.push_back(std::move(values));
  }
  if (!have_header || r.concepts.empty()) throw InputError(source + ": AUC table is empty");
  if (!missing.empty()) {
    std::string msg = source + ": concept sets differ between embeddings; missing:";
    for (const auto& m : missing) msg += " " + m;
    throw InputError(msg);
  }
  return r;
}

ComparisonReport read_auc_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open AUC table " + path.string());
  std::stringstream text;
  text << in.rdbuf();
  return parse_auc_table(text.str(), path.string());
}

}  // namespace learnability
