//
// Copyright 2026 The PrivDPR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "common/errors.hpp"
#include "common/hash.hpp"
#include "common/rng.hpp"
#include "evaluation/downstream.hpp"
#include "evaluation/stats.hpp"
#include "graph_core/edge_list_io.hpp"
#include "harness/artifacts.hpp"
#include "synthesis/synthesis.hpp"
#include "trainer/trainer.hpp"

namespace privdpr {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kLinkTrainFraction = 0.8;
constexpr double kNodeTrainFraction = 0.9;

LoadOptions DatasetLoadOptions(const fs::path& path,
                               const std::optional<std::string>& format,
                               bool symmetrize) {
  LoadOptions options;
  options.format = format ? (*format == "csv" ? EdgeListFormat::kCsv
                                              : EdgeListFormat::kTsv)
                          : FormatFromPath(path);
  options.symmetrize = symmetrize;
  return options;
}

std::string EpsilonDirName(double epsilon) {
  return "eps_" + FormatDouble(epsilon);
}

struct Job {
  std::size_t epsilon_index = 0;
  double epsilon = 0.0;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  fs::path relative_dir;
};

std::optional<fs::path> LatestCheckpoint(const fs::path& dir) {
  if (!fs::is_directory(dir)) return std::nullopt;
  std::optional<fs::path> best;
  long best_epoch = -1;
  for (const auto& entry : fs::directory_iterator(dir)) {
    long epoch = -1;
    std::string name = entry.path().filename().string();
    if (std::sscanf(name.c_str(), "checkpoint_epoch_%ld.bin", &epoch) == 1 &&
        epoch > best_epoch) {
      best_epoch = epoch;
      best = entry.path();
    }
  }
  return best;
}

class Logger {
 public:
  explicit Logger(std::ostream* out) : out_(out) {}
  void operator()(const std::string& line) {
    if (out_ == nullptr) return;
    std::lock_guard<std::mutex> lock(mu_);
    *out_ << line << std::endl;
  }

 private:
  std::ostream* out_;
  std::mutex mu_;
};

json RunOne(const Graph& g, const ExperimentConfig& cfg, const Job& job,
            const fs::path& out_dir, bool resume, Logger& log) {
  const fs::path dir = out_dir / job.relative_dir;
  fs::create_directories(dir);
  TrainConfig tc = cfg.train;
  tc.epsilon = job.epsilon;
  tc.master_seed = job.seed;
  if (cfg.checkpoints) tc.checkpoint_dir = dir / "checkpoints";

  std::optional<TrainState> state;
  if (resume && tc.checkpoint_dir) {
    if (auto latest = LatestCheckpoint(*tc.checkpoint_dir)) {
      log("resuming " + job.relative_dir.string() + " from " +
          latest->filename().string());
      state = LoadResumeState(*latest, tc);
    }
  }
  log("training " + job.relative_dir.string());
  TrainResult trained = Train(g, tc, nullptr, std::move(state));

  Rng rng = MakeRng(job.seed, StreamPurpose::kSynthesis);
  SynthesisResult synth = SampleGraph(trained.scores, cfg.target_edges, rng);

  WriteEdgeListFile(dir / "synthetic.edges", synth.graph);
  WriteJsonFile(dir / "ledger.json", ToJson(trained.ledger));
  WriteEmbeddings(dir / "embeddings.tsv", trained.theta.embeddings);
  std::vector<std::string> warnings = trained.warnings;
  warnings.insert(warnings.end(), synth.warnings.begin(), synth.warnings.end());
  json sidecar = {
      {"epsilon", job.epsilon},
      {"run", job.run},
      {"seed", job.seed},
      {"target_edges", synth.target_edges},
      {"target_edges_source", cfg.target_edges ? "config" : "default"},
      {"first_phase_edges", synth.first_phase_edges},
      {"fallback_rows", synth.fallback_rows},
      {"hidden_layers", trained.theta.hidden_layers()},
      {"final_batch_loss", trained.batch_losses.empty()
                               ? json()
                               : json(trained.batch_losses.back())},
      {"privacy", ToJson(trained.privacy)},
      {"warnings", warnings}};
  WriteJsonFile(dir / "synthetic.json", sidecar);

  json files;
  for (const char* name :
       {"synthetic.edges", "synthetic.json", "ledger.json", "embeddings.tsv"}) {
    files[name] = HashFileHex(dir / name);
  }
  log("finished " + job.relative_dir.string() + " (" +
      std::to_string(synth.target_edges) + " edges)");
  return {{"epsilon", job.epsilon},
          {"epsilon_index", job.epsilon_index},
          {"run", job.run},
          {"seed", job.seed},
          {"dir", job.relative_dir.generic_string()},
          {"files", files},
          {"warnings", warnings}};
}

// Checks everything derivable before training so that all problems surface
// together and before any output is written.
void PreflightChecks(const Graph& g, const ExperimentConfig& cfg) {
  std::vector<std::string> problems;
  const std::size_t n = g.num_nodes();
  if (n < 2) problems.push_back("dataset must have at least two nodes");
  for (double eps : cfg.epsilons) {
    TrainConfig tc = cfg.train;
    tc.epsilon = eps;
    try {
      DerivePrivacy(g, tc);
    } catch (const ValidationError& e) {
      for (const auto& p : e.problems()) {
        problems.push_back("epsilon " + FormatDouble(eps) + ": " + p);
      }
    } catch (const Error& e) {
      problems.push_back("epsilon " + FormatDouble(eps) + ": " + e.what());
    }
  }
  if (cfg.target_edges) {
    const std::size_t floor = (n + 1) / 2;
    const std::size_t ceiling = n * (n - 1) / 2;
    if (*cfg.target_edges < floor || *cfg.target_edges > ceiling) {
      problems.push_back("target_edges must lie in [" + std::to_string(floor) +
                         ", " + std::to_string(ceiling) + "]");
    }
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

double Mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

double SampleStd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mean = Mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

json Summary(const std::vector<double>& values) {
  if (values.empty()) return {{"values", json::array()}, {"mean", nullptr}, {"std", nullptr}};
  return {{"values", values}, {"mean", Mean(values)}, {"std", SampleStd(values)}};
}

std::string Cell(const json& v) {
  return v.is_null() ? "" : FormatDouble(v.get<double>());
}

}  // namespace

SynthSummary RunSynth(const ExperimentConfig& cfg, bool resume,
                      std::ostream* log_stream) {
  cfg.Validate();
  Logger log(log_stream);
  LoadedGraph loaded = LoadEdgeListFile(
      cfg.dataset.edges, DatasetLoadOptions(cfg.dataset.edges, cfg.dataset.format,
                                            cfg.dataset.symmetrize));
  const Graph& g = loaded.graph;
  PreflightChecks(g, cfg);

  const fs::path out = cfg.output_dir;
  fs::create_directories(out);
  {
    std::ostringstream map;
    WriteNodeMap(map, loaded.original_ids);
    WriteTextFile(out / "node_map.csv", map.str());
  }

  std::vector<Job> jobs;
  for (std::size_t e = 0; e < cfg.epsilons.size(); ++e) {
    for (std::size_t r = 0; r < cfg.runs; ++r) {
      Job job;
      job.epsilon_index = e;
      job.epsilon = cfg.epsilons[e];
      job.run = r;
      job.seed = DeriveSeed(cfg.master_seed, StreamPurpose::kRun, {e, r});
      job.relative_dir = fs::path(EpsilonDirName(job.epsilon)) /
                         ("run_" + std::to_string(r));
      jobs.push_back(job);
    }
  }
  log("dataset: " + std::to_string(g.num_nodes()) + " nodes, " +
      std::to_string(g.num_edges()) + " directed edges; " +
      std::to_string(jobs.size()) + " runs");

  std::vector<json> entries(jobs.size());
  std::vector<std::exception_ptr> failures(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      try {
        entries[k] = RunOne(g, cfg, jobs[k], out, resume, log);
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(cfg.threads, jobs.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  SynthSummary summary;
  summary.output_dir = out;
  summary.completed_runs = jobs.size();
  for (const json& entry : entries) {
    for (const auto& w : entry.at("warnings")) {
      summary.warnings.push_back(entry.at("dir").get<std::string>() + ": " +
                                 w.get<std::string>());
    }
  }
  std::sort(summary.warnings.begin(), summary.warnings.end());
  summary.warnings.erase(
      std::unique(summary.warnings.begin(), summary.warnings.end()),
      summary.warnings.end());

  json manifest = {
      {"schema", "privdpr-manifest/1"},
      {"code_version", kCodeVersion},
      {"config", ToJson(cfg)},
      {"dataset",
       {{"edges_hash", HashFileHex(cfg.dataset.edges)},
        {"num_nodes", g.num_nodes()},
        {"num_directed_edges", g.num_edges()},
        {"node_map_hash", HashFileHex(out / "node_map.csv")}}},
      {"runs", entries}};
  WriteJsonFile(out / "manifest.json", manifest);
  return summary;
}

json RunEval(const fs::path& original, const fs::path& synthetic_dir,
             const EvalOptions& options, std::ostream* log_stream) {
  Logger log(log_stream);
  const fs::path manifest_path = synthetic_dir / "manifest.json";
  if (!fs::exists(manifest_path)) {
    throw ValidationError({"no manifest.json in " + synthetic_dir.string()});
  }
  const json manifest = ReadJsonFile(manifest_path);
  const json& dataset_cfg = manifest.at("config").at("dataset");
  std::optional<std::string> format;
  if (dataset_cfg.contains("format")) format = dataset_cfg.at("format").get<std::string>();
  LoadedGraph loaded = LoadEdgeListFile(
      original, DatasetLoadOptions(original, format,
                                   dataset_cfg.at("symmetrize").get<bool>()));
  const Graph& g = loaded.graph;
  const GraphStats original_stats = ComputeStats(g);

  LinkScorer scorer = options.link_scorer.value_or(
      manifest.at("config").value("link_scorer", "embedding") == "common_neighbors"
          ? LinkScorer::kCommonNeighbors
          : LinkScorer::kEmbedding);
  std::vector<int> labels;
  std::vector<std::string> warnings;
  if (options.downstream) {
    std::optional<fs::path> labels_path = options.labels;
    if (!labels_path && dataset_cfg.contains("labels")) {
      labels_path = fs::path(dataset_cfg.at("labels").get<std::string>());
    }
    if (labels_path) {
      labels = ReadLabels(*labels_path, loaded.original_ids);
    } else {
      warnings.push_back("no labels available; node classification skipped");
    }
  }

  // Runs grouped by epsilon in manifest order.
  std::map<std::size_t, std::vector<json>> groups;
  for (const json& run : manifest.at("runs")) {
    groups[run.at("epsilon_index").get<std::size_t>()].push_back(run);
  }

  json report_groups = json::array();
  std::ostringstream csv;
  csv << "epsilon,metric,run,original,synthetic,relative_error\n";
  for (const auto& [index, runs] : groups) {
    const double epsilon = runs.front().at("epsilon").get<double>();
    std::vector<std::size_t> found, missing;
    std::map<Metric, std::vector<double>> values;
    std::map<Metric, json> per_run;
    std::vector<double> ks_values, auc_values, f1_values;
    json privacy;
    for (const json& run : runs) {
      const std::size_t run_index = run.at("run").get<std::size_t>();
      const fs::path dir = synthetic_dir / run.at("dir").get<std::string>();
      const fs::path edges = dir / "synthetic.edges";
      if (!fs::exists(edges)) {
        missing.push_back(run_index);
        continue;
      }
      found.push_back(run_index);
      log("evaluating " + run.at("dir").get<std::string>());
      Graph synthetic = LoadEdgeListFile(edges, LoadOptions{}).graph;
      if (synthetic.num_nodes() != g.num_nodes()) {
        throw Error(ErrorCode::kValidation,
                    edges.string() + " has " +
                        std::to_string(synthetic.num_nodes()) +
                        " nodes, original has " + std::to_string(g.num_nodes()));
      }
      if (privacy.is_null() && fs::exists(dir / "synthetic.json")) {
        privacy = ReadJsonFile(dir / "synthetic.json").at("privacy");
      }
      const GraphStats stats = ComputeStats(synthetic);
      const std::string eps_cell = FormatDouble(epsilon);
      const std::string run_cell = std::to_string(run_index);
      for (Metric m : kAllMetrics) {
        std::optional<double> truth = MetricValue(original_stats, m);
        std::optional<double> v = MetricValue(stats, m);
        per_run[m].push_back(v ? json(*v) : json());
        if (v) values[m].push_back(*v);
        std::string rel;
        if (v && truth && *truth != 0.0) {
          rel = FormatDouble(std::abs(*v - *truth) / std::abs(*truth));
        }
        csv << eps_cell << ',' << MetricName(m) << ',' << run_cell << ','
            << (truth ? FormatDouble(*truth) : "") << ','
            << (v ? FormatDouble(*v) : "") << ',' << rel << '\n';
      }
      const double ks = KsStatistic(original_stats.degree_sequence,
                                    stats.degree_sequence);
      ks_values.push_back(ks);
      csv << eps_cell << ",KS," << run_cell << ",," << FormatDouble(ks) << ",\n";

      if (options.downstream) {
        Rng link_rng = MakeRng(run.at("seed").get<std::uint64_t>(),
                               StreamPurpose::kEvaluation, {0});
        double auc = 0.0;
        if (scorer == LinkScorer::kEmbedding) {
          auc = LinkPredictionAuc(g, ReadEmbeddings(dir / "embeddings.tsv"),
                                  kLinkTrainFraction, link_rng);
        } else {
          auc = LinkPredictionAucCommonNeighbors(g, synthetic,
                                                 kLinkTrainFraction, link_rng);
        }
        auc_values.push_back(auc);
        csv << eps_cell << ",AUC," << run_cell << ",," << FormatDouble(auc)
            << ",\n";
        if (!labels.empty()) {
          Rng node_rng = MakeRng(run.at("seed").get<std::uint64_t>(),
                                 StreamPurpose::kEvaluation, {1});
          const double f1 =
              NodeClassificationF1(ReadEmbeddings(dir / "embeddings.tsv"),
                                   labels, kNodeTrainFraction, node_rng);
          f1_values.push_back(f1);
          csv << eps_cell << ",MicroF1," << run_cell << ",,"
              << FormatDouble(f1) << ",\n";
        }
      }
    }

    const std::string eps_name = FormatDouble(epsilon);
    if (!missing.empty()) {
      std::string gaps;
      for (std::size_t r : missing) gaps += (gaps.empty() ? "" : ",") + std::to_string(r);
      warnings.push_back("epsilon " + eps_name + ": partial report, missing runs [" +
                         gaps + "]; aggregated over " +
                         std::to_string(found.size()) + " of " +
                         std::to_string(runs.size()));
    }
    json metrics;
    for (Metric m : kAllMetrics) {
      std::optional<double> truth = MetricValue(original_stats, m);
      json entry = {{"original", truth ? json(*truth) : json()},
                    {"synthetic", per_run.count(m) ? per_run[m] : json::array()},
                    {"mre", nullptr}};
      const auto& defined = values[m];
      if (!truth || *truth == 0.0) {
        if (!found.empty()) {
          warnings.push_back("epsilon " + eps_name + ": MRE of " +
                             MetricName(m) + " undefined (original is " +
                             (truth ? "zero" : "undefined") + ")");
        }
      } else if (!defined.empty()) {
        entry["mre"] = MeanRelativeError(*truth, defined);
        if (defined.size() < found.size()) {
          warnings.push_back("epsilon " + eps_name + ": " + MetricName(m) +
                             " undefined in some runs; MRE over " +
                             std::to_string(defined.size()));
        }
      }
      metrics[MetricName(m)] = entry;
    }
    json group = {{"epsilon", epsilon},
                  {"runs_expected", runs.size()},
                  {"runs_found", found},
                  {"runs_missing", missing},
                  {"metrics", metrics},
                  {"ks", Summary(ks_values)},
                  {"privacy", privacy}};
    if (options.downstream) {
      group["auc"] = Summary(auc_values);
      group["micro_f1"] = labels.empty() ? json() : Summary(f1_values);
    }
    report_groups.push_back(group);
  }

  json report = {{"schema", "privdpr-eval/1"},
                 {"code_version", kCodeVersion},
                 {"original",
                  {{"num_nodes", g.num_nodes()},
                   {"stats", ToJson(original_stats)}}},
                 {"downstream", options.downstream},
                 {"link_scorer", scorer == LinkScorer::kEmbedding
                                     ? "embedding"
                                     : "common_neighbors"},
                 {"groups", report_groups},
                 {"warnings", warnings}};
  const fs::path out = options.output_dir.value_or(synthetic_dir);
  fs::create_directories(out);
  WriteJsonFile(out / "eval_report.json", report);
  WriteTextFile(out / "eval_long.csv", csv.str());
  for (const std::string& w : warnings) log("warning: " + w);
  return report;
}

fs::path RunSweep(const ExperimentConfig& cfg, std::ostream* log) {
  if (cfg.epsilons.size() < 2) {
    throw ValidationError({"a sweep needs at least two epsilon values"});
  }
  cfg.Validate();
  RunSynth(cfg, false, log);
  EvalOptions options;
  options.downstream = cfg.downstream;
  options.link_scorer = cfg.link_scorer;
  options.labels = cfg.dataset.labels;
  const json report = RunEval(cfg.dataset.edges, cfg.output_dir, options, log);

  using Row = std::tuple<double, std::string, std::size_t, std::string>;
  std::vector<Row> rows;
  const json& stats = report.at("original").at("stats");
  for (const json& group : report.at("groups")) {
    const double eps = group.at("epsilon").get<double>();
    const auto& found = group.at("runs_found");
    for (const std::string& metric : cfg.sweep_metrics) {
      for (std::size_t k = 0; k < found.size(); ++k) {
        const std::size_t run = found[k].get<std::size_t>();
        std::string line;
        if (metric == "KS") {
          const std::string ks = Cell(group.at("ks").at("values")[k]);
          line = ks + ",," + ks;
        } else {
          const json& v = group.at("metrics").at(metric).at("synthetic")[k];
          const json& o = stats.at(metric);
          std::string score;
          if (!v.is_null() && !o.is_null() && o.get<double>() != 0.0) {
            score = FormatDouble(std::abs(v.get<double>() - o.get<double>()) /
                                 std::abs(o.get<double>()));
          }
          line = Cell(v) + "," + Cell(o) + "," + score;
        }
        rows.emplace_back(eps, metric, run, line);
      }
    }
  }
  std::sort(rows.begin(), rows.end());
  std::ostringstream csv;
  csv << kSweepSchema << "\n" << kSweepHeader << "\n";
  for (const auto& [eps, metric, run, line] : rows) {
    csv << FormatDouble(eps) << ',' << metric << ',' << run << ',' << line
        << '\n';
  }
  const fs::path path = cfg.output_dir / "sweep.csv";
  WriteTextFile(path, csv.str());
  return path;
}

std::string RunReport(const fs::path& dir) {
  const json report = ReadJsonFile(dir / "eval_report.json");
  const bool downstream = report.value("downstream", false);
  std::ostringstream out;
  out << "| epsilon | runs |";
  for (Metric m : kAllMetrics) out << ' ' << MetricName(m) << " MRE |";
  out << " KS |";
  if (downstream) out << " AUC | Micro-F1 |";
  out << "\n|---|---|";
  for (std::size_t k = 0; k < kAllMetrics.size(); ++k) out << "---|";
  out << "---|";
  if (downstream) out << "---|---|";
  out << '\n';
  auto fixed = [](const json& v) {
    if (v.is_null()) return std::string("n/a");
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v.get<double>());
    return std::string(buf);
  };
  auto mean_std = [&](const json& s) {
    if (s.is_null() || s.at("mean").is_null()) return std::string("n/a");
    return fixed(s.at("mean")) + " +/- " + fixed(s.at("std"));
  };
  for (const json& group : report.at("groups")) {
    out << "| " << FormatDouble(group.at("epsilon").get<double>()) << " | "
        << group.at("runs_found").size() << "/"
        << group.at("runs_expected").get<std::size_t>() << " |";
    for (Metric m : kAllMetrics) {
      out << ' ' << fixed(group.at("metrics").at(MetricName(m)).at("mre")) << " |";
    }
    out << ' ' << fixed(group.at("ks").at("mean")) << " |";
    if (downstream) {
      out << ' ' << mean_std(group.at("auc")) << " | "
          << mean_std(group.value("micro_f1", json())) << " |";
    }
    out << '\n';
  }
  for (const auto& w : report.at("warnings")) {
    out << "\nwarning: " << w.get<std::string>();
  }
  if (!report.at("warnings").empty()) out << '\n';
  WriteTextFile(dir / "summary.md", out.str());
  return out.str();
}

}  // namespace privdpr
