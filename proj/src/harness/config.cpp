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

#include "harness/config.hpp"

#include <fstream>
#include <set>

#include "common/errors.hpp"
#include "evaluation/stats.hpp"

namespace privdpr {
namespace {

using nlohmann::json;

void RejectUnknown(const json& obj, const std::set<std::string>& allowed,
                   const std::string& where, std::vector<std::string>& problems) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      problems.push_back("unknown key '" + where + key + "'");
    }
  }
}

template <typename T>
void Read(const json& obj, const char* key, T& out, const std::string& where,
          std::vector<std::string>& problems) {
  if (!obj.contains(key) || obj.at(key).is_null()) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    problems.push_back("'" + where + key + "' has the wrong type");
  }
}

std::filesystem::path Resolve(const std::filesystem::path& base,
                              const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

void ExperimentConfig::Validate() const {
  std::vector<std::string> problems;
  if (dataset.edges.empty()) {
    problems.push_back("dataset.edges is required");
  } else if (!std::filesystem::exists(dataset.edges)) {
    problems.push_back("dataset.edges: " + dataset.edges.string() +
                       " does not exist");
  }
  if (dataset.format && *dataset.format != "tsv" && *dataset.format != "csv") {
    problems.push_back("dataset.format must be 'tsv' or 'csv'");
  }
  if (dataset.labels && !std::filesystem::exists(*dataset.labels)) {
    problems.push_back("dataset.labels: " + dataset.labels->string() +
                       " does not exist");
  }
  if (epsilons.empty()) problems.push_back("privacy.epsilons must be nonempty");
  for (double e : epsilons) {
    if (!(e > 0.0)) problems.push_back("privacy.epsilons entries must be > 0");
  }
  if (runs < 1) problems.push_back("runs must be >= 1");
  if (threads < 1) problems.push_back("threads must be >= 1");
  if (target_edges && *target_edges == 0) {
    problems.push_back("target_edges must be positive");
  }
  for (const std::string& m : sweep_metrics) {
    if (m != "KS" && !ParseMetric(m)) {
      problems.push_back("sweep_metrics: unknown metric '" + m + "'");
    }
  }
  try {
    TrainConfig probe = train;
    probe.epsilon = 1.0;
    probe.Validate();
  } catch (const ValidationError& e) {
    for (const auto& p : e.problems()) problems.push_back("train: " + p);
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

ExperimentConfig ParseExperimentConfig(const json& doc,
                                       const std::filesystem::path& base_dir) {
  std::vector<std::string> problems;
  ExperimentConfig cfg;
  if (!doc.is_object()) throw ValidationError({"config must be an object"});
  RejectUnknown(doc,
                {"dataset", "train", "privacy", "runs", "output_dir",
                 "master_seed", "target_edges", "downstream", "link_scorer",
                 "threads", "checkpoints", "sweep_metrics"},
                "", problems);

  if (doc.contains("dataset")) {
    const json& d = doc.at("dataset");
    RejectUnknown(d, {"edges", "format", "symmetrize", "labels"}, "dataset.",
                  problems);
    std::string edges, labels, format;
    Read(d, "edges", edges, "dataset.", problems);
    Read(d, "labels", labels, "dataset.", problems);
    Read(d, "format", format, "dataset.", problems);
    Read(d, "symmetrize", cfg.dataset.symmetrize, "dataset.", problems);
    if (!edges.empty()) cfg.dataset.edges = Resolve(base_dir, edges);
    if (!labels.empty()) cfg.dataset.labels = Resolve(base_dir, labels);
    if (!format.empty()) cfg.dataset.format = format;
  }

  if (doc.contains("train")) {
    const json& t = doc.at("train");
    RejectUnknown(t,
                  {"gamma", "epochs", "batch_nodes", "walks_per_node",
                   "walk_length", "embedding_dim", "hidden_dim", "s",
                   "learning_rate", "shuffle_nodes", "init_scale",
                   "activation", "score_temperature", "power_iterations",
                   "power_tolerance"},
                  "train.", problems);
    TrainConfig& tc = cfg.train;
    Read(t, "gamma", tc.gamma, "train.", problems);
    Read(t, "epochs", tc.epochs, "train.", problems);
    Read(t, "batch_nodes", tc.batch_nodes, "train.", problems);
    Read(t, "walks_per_node", tc.walks_per_node, "train.", problems);
    Read(t, "walk_length", tc.walk_length, "train.", problems);
    Read(t, "embedding_dim", tc.embedding_dim, "train.", problems);
    Read(t, "hidden_dim", tc.hidden_dim, "train.", problems);
    Read(t, "s", tc.s, "train.", problems);
    Read(t, "learning_rate", tc.learning_rate, "train.", problems);
    Read(t, "shuffle_nodes", tc.shuffle_nodes, "train.", problems);
    Read(t, "init_scale", tc.init_scale, "train.", problems);
    Read(t, "score_temperature", tc.score_temperature, "train.", problems);
    Read(t, "power_iterations", tc.power_iterations, "train.", problems);
    Read(t, "power_tolerance", tc.power_tolerance, "train.", problems);
    std::string activation;
    Read(t, "activation", activation, "train.", problems);
    if (!activation.empty()) {
      try {
        tc.activation = ParseActivation(activation);
      } catch (const Error& e) {
        problems.push_back(std::string("train.activation: ") + e.what());
      }
    }
  }

  if (doc.contains("privacy")) {
    const json& p = doc.at("privacy");
    RejectUnknown(p, {"epsilons", "delta", "s_nabla", "s"}, "privacy.",
                  problems);
    Read(p, "epsilons", cfg.epsilons, "privacy.", problems);
    Read(p, "delta", cfg.train.delta, "privacy.", problems);
    Read(p, "s_nabla", cfg.train.s_nabla, "privacy.", problems);
    Read(p, "s", cfg.train.s, "privacy.", problems);
  }

  Read(doc, "runs", cfg.runs, "", problems);
  std::string out;
  Read(doc, "output_dir", out, "", problems);
  if (!out.empty()) cfg.output_dir = Resolve(base_dir, out);
  Read(doc, "master_seed", cfg.master_seed, "", problems);
  if (doc.contains("target_edges") && !doc.at("target_edges").is_null()) {
    std::size_t target = 0;
    Read(doc, "target_edges", target, "", problems);
    cfg.target_edges = target;
  }
  Read(doc, "downstream", cfg.downstream, "", problems);
  Read(doc, "threads", cfg.threads, "", problems);
  Read(doc, "checkpoints", cfg.checkpoints, "", problems);
  Read(doc, "sweep_metrics", cfg.sweep_metrics, "", problems);
  std::string scorer;
  Read(doc, "link_scorer", scorer, "", problems);
  if (scorer == "common_neighbors") {
    cfg.link_scorer = LinkScorer::kCommonNeighbors;
  } else if (!scorer.empty() && scorer != "embedding") {
    problems.push_back("link_scorer must be 'embedding' or 'common_neighbors'");
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return cfg;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError({"cannot open config " + path.string()});
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ValidationError({"config " + path.string() + ": " + e.what()});
  }
  return ParseExperimentConfig(doc, path.parent_path());
}

json ToJson(const TrainConfig& tc) {
  return {{"gamma", tc.gamma},
          {"epochs", tc.epochs},
          {"batch_nodes", tc.batch_nodes},
          {"walks_per_node", tc.walks_per_node},
          {"walk_length", tc.walk_length},
          {"embedding_dim", tc.embedding_dim},
          {"hidden_dim", tc.hidden_dim},
          {"s", tc.s},
          {"s_nabla", tc.s_nabla},
          {"learning_rate", tc.learning_rate},
          {"delta", tc.delta},
          {"shuffle_nodes", tc.shuffle_nodes},
          {"init_scale", tc.init_scale},
          {"activation", ActivationName(tc.activation)},
          {"score_temperature", tc.score_temperature},
          {"power_iterations", tc.power_iterations},
          {"power_tolerance", tc.power_tolerance}};
}

json ToJson(const ExperimentConfig& cfg) {
  json dataset = {{"edges", cfg.dataset.edges.lexically_normal().string()},
                  {"symmetrize", cfg.dataset.symmetrize}};
  if (cfg.dataset.format) dataset["format"] = *cfg.dataset.format;
  if (cfg.dataset.labels) dataset["labels"] = cfg.dataset.labels->lexically_normal().string();
  return {{"dataset", dataset},
          {"train", ToJson(cfg.train)},
          {"epsilons", cfg.epsilons},
          {"runs", cfg.runs},
          {"master_seed", cfg.master_seed},
          {"target_edges", cfg.target_edges ? json(*cfg.target_edges) : json()},
          {"downstream", cfg.downstream},
          {"link_scorer", cfg.link_scorer == LinkScorer::kEmbedding
                              ? "embedding"
                              : "common_neighbors"},
          {"checkpoints", cfg.checkpoints},
          {"sweep_metrics", cfg.sweep_metrics}};
}

}  // namespace privdpr
