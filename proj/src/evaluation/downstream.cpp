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

#include "evaluation/downstream.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>

#include "common/errors.hpp"
#include "evaluation/stats.hpp"

namespace privdpr {
namespace {

constexpr int kMaxSplitRetries = 10;

double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

double RocAuc(std::span<const double> positive_scores,
              std::span<const double> negative_scores) {
  if (positive_scores.empty() || negative_scores.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "AUC needs positive and negative scores");
  }
  std::vector<std::pair<double, bool>> all;
  all.reserve(positive_scores.size() + negative_scores.size());
  for (double s : positive_scores) all.emplace_back(s, true);
  for (double s : negative_scores) all.emplace_back(s, false);
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double positive_rank_sum = 0.0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j].first == all[i].first) ++j;
    const double average_rank = (static_cast<double>(i + 1 + j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (all[k].second) positive_rank_sum += average_rank;
    }
    i = j;
  }
  const double np = static_cast<double>(positive_scores.size());
  const double nn = static_cast<double>(negative_scores.size());
  return (positive_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

LinkSplit SplitLinks(const Graph& original, double train_fraction, Rng& rng) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "train fraction must be in (0, 1)");
  }
  const auto adj = UndirectedAdjacency(original);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < adj.size(); ++u) {
    for (NodeId v : adj[u]) {
      if (u < v) edges.push_back({u, v});
    }
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  const auto train_count = static_cast<std::size_t>(
      std::floor(train_fraction * static_cast<double>(edges.size())));
  const std::size_t test_count = edges.size() - train_count;
  const std::size_t n = original.num_nodes();
  const std::size_t non_edges =
      n * (n - 1) / 2 - edges.size();
  if (train_count == 0 || test_count == 0 || non_edges < test_count) {
    throw Error(ErrorCode::kInvalidArgument,
                "graph too small for a link prediction split");
  }
  LinkSplit split;
  split.train_positive.assign(edges.begin(),
                              edges.begin() + static_cast<std::ptrdiff_t>(train_count));
  split.test_positive.assign(edges.begin() + static_cast<std::ptrdiff_t>(train_count),
                             edges.end());

  std::set<std::pair<NodeId, NodeId>> taken;
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  while (split.test_negative.size() < test_count) {
    NodeId a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (std::binary_search(adj[a].begin(), adj[a].end(), b)) continue;
    if (!taken.emplace(a, b).second) continue;
    split.test_negative.push_back({a, b});
  }
  return split;
}

double LinkPredictionAuc(const Graph& original, const Matrix& embeddings,
                         double train_fraction, Rng& rng) {
  if (static_cast<std::size_t>(embeddings.rows()) != original.num_nodes()) {
    throw Error(ErrorCode::kInvalidArgument,
                "embedding rows do not match node count");
  }
  const LinkSplit split = SplitLinks(original, train_fraction, rng);
  auto score = [&](const Edge& e) {
    return Sigmoid(embeddings.row(e.src).dot(embeddings.row(e.dst)));
  };
  std::vector<double> pos, neg;
  for (const Edge& e : split.test_positive) pos.push_back(score(e));
  for (const Edge& e : split.test_negative) neg.push_back(score(e));
  return RocAuc(pos, neg);
}

double LinkPredictionAucCommonNeighbors(const Graph& original,
                                        const Graph& scored_graph,
                                        double train_fraction, Rng& rng) {
  if (scored_graph.num_nodes() != original.num_nodes()) {
    throw Error(ErrorCode::kInvalidArgument, "node counts differ");
  }
  const LinkSplit split = SplitLinks(original, train_fraction, rng);
  const auto adj = UndirectedAdjacency(scored_graph);
  auto score = [&](const Edge& e) {
    std::vector<NodeId> common;
    std::set_intersection(adj[e.src].begin(), adj[e.src].end(),
                          adj[e.dst].begin(), adj[e.dst].end(),
                          std::back_inserter(common));
    return static_cast<double>(common.size());
  };
  std::vector<double> pos, neg;
  for (const Edge& e : split.test_positive) pos.push_back(score(e));
  for (const Edge& e : split.test_negative) neg.push_back(score(e));
  return RocAuc(pos, neg);
}

double MicroF1(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size() || truth.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "label vectors must be nonempty and equally long");
  }
  std::map<int, std::map<int, std::size_t>> confusion;
  for (std::size_t k = 0; k < truth.size(); ++k) ++confusion[truth[k]][predicted[k]];
  std::set<int> classes(truth.begin(), truth.end());
  classes.insert(predicted.begin(), predicted.end());
  double tp = 0.0, fp = 0.0, fn = 0.0;
  for (int c : classes) {
    for (int t : classes) {
      const auto row = confusion.find(t);
      if (row == confusion.end()) continue;
      const auto cell = row->second.find(c);
      const double count =
          cell == row->second.end() ? 0.0 : static_cast<double>(cell->second);
      if (t == c) {
        tp += count;
      } else {
        fp += count;  // predicted c, truly t
        fn += count;  // truly t, missed
      }
    }
  }
  const double precision = tp / (tp + fp);
  const double recall = tp / (tp + fn);
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

double NodeClassificationF1(const Matrix& embeddings, std::span<const int> labels,
                            double train_fraction, Rng& rng,
                            const LogisticConfig& config) {
  if (static_cast<std::size_t>(embeddings.rows()) != labels.size()) {
    throw Error(ErrorCode::kInvalidArgument, "one label per node required");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "train fraction must be in (0, 1)");
  }
  std::vector<NodeId> labelled;
  for (NodeId u = 0; u < labels.size(); ++u) {
    if (labels[u] >= 0) labelled.push_back(u);
  }
  std::vector<int> classes;
  for (NodeId u : labelled) classes.push_back(labels[u]);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  if (classes.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two classes");
  }

  std::vector<NodeId> train, test;
  for (int attempt = 0;; ++attempt) {
    std::vector<NodeId> order = labelled;
    std::shuffle(order.begin(), order.end(), rng);
    const auto cut = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(order.size())));
    train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cut));
    test.assign(order.begin() + static_cast<std::ptrdiff_t>(cut), order.end());
    std::set<int> seen;
    for (NodeId u : train) seen.insert(labels[u]);
    if (seen.size() >= 2 && !test.empty()) break;
    if (attempt + 1 >= kMaxSplitRetries) {
      throw Error(ErrorCode::kDegenerate,
                  "could not draw a training split with two classes");
    }
  }

  const Eigen::Index dim = embeddings.cols() + 1;
  const auto num_classes = static_cast<Eigen::Index>(classes.size());
  auto class_index = [&](int label) {
    return static_cast<Eigen::Index>(
        std::lower_bound(classes.begin(), classes.end(), label) - classes.begin());
  };
  auto design = [&](const std::vector<NodeId>& rows) {
    Matrix x(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto r = static_cast<Eigen::Index>(k);
      x.row(r).head(embeddings.cols()) = embeddings.row(rows[k]);
      x(r, dim - 1) = 1.0;
    }
    return x;
  };
  const Matrix x_train = design(train);
  Matrix y = Matrix::Zero(x_train.rows(), num_classes);
  for (std::size_t k = 0; k < train.size(); ++k) {
    y(static_cast<Eigen::Index>(k), class_index(labels[train[k]])) = 1.0;
  }
  Matrix w = Matrix::Zero(dim, num_classes);
  const double scale = config.learning_rate / static_cast<double>(train.size());
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const Matrix p = (x_train * w).unaryExpr(&Sigmoid);
    w -= scale * (x_train.transpose() * (p - y));
  }

  const Matrix scores = design(test) * w;
  std::vector<int> truth, predicted;
  for (std::size_t k = 0; k < test.size(); ++k) {
    Eigen::Index best = 0;
    scores.row(static_cast<Eigen::Index>(k)).maxCoeff(&best);
    truth.push_back(labels[test[k]]);
    predicted.push_back(classes[static_cast<std::size_t>(best)]);
  }
  return MicroF1(truth, predicted);
}

}  // namespace privdpr
