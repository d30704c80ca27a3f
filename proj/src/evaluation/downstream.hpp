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

#ifndef PRIVDPR_EVALUATION_DOWNSTREAM_HPP_
#define PRIVDPR_EVALUATION_DOWNSTREAM_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "common/rng.hpp"
#include "dpr_model/theta.hpp"
#include "graph_core/graph.hpp"

namespace privdpr {

// Rank-based area under the ROC curve; tied scores get their average rank.
double RocAuc(std::span<const double> positive_scores,
              std::span<const double> negative_scores);

struct LinkSplit {
  std::vector<Edge> train_positive;  // undirected, src < dst
  std::vector<Edge> test_positive;
  std::vector<Edge> test_negative;   // node pairs without an edge
};

// Shuffles the undirected edges of `original`, holds out the last
// (1 - train_fraction) share as positive test pairs and draws as many
// non-adjacent pairs as negatives. Throws when the graph is too small.
LinkSplit SplitLinks(const Graph& original, double train_fraction, Rng& rng);

// Scores each test pair with sigmoid(<v_i, v_j>).
double LinkPredictionAuc(const Graph& original, const Matrix& embeddings,
                         double train_fraction, Rng& rng);

// Structural alternative: scores a test pair by its common-neighbour count
// in `scored_graph` (for example a synthetic graph).
double LinkPredictionAucCommonNeighbors(const Graph& original,
                                        const Graph& scored_graph,
                                        double train_fraction, Rng& rng);

// Micro-averaged F1 over single-label predictions, computed from the
// confusion matrix.
double MicroF1(std::span<const int> truth, std::span<const int> predicted);

struct LogisticConfig {
  std::size_t epochs = 500;
  double learning_rate = 0.1;
};

// One-vs-rest logistic regression on embedding rows, trained by full-batch
// gradient descent without regularization. Returns the Micro-F1 on the held
// out (1 - train_fraction) of labelled nodes. Negative labels mark
// unlabelled nodes. Splits whose training part holds fewer than two classes
// are redrawn up to ten times.
double NodeClassificationF1(const Matrix& embeddings, std::span<const int> labels,
                            double train_fraction, Rng& rng,
                            const LogisticConfig& config = {});

}  // namespace privdpr

#endif  // PRIVDPR_EVALUATION_DOWNSTREAM_HPP_
