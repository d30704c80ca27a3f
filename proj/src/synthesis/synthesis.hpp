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

#ifndef PRIVDPR_SYNTHESIS_SYNTHESIS_HPP_
#define PRIVDPR_SYNTHESIS_SYNTHESIS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "common/rng.hpp"
#include "graph_core/graph.hpp"
#include "trainer/score_matrix.hpp"

namespace privdpr {

// S_dagger = max(S, S^T), elementwise.
ScoreMatrix SymmetrizeScores(const ScoreMatrix& scores);

// Edge-independent model: S_dagger normalized to sum to one. Symmetric with
// a zero diagonal.
struct EdgeModel {
  ScoreMatrix probabilities;

  double at(NodeId i, NodeId j) const { return probabilities.at(i, j); }
};

// Throws a degenerate-model error for an all-zero score matrix.
EdgeModel ScoreToEdgeModel(const ScoreMatrix& scores);

// Number of upper-triangle entries of S_dagger whose standardized value has
// sigmoid above 0.5 (equivalently, entries above the mean), floored at
// ceil(N / 2). A constant S_dagger falls back to the count of nonzero
// upper-triangle entries.
std::size_t DefaultTargetEdges(const ScoreMatrix& scores);

struct WeightedPair {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 0.0;
};

// Draws k distinct pairs without replacement, each successive draw with
// probability proportional to weight among the pairs not yet drawn.
// Candidates with zero weight are never drawn. Returns pairs in draw order.
std::vector<WeightedPair> SampleWithoutReplacement(
    std::span<const WeightedPair> candidates, std::size_t k, Rng& rng);

struct SynthesisResult {
  Graph graph;  // undirected, stored as a symmetric directed graph
  std::size_t target_edges = 0;
  std::size_t first_phase_edges = 0;
  std::size_t fallback_rows = 0;
  std::vector<std::string> warnings;
};

// Two-phase reconstruction from scores alone:
//  1. nodes are visited in a random order; each node still without an edge
//     draws a neighbour j with probability s_ij / sum_v s_iv (uniform over
//     the other nodes when its row is empty);
//  2. further edges are drawn without replacement with probability
//     proportional to s_uv until target_edges undirected edges exist.
// The output is simple, symmetric, has no isolated nodes and exactly
// target_edges edges. target_edges defaults to DefaultTargetEdges, raised to
// the phase 1 edge count when that is larger; an explicit target below it is
// an error.
SynthesisResult SampleGraph(const ScoreMatrix& scores,
                            std::optional<std::size_t> target_edges, Rng& rng);

}  // namespace privdpr

#endif  // PRIVDPR_SYNTHESIS_SYNTHESIS_HPP_
