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

#ifndef PRIVDPR_DPR_MODEL_NETWORK_HPP_
#define PRIVDPR_DPR_MODEL_NETWORK_HPP_

#include <span>
#include <vector>

#include "dpr_model/theta.hpp"
#include "graph_core/graph.hpp"

namespace privdpr {

double Forward(const Theta& theta, NodeId node);

// f(v) for several nodes at once, one entry per input node.
Vector ForwardBatch(const Theta& theta, std::span<const NodeId> nodes);

// Per-edge loss from precomputed network outputs.
double EdgeLossFromOutputs(double f_src, double f_dst, double out_degree_src,
                           double in_degree_dst, double gamma,
                           double num_nodes);

// Decomposed per-edge loss for (src, dst). Throws a contract violation when
// the pair is not an edge of g.
double EdgeLoss(const Theta& theta, NodeId src, NodeId dst, const Graph& g,
                double gamma);

// Sum over every node j of
// (gamma * sum_{i in P_j} f(v_i) / d_i^out + (1 - gamma) / N - f(v_j))^2.
double FullObjective(const Theta& theta, const Graph& g, double gamma);

// FullObjective restricted to nodes with in-degree >= 1.
double FullObjectiveWithInEdges(const Theta& theta, const Graph& g,
                                double gamma);

struct Gradients {
  Matrix grad_embeddings;  // N x r, nonzero only on rows touched by the batch
  std::vector<Matrix> grad_weights;
  double loss = 0.0;  // sum of the per-edge losses
};

// Exact gradients of the summed per-edge loss over `pairs`, taken with
// respect to the stored (already normalized) weights. Repeated pairs count
// once per occurrence.
Gradients BatchGradients(const Theta& theta, std::span<const Edge> pairs,
                         const Graph& g, double gamma);

// df(v)/dv for a single node, as a length-r vector.
Vector InputGradient(const Theta& theta, NodeId node);

}  // namespace privdpr

#endif  // PRIVDPR_DPR_MODEL_NETWORK_HPP_
