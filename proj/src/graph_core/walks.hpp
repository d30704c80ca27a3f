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

#ifndef PRIVDPR_GRAPH_CORE_WALKS_HPP_
#define PRIVDPR_GRAPH_CORE_WALKS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "graph_core/graph.hpp"

namespace privdpr {

struct WalkBatch {
  // Each pair is a traversed edge (consecutive nodes of a walk).
  std::vector<Edge> pairs;
  std::vector<NodeId> start_nodes;

  std::size_t size() const { return pairs.size(); }
};

// Upper bound on the batch pair count: starts * walks * (length - 1).
std::size_t NominalBatchSize(std::size_t num_starts, std::size_t walks_per_node,
                             std::size_t walk_length);

// Uniform random walks over out-neighbours. A walk stops early at a node
// without successors. Each walk draws from its own stream derived from
// (seed, start position, walk index), so the result does not depend on
// evaluation order.
WalkBatch GenerateWalkBatch(const Graph& g, std::span<const NodeId> starts,
                            std::size_t walks_per_node,
                            std::size_t walk_length, std::uint64_t seed);

}  // namespace privdpr

#endif  // PRIVDPR_GRAPH_CORE_WALKS_HPP_
