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

#include "graph_core/walks.hpp"

#include <random>

#include "common/errors.hpp"
#include "common/rng.hpp"

namespace privdpr {

std::size_t NominalBatchSize(std::size_t num_starts, std::size_t walks_per_node,
                             std::size_t walk_length) {
  return num_starts * walks_per_node * (walk_length - 1);
}

WalkBatch GenerateWalkBatch(const Graph& g, std::span<const NodeId> starts,
                            std::size_t walks_per_node,
                            std::size_t walk_length, std::uint64_t seed) {
  if (starts.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty start node list");
  }
  if (walks_per_node < 1 || walk_length < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "walk number must be >= 1 and walk length >= 2");
  }
  WalkBatch batch;
  batch.start_nodes.assign(starts.begin(), starts.end());
  batch.pairs.reserve(
      NominalBatchSize(starts.size(), walks_per_node, walk_length));
  for (std::size_t s = 0; s < starts.size(); ++s) {
    if (starts[s] >= g.num_nodes()) {
      throw Error(ErrorCode::kIndex, "start node out of range");
    }
    for (std::size_t w = 0; w < walks_per_node; ++w) {
      Rng rng(DeriveSeed(seed, StreamPurpose::kWalks, {s, w}));
      NodeId current = starts[s];
      for (std::size_t step = 1; step < walk_length; ++step) {
        const auto succ = g.successors(current);
        if (succ.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, succ.size() - 1);
        const NodeId next = succ[pick(rng)];
        batch.pairs.push_back({current, next});
        current = next;
      }
    }
  }
  return batch;
}

}  // namespace privdpr
