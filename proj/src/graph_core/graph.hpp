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

#ifndef PRIVDPR_GRAPH_CORE_GRAPH_HPP_
#define PRIVDPR_GRAPH_CORE_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace privdpr {

using NodeId = std::uint32_t;

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable simple directed graph in compressed sparse row form. Both the
// successor and predecessor lists are kept sorted, so edge membership is a
// binary search.
class Graph {
 public:
  Graph() = default;

  // Builds a simple graph: self-loops and duplicate edges are dropped.
  // Throws an index error if an endpoint is >= num_nodes.
  static Graph FromEdges(std::size_t num_nodes, std::span<const Edge> edges);

  // Same as FromEdges but inserts both orientations of every edge.
  static Graph FromUndirectedEdges(std::size_t num_nodes,
                                   std::span<const Edge> edges);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return out_targets_.size(); }

  std::span<const NodeId> successors(NodeId node) const;
  std::span<const NodeId> predecessors(NodeId node) const;

  std::size_t out_degree(NodeId node) const;
  std::size_t in_degree(NodeId node) const;

  bool has_edge(NodeId src, NodeId dst) const;

  // True when every edge (i, j) has its reverse (j, i).
  bool is_symmetric() const;

  // All edges in (src, dst) lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t num_nodes_ = 0;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
};

}  // namespace privdpr

#endif  // PRIVDPR_GRAPH_CORE_GRAPH_HPP_
