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

#include "graph_core/graph.hpp"

#include <algorithm>
#include <string>

#include "common/errors.hpp"

namespace privdpr {
namespace {

void BuildCsr(std::size_t num_nodes, const std::vector<Edge>& sorted,
              bool by_src, std::vector<std::size_t>& offsets,
              std::vector<NodeId>& targets) {
  offsets.assign(num_nodes + 1, 0);
  for (const Edge& e : sorted) ++offsets[(by_src ? e.src : e.dst) + 1];
  for (std::size_t i = 0; i < num_nodes; ++i) offsets[i + 1] += offsets[i];
  targets.resize(sorted.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : sorted) {
    NodeId key = by_src ? e.src : e.dst;
    targets[cursor[key]++] = by_src ? e.dst : e.src;
  }
  for (std::size_t i = 0; i < num_nodes; ++i) {
    std::sort(targets.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
              targets.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]));
  }
}

}  // namespace

Graph Graph::FromEdges(std::size_t num_nodes, std::span<const Edge> edges) {
  std::vector<Edge> clean;
  clean.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.src >= num_nodes || e.dst >= num_nodes) {
      throw Error(ErrorCode::kIndex,
                  "edge (" + std::to_string(e.src) + ", " +
                      std::to_string(e.dst) + ") out of range for " +
                      std::to_string(num_nodes) + " nodes");
    }
    if (e.src != e.dst) clean.push_back(e);
  }
  std::sort(clean.begin(), clean.end());
  clean.erase(std::unique(clean.begin(), clean.end()), clean.end());

  Graph g;
  g.num_nodes_ = num_nodes;
  BuildCsr(num_nodes, clean, true, g.out_offsets_, g.out_targets_);
  BuildCsr(num_nodes, clean, false, g.in_offsets_, g.in_sources_);
  return g;
}

Graph Graph::FromUndirectedEdges(std::size_t num_nodes,
                                 std::span<const Edge> edges) {
  std::vector<Edge> both;
  both.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    both.push_back(e);
    both.push_back({e.dst, e.src});
  }
  return FromEdges(num_nodes, both);
}

std::span<const NodeId> Graph::successors(NodeId node) const {
  return {out_targets_.data() + out_offsets_.at(node),
          out_offsets_.at(node + 1) - out_offsets_[node]};
}

std::span<const NodeId> Graph::predecessors(NodeId node) const {
  return {in_sources_.data() + in_offsets_.at(node),
          in_offsets_.at(node + 1) - in_offsets_[node]};
}

std::size_t Graph::out_degree(NodeId node) const {
  return out_offsets_.at(node + 1) - out_offsets_[node];
}

std::size_t Graph::in_degree(NodeId node) const {
  return in_offsets_.at(node + 1) - in_offsets_[node];
}

bool Graph::has_edge(NodeId src, NodeId dst) const {
  if (src >= num_nodes_ || dst >= num_nodes_) return false;
  auto succ = successors(src);
  return std::binary_search(succ.begin(), succ.end(), dst);
}

bool Graph::is_symmetric() const {
  for (NodeId u = 0; u < num_nodes_; ++u) {
    for (NodeId v : successors(u)) {
      if (!has_edge(v, u)) return false;
    }
  }
  return true;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes_; ++u) {
    for (NodeId v : successors(u)) out.push_back({u, v});
  }
  return out;
}

}  // namespace privdpr
