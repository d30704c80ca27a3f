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

#ifndef PRIVDPR_GRAPH_CORE_EDGE_LIST_IO_HPP_
#define PRIVDPR_GRAPH_CORE_EDGE_LIST_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "graph_core/graph.hpp"

namespace privdpr {

enum class EdgeListFormat { kTsv, kCsv };

// ".csv" selects kCsv, anything else kTsv.
EdgeListFormat FormatFromPath(const std::filesystem::path& path);

struct LoadOptions {
  EdgeListFormat format = EdgeListFormat::kTsv;
  bool symmetrize = false;
  // When set (or when the file carries a "# nodes: N" directive) ids are
  // taken verbatim and must lie in [0, N). Otherwise the distinct ids are
  // sorted and remapped to 0..N-1.
  std::optional<std::size_t> declared_nodes;
};

struct LoadedGraph {
  Graph graph;
  // original_ids[k] is the id that dense node k had in the input.
  std::vector<std::int64_t> original_ids;
};

LoadedGraph LoadEdgeList(std::istream& in, const LoadOptions& options);
LoadedGraph LoadEdgeListFile(const std::filesystem::path& path,
                             const LoadOptions& options);

// Writes a "# nodes: N" directive followed by one line per directed edge,
// so loading the output reproduces the same Graph.
void WriteEdgeList(std::ostream& out, const Graph& g, EdgeListFormat format);
void WriteEdgeListFile(const std::filesystem::path& path, const Graph& g);

// Two-column CSV: original_id,node_id.
void WriteNodeMap(std::ostream& out, const std::vector<std::int64_t>& ids);
std::vector<std::int64_t> ReadNodeMap(std::istream& in);

}  // namespace privdpr

#endif  // PRIVDPR_GRAPH_CORE_EDGE_LIST_IO_HPP_
