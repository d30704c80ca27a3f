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

#include "graph_core/edge_list_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "common/errors.hpp"

namespace privdpr {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> Split(std::string_view line,
                                    EdgeListFormat format) {
  std::vector<std::string_view> fields;
  if (format == EdgeListFormat::kCsv) {
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(Trim(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return fields;
  }
  std::size_t pos = 0;
  while (pos < line.size()) {
    pos = line.find_first_not_of(" \t\r", pos);
    if (pos == std::string_view::npos) break;
    auto end = line.find_first_of(" \t\r", pos);
    if (end == std::string_view::npos) end = line.size();
    fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

std::int64_t ParseId(std::string_view field, std::size_t line_no) {
  std::int64_t value = 0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw ParseError(line_no, "expected integer node id, got '" +
                                  std::string(field) + "'");
  }
  return value;
}

// Parses "# nodes: N"; returns nullopt for ordinary comments.
std::optional<std::size_t> ParseNodesDirective(std::string_view comment,
                                               std::size_t line_no) {
  comment = Trim(comment.substr(1));
  constexpr std::string_view kKey = "nodes:";
  if (comment.substr(0, kKey.size()) != kKey) return std::nullopt;
  const auto value = ParseId(Trim(comment.substr(kKey.size())), line_no);
  if (value < 0) throw ParseError(line_no, "negative node count");
  return static_cast<std::size_t>(value);
}

}  // namespace

EdgeListFormat FormatFromPath(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? EdgeListFormat::kCsv
                                    : EdgeListFormat::kTsv;
}

LoadedGraph LoadEdgeList(std::istream& in, const LoadOptions& options) {
  std::optional<std::size_t> declared = options.declared_nodes;
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = Trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      if (!options.declared_nodes) {
        if (auto n = ParseNodesDirective(body, line_no)) declared = n;
      }
      continue;
    }
    const auto fields = Split(body, options.format);
    if (fields.size() != 2) {
      throw ParseError(line_no, "expected two node ids, found " +
                                    std::to_string(fields.size()) +
                                    " fields");
    }
    raw.emplace_back(ParseId(fields[0], line_no), ParseId(fields[1], line_no));
    if (raw.back().first < 0 || raw.back().second < 0) {
      throw ParseError(line_no, "negative node id");
    }
  }

  LoadedGraph out;
  std::vector<Edge> edges;
  edges.reserve(raw.size() * (options.symmetrize ? 2 : 1));
  std::size_t num_nodes = 0;
  if (declared) {
    num_nodes = *declared;
    for (const auto& [a, b] : raw) {
      if (static_cast<std::uint64_t>(a) >= num_nodes ||
          static_cast<std::uint64_t>(b) >= num_nodes) {
        throw Error(ErrorCode::kIndex,
                    "node id " + std::to_string(std::max(a, b)) +
                        " >= declared node count " +
                        std::to_string(num_nodes));
      }
      edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b)});
    }
    out.original_ids.resize(num_nodes);
    for (std::size_t k = 0; k < num_nodes; ++k) {
      out.original_ids[k] = static_cast<std::int64_t>(k);
    }
  } else {
    std::vector<std::int64_t> ids;
    ids.reserve(raw.size() * 2);
    for (const auto& [a, b] : raw) {
      ids.push_back(a);
      ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto dense = [&ids](std::int64_t id) {
      return static_cast<NodeId>(
          std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    for (const auto& [a, b] : raw) edges.push_back({dense(a), dense(b)});
    num_nodes = ids.size();
    out.original_ids = std::move(ids);
  }
  if (options.symmetrize) {
    const std::size_t n = edges.size();
    for (std::size_t k = 0; k < n; ++k) {
      edges.push_back({edges[k].dst, edges[k].src});
    }
  }
  out.graph = Graph::FromEdges(num_nodes, edges);
  return out;
}

LoadedGraph LoadEdgeListFile(const std::filesystem::path& path,
                             const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return LoadEdgeList(in, options);
}

void WriteEdgeList(std::ostream& out, const Graph& g, EdgeListFormat format) {
  const char sep = format == EdgeListFormat::kCsv ? ',' : '\t';
  out << "# nodes: " << g.num_nodes() << '\n';
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.successors(u)) out << u << sep << v << '\n';
  }
}

void WriteEdgeListFile(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  WriteEdgeList(out, g, FormatFromPath(path));
}

void WriteNodeMap(std::ostream& out, const std::vector<std::int64_t>& ids) {
  out << "original_id,node_id\n";
  for (std::size_t k = 0; k < ids.size(); ++k) out << ids[k] << ',' << k << '\n';
}

std::vector<std::int64_t> ReadNodeMap(std::istream& in) {
  std::vector<std::pair<std::int64_t, std::int64_t>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = Trim(line);
    if (body.empty() || body.front() == '#' || line_no == 1) continue;
    const auto fields = Split(body, EdgeListFormat::kCsv);
    if (fields.size() != 2) throw ParseError(line_no, "expected two columns");
    rows.emplace_back(ParseId(fields[1], line_no), ParseId(fields[0], line_no));
  }
  std::sort(rows.begin(), rows.end());
  std::vector<std::int64_t> ids(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].first != static_cast<std::int64_t>(k)) {
      throw ParseError(0, "node map is not a dense 0..N-1 mapping");
    }
    ids[k] = rows[k].second;
  }
  return ids;
}

}  // namespace privdpr
