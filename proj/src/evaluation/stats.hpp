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

#ifndef PRIVDPR_EVALUATION_STATS_HPP_
#define PRIVDPR_EVALUATION_STATS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graph_core/graph.hpp"

namespace privdpr {

// Structural statistics of the undirected simplification of a graph.
// rede, cpl and diameter are empty when undefined (no edges, or an LCC of a
// single node). CPL and diameter are taken over the largest connected
// component; ties between equally large components go to the one holding the
// smallest node id.
struct GraphStats {
  std::uint64_t triangle_count = 0;
  std::uint64_t wedge_count = 0;
  std::uint64_t claw_count = 0;
  std::optional<double> rede;
  std::optional<double> cpl;
  std::optional<std::uint64_t> diameter;
  std::size_t lcc_size = 0;
  std::vector<std::size_t> degree_sequence;  // sorted ascending
};

enum class Metric { kTc, kWc, kCc, kRede, kCpl, kDiameter, kLcc };

inline constexpr std::array<Metric, 7> kAllMetrics = {
    Metric::kTc,  Metric::kWc,       Metric::kCc, Metric::kRede,
    Metric::kCpl, Metric::kDiameter, Metric::kLcc};

const char* MetricName(Metric m);
std::optional<Metric> ParseMetric(const std::string& name);
std::optional<double> MetricValue(const GraphStats& stats, Metric m);

// Sorted, deduplicated neighbour lists with both edge directions merged and
// self-loops removed.
std::vector<std::vector<NodeId>> UndirectedAdjacency(const Graph& g);

GraphStats ComputeStats(const Graph& g);

// Mean absolute relative error of estimates against a nonzero truth.
double MeanRelativeError(double truth, std::span<const double> estimates);

// max_d |F(d) - F'(d)| over the union of observed values.
double KsStatistic(std::span<const std::size_t> a,
                   std::span<const std::size_t> b);
double DegreeKs(const Graph& a, const Graph& b);

}  // namespace privdpr

#endif  // PRIVDPR_EVALUATION_STATS_HPP_
