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

#include "evaluation/stats.hpp"

#include <algorithm>
#include <cmath>

#include "common/errors.hpp"

namespace privdpr {

const char* MetricName(Metric m) {
  switch (m) {
    case Metric::kTc:
      return "TC";
    case Metric::kWc:
      return "WC";
    case Metric::kCc:
      return "CC";
    case Metric::kRede:
      return "REDE";
    case Metric::kCpl:
      return "CPL";
    case Metric::kDiameter:
      return "Diameter";
    case Metric::kLcc:
      return "LCC";
  }
  return "?";
}

std::optional<Metric> ParseMetric(const std::string& name) {
  for (Metric m : kAllMetrics) {
    if (name == MetricName(m)) return m;
  }
  return std::nullopt;
}

std::optional<double> MetricValue(const GraphStats& stats, Metric m) {
  switch (m) {
    case Metric::kTc:
      return static_cast<double>(stats.triangle_count);
    case Metric::kWc:
      return static_cast<double>(stats.wedge_count);
    case Metric::kCc:
      return static_cast<double>(stats.claw_count);
    case Metric::kRede:
      return stats.rede;
    case Metric::kCpl:
      return stats.cpl;
    case Metric::kDiameter:
      if (!stats.diameter) return std::nullopt;
      return static_cast<double>(*stats.diameter);
    case Metric::kLcc:
      return static_cast<double>(stats.lcc_size);
  }
  return std::nullopt;
}

std::vector<std::vector<NodeId>> UndirectedAdjacency(const Graph& g) {
  std::vector<std::vector<NodeId>> adj(g.num_nodes());
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    auto& a = adj[u];
    const auto succ = g.successors(u);
    const auto pred = g.predecessors(u);
    a.reserve(succ.size() + pred.size());
    std::merge(succ.begin(), succ.end(), pred.begin(), pred.end(),
               std::back_inserter(a));
    a.erase(std::unique(a.begin(), a.end()), a.end());
    a.erase(std::remove(a.begin(), a.end(), u), a.end());
  }
  return adj;
}

GraphStats ComputeStats(const Graph& g) {
  const std::size_t n = g.num_nodes();
  const auto adj = UndirectedAdjacency(g);
  GraphStats stats;

  std::uint64_t degree_sum = 0;
  stats.degree_sequence.reserve(n);
  for (NodeId u = 0; u < n; ++u) {
    const std::uint64_t d = adj[u].size();
    degree_sum += d;
    stats.degree_sequence.push_back(adj[u].size());
    if (d >= 2) stats.wedge_count += d * (d - 1) / 2;
    if (d >= 3) stats.claw_count += d * (d - 1) * (d - 2) / 6;
  }
  std::sort(stats.degree_sequence.begin(), stats.degree_sequence.end());

  // Each triangle u < v < w is found once, from its smallest vertex.
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : adj[u]) {
      if (v <= u) continue;
      auto a = std::upper_bound(adj[u].begin(), adj[u].end(), v);
      auto b = std::upper_bound(adj[v].begin(), adj[v].end(), v);
      while (a != adj[u].end() && b != adj[v].end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++stats.triangle_count;
          ++a;
          ++b;
        }
      }
    }
  }

  if (degree_sum > 0 && n > 1) {
    double entropy = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      if (adj[u].empty()) continue;
      const double p = static_cast<double>(adj[u].size()) /
                       static_cast<double>(degree_sum);
      entropy -= p * std::log(p);
    }
    stats.rede = entropy / std::log(static_cast<double>(n));
  }

  std::vector<std::size_t> component(n, n);
  std::size_t best = n, best_size = 0;
  std::vector<NodeId> queue;
  for (NodeId s = 0; s < n; ++s) {
    if (component[s] != n) continue;
    queue.assign(1, s);
    component[s] = s;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (NodeId v : adj[queue[head]]) {
        if (component[v] == n) {
          component[v] = s;
          queue.push_back(v);
        }
      }
    }
    if (queue.size() > best_size) {
      best_size = queue.size();
      best = s;
    }
  }
  stats.lcc_size = best_size;

  if (best_size >= 2) {
    std::vector<std::uint64_t> dist(n);
    std::uint64_t total = 0, diameter = 0;
    for (NodeId s = 0; s < n; ++s) {
      if (component[s] != best) continue;
      std::fill(dist.begin(), dist.end(), ~std::uint64_t{0});
      dist[s] = 0;
      queue.assign(1, s);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        for (NodeId v : adj[u]) {
          if (dist[v] == ~std::uint64_t{0}) {
            dist[v] = dist[u] + 1;
            total += dist[v];
            diameter = std::max(diameter, dist[v]);
            queue.push_back(v);
          }
        }
      }
    }
    const double pairs = static_cast<double>(best_size) *
                         static_cast<double>(best_size - 1);
    stats.cpl = static_cast<double>(total) / pairs;
    stats.diameter = diameter;
  }
  return stats;
}

double MeanRelativeError(double truth, std::span<const double> estimates) {
  if (truth == 0.0) {
    throw Error(ErrorCode::kUndefinedMetric,
                "relative error is undefined for a zero true value");
  }
  if (estimates.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no estimates");
  }
  double sum = 0.0;
  for (double e : estimates) sum += std::abs((e - truth) / truth);
  return sum / static_cast<double>(estimates.size());
}

double KsStatistic(std::span<const std::size_t> a,
                   std::span<const std::size_t> b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty degree sequence");
  }
  std::vector<std::size_t> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double gap = 0.0;
  while (i < x.size() || j < y.size()) {
    std::size_t d;
    if (j >= y.size() || (i < x.size() && x[i] <= y[j])) {
      d = x[i];
    } else {
      d = y[j];
    }
    while (i < x.size() && x[i] == d) ++i;
    while (j < y.size() && y[j] == d) ++j;
    gap = std::max(gap, std::abs(static_cast<double>(i) / nx -
                                 static_cast<double>(j) / ny));
  }
  return gap;
}

double DegreeKs(const Graph& a, const Graph& b) {
  auto degrees = [](const Graph& g) {
    std::vector<std::size_t> d;
    for (const auto& nbrs : UndirectedAdjacency(g)) d.push_back(nbrs.size());
    return d;
  };
  return KsStatistic(degrees(a), degrees(b));
}

}  // namespace privdpr
