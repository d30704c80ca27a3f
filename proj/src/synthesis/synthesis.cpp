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

#include "synthesis/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <utility>

#include "common/errors.hpp"

namespace privdpr {
namespace {

std::size_t HalfCeil(std::size_t n) { return (n + 1) / 2; }

std::size_t MaxUndirectedEdges(std::size_t n) { return n * (n - 1) / 2; }

}  // namespace

ScoreMatrix SymmetrizeScores(const ScoreMatrix& scores) {
  ScoreMatrix out(scores.size());
  for (NodeId i = 0; i < scores.size(); ++i) {
    for (const auto& [j, v] : scores.row(i)) {
      const double m = std::max(v, scores.at(j, i));
      if (out.at(i, j) == 0.0) {
        out.Add(i, j, m);
        out.Add(j, i, m);
      }
    }
  }
  return out;
}

EdgeModel ScoreToEdgeModel(const ScoreMatrix& scores) {
  const ScoreMatrix sym = SymmetrizeScores(scores);
  const double total = sym.Total();
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kDegenerate,
                "score matrix is all zero; no edge model");
  }
  EdgeModel model{ScoreMatrix(sym.size())};
  for (NodeId i = 0; i < sym.size(); ++i) {
    for (const auto& [j, v] : sym.row(i)) model.probabilities.Add(i, j, v / total);
  }
  return model;
}

std::size_t DefaultTargetEdges(const ScoreMatrix& scores) {
  const ScoreMatrix sym = SymmetrizeScores(scores);
  const std::size_t n = sym.size();
  if (sym.NonZeros() == 0) {
    throw Error(ErrorCode::kDegenerate, "score matrix is all zero");
  }
  const std::size_t pairs = MaxUndirectedEdges(n);
  std::vector<double> upper;
  for (NodeId i = 0; i < n; ++i) {
    for (auto it = sym.row(i).upper_bound(i); it != sym.row(i).end(); ++it) {
      upper.push_back(it->second);
    }
  }
  const bool constant =
      upper.size() == pairs &&
      std::all_of(upper.begin(), upper.end(),
                  [&](double v) { return v == upper.front(); });
  std::size_t count = 0;
  if (constant) {
    count = upper.size();
  } else {
    const double mean = std::accumulate(upper.begin(), upper.end(), 0.0) /
                        static_cast<double>(pairs);
    // sigmoid(z) > 0.5 exactly when z = (x - mean) / std > 0.
    count = static_cast<std::size_t>(std::count_if(
        upper.begin(), upper.end(), [mean](double v) { return v > mean; }));
  }
  return std::max(count, HalfCeil(n));
}

std::vector<WeightedPair> SampleWithoutReplacement(
    std::span<const WeightedPair> candidates, std::size_t k, Rng& rng) {
  // Exponential-key formulation of sequential weighted sampling without
  // replacement: key = log(U) / w, the k largest keys in descending order
  // are distributed as k successive proportional draws.
  std::vector<std::pair<double, std::size_t>> keyed;
  keyed.reserve(candidates.size());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const double w = candidates[c].weight;
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidArgument, "weights must be finite, >= 0");
    }
    double u = unit(rng);
    if (w == 0.0) continue;
    while (u == 0.0) u = unit(rng);
    keyed.emplace_back(std::log(u) / w, c);
  }
  if (keyed.size() < k) {
    throw Error(ErrorCode::kDegenerate,
                "only " + std::to_string(keyed.size()) +
                    " candidates with positive weight, need " +
                    std::to_string(k));
  }
  auto by_key = [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  };
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(k),
                    keyed.end(), by_key);
  std::vector<WeightedPair> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(candidates[keyed[i].second]);
  return out;
}

SynthesisResult SampleGraph(const ScoreMatrix& scores,
                            std::optional<std::size_t> target_edges, Rng& rng) {
  const std::size_t n = scores.size();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two nodes");
  }
  const ScoreMatrix sym = SymmetrizeScores(scores);
  if (sym.NonZeros() == 0) {
    throw Error(ErrorCode::kDegenerate, "score matrix is all zero");
  }
  SynthesisResult result;
  result.target_edges = target_edges ? *target_edges : DefaultTargetEdges(scores);
  if (result.target_edges < HalfCeil(n)) {
    throw Error(ErrorCode::kInvalidArgument,
                "target_edges " + std::to_string(result.target_edges) +
                    " < ceil(N/2) = " + std::to_string(HalfCeil(n)) +
                    ": isolated nodes would be unavoidable");
  }
  if (result.target_edges > MaxUndirectedEdges(n)) {
    throw Error(ErrorCode::kInvalidArgument,
                "target_edges exceeds N(N-1)/2");
  }

  std::set<std::pair<NodeId, NodeId>> chosen;
  std::vector<std::size_t> degree(n, 0);
  auto insert = [&](NodeId a, NodeId b) {
    if (chosen.emplace(std::min(a, b), std::max(a, b)).second) {
      ++degree[a];
      ++degree[b];
    }
  };

  std::vector<NodeId> visit(n);
  std::iota(visit.begin(), visit.end(), NodeId{0});
  std::shuffle(visit.begin(), visit.end(), rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (NodeId i : visit) {
    if (degree[i] > 0) continue;
    const ScoreMatrix::Row& row = sym.row(i);
    if (row.empty()) {
      std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 2));
      NodeId j = pick(rng);
      if (j >= i) ++j;
      insert(i, j);
      ++result.fallback_rows;
      continue;
    }
    double total = 0.0;
    for (const auto& [j, v] : row) total += v;
    const double target = unit(rng) * total;
    double running = 0.0;
    NodeId picked = row.rbegin()->first;
    for (const auto& [j, v] : row) {
      running += v;
      if (target < running) {
        picked = j;
        break;
      }
    }
    insert(i, picked);
  }
  result.first_phase_edges = chosen.size();
  if (result.fallback_rows > 0) {
    result.warnings.push_back(std::to_string(result.fallback_rows) +
                              " nodes had no scores; linked uniformly");
  }
  if (chosen.size() > result.target_edges && !target_edges) {
    result.warnings.push_back(
        "default target " + std::to_string(result.target_edges) +
        " raised to the " + std::to_string(chosen.size()) +
        " edges needed to cover every node");
    result.target_edges = chosen.size();
  }
  if (chosen.size() > result.target_edges) {
    throw Error(ErrorCode::kInvalidArgument,
                "target_edges " + std::to_string(result.target_edges) +
                    " is below the " + std::to_string(chosen.size()) +
                    " edges needed to cover every node");
  }

  const std::size_t remaining = result.target_edges - chosen.size();
  if (remaining > 0) {
    std::vector<WeightedPair> candidates;
    for (NodeId i = 0; i < n; ++i) {
      for (auto it = sym.row(i).upper_bound(i); it != sym.row(i).end(); ++it) {
        if (!chosen.contains({i, it->first})) {
          candidates.push_back({i, it->first, it->second});
        }
      }
    }
    for (const WeightedPair& p : SampleWithoutReplacement(candidates, remaining, rng)) {
      insert(p.u, p.v);
    }
  }

  std::vector<Edge> edges;
  edges.reserve(chosen.size());
  for (const auto& [a, b] : chosen) edges.push_back({a, b});
  result.graph = Graph::FromUndirectedEdges(n, edges);
  return result;
}

}  // namespace privdpr
