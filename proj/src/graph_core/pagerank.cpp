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

#include "graph_core/pagerank.hpp"

#include <algorithm>
#include <cmath>

#include "common/errors.hpp"

namespace privdpr {

std::vector<double> PageRankExact(const Graph& g, double damping, double tol,
                                  std::size_t max_iter) {
  const std::size_t n = g.num_nodes();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "empty graph");
  if (!(damping > 0.0 && damping < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "damping must lie in (0, 1)");
  }
  const double nd = static_cast<double>(n);
  std::vector<double> rank(n, 1.0 / nd);
  std::vector<double> next(n);
  double residual = 0.0;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    double dangling = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      if (g.out_degree(i) == 0) dangling += rank[i];
    }
    const double base = (1.0 - damping) / nd + damping * dangling / nd;
    for (NodeId j = 0; j < n; ++j) {
      double inflow = 0.0;
      for (NodeId i : g.predecessors(j)) {
        inflow += rank[i] / static_cast<double>(g.out_degree(i));
      }
      next[j] = base + damping * inflow;
    }
    residual = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      residual = std::max(residual, std::abs(next[k] - rank[k]));
    }
    rank.swap(next);
    if (residual < tol) return rank;
  }
  throw NonConvergenceError("PageRank did not converge", residual);
}

}  // namespace privdpr
