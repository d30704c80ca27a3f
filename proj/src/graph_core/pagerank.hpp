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

#ifndef PRIVDPR_GRAPH_CORE_PAGERANK_HPP_
#define PRIVDPR_GRAPH_CORE_PAGERANK_HPP_

#include <cstddef>
#include <vector>

#include "graph_core/graph.hpp"

namespace privdpr {

// Power iteration for PR_j = damping * sum_{i in P_j} PR_i / d_i^out
// + (1 - damping) / N. Rank held by nodes without successors is spread
// uniformly over all nodes every iteration. Stops when the infinity norm
// between successive iterates drops below tol; throws NonConvergenceError
// otherwise.
std::vector<double> PageRankExact(const Graph& g, double damping = 0.85,
                                  double tol = 1e-12,
                                  std::size_t max_iter = 10000);

}  // namespace privdpr

#endif  // PRIVDPR_GRAPH_CORE_PAGERANK_HPP_
