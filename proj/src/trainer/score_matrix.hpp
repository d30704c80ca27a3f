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

#ifndef PRIVDPR_TRAINER_SCORE_MATRIX_HPP_
#define PRIVDPR_TRAINER_SCORE_MATRIX_HPP_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "common/rng.hpp"
#include "dpr_model/theta.hpp"
#include "graph_core/graph.hpp"

namespace privdpr {

// Sparse N x N accumulator of nonnegative transition scores. The diagonal is
// always zero; adding to it is rejected.
class ScoreMatrix {
 public:
  using Row = std::map<NodeId, double>;

  ScoreMatrix() = default;
  explicit ScoreMatrix(std::size_t num_nodes) : rows_(num_nodes) {}

  // Dense input must be square, nonnegative, with a zero diagonal.
  static ScoreMatrix FromDense(const Matrix& dense);

  std::size_t size() const { return rows_.size(); }
  void Add(NodeId from, NodeId to, double amount = 1.0);
  double at(NodeId from, NodeId to) const;
  const Row& row(NodeId node) const { return rows_.at(node); }
  double Total() const;
  std::size_t NonZeros() const;
  Matrix ToDense() const;

  void Write(std::ostream& out) const;
  static ScoreMatrix Read(std::istream& in);

  friend bool operator==(const ScoreMatrix&, const ScoreMatrix&) = default;

 private:
  std::vector<Row> rows_;
};

// For every start node, walks walk_length nodes where each step from u picks
// w != u with probability softmax(<v_u, v_w> / temperature), and increments
// S[u][w] for each step. Rows of V V^T are formed on demand.
void AccumulateScores(const Matrix& embeddings, std::span<const NodeId> starts,
                      std::size_t walk_length, double temperature,
                      ScoreMatrix& scores, Rng& rng);

}  // namespace privdpr

#endif  // PRIVDPR_TRAINER_SCORE_MATRIX_HPP_
