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

#ifndef PRIVDPR_DPR_MODEL_THETA_HPP_
#define PRIVDPR_DPR_MODEL_THETA_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "common/rng.hpp"

namespace privdpr {

using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Shape and bitwise value equality.
inline bool SameMatrix(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

enum class Activation { kSigmoid, kRelu, kLeakyRelu };

const char* ActivationName(Activation a);
Activation ParseActivation(const std::string& name);

// Parameters of the deep PageRank network f(v) = phi(... phi(v W_1) ... W_{L+1}).
// embeddings is N x r; weights are r x d, (d x d) * (L - 1), d x 1.
struct Theta {
  Matrix embeddings;
  std::vector<Matrix> weights;
  Activation activation = Activation::kSigmoid;

  std::size_t num_nodes() const {
    return static_cast<std::size_t>(embeddings.rows());
  }
  std::size_t embedding_dim() const {
    return static_cast<std::size_t>(embeddings.cols());
  }
  std::size_t hidden_dim() const {
    return static_cast<std::size_t>(weights.front().cols());
  }
  std::size_t hidden_layers() const { return weights.size() - 1; }

  friend bool operator==(const Theta& a, const Theta& b);
};

// Entries i.i.d. uniform in [-scale, scale], V first then W_1..W_{L+1},
// each in row-major order.
Theta InitParams(std::size_t num_nodes, std::size_t embedding_dim,
                 std::size_t hidden_dim, std::size_t hidden_layers,
                 double scale, Rng& rng,
                 Activation activation = Activation::kSigmoid);

void WriteTheta(std::ostream& out, const Theta& theta);
Theta ReadTheta(std::istream& in);

}  // namespace privdpr

#endif  // PRIVDPR_DPR_MODEL_THETA_HPP_
