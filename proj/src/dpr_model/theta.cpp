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

#include "dpr_model/theta.hpp"

#include <random>

#include "common/binary_io.hpp"
#include "common/errors.hpp"

namespace privdpr {
namespace {

constexpr std::uint32_t kThetaMagic = 0x54525044;  // "DPRT"
constexpr std::uint32_t kThetaVersion = 1;

void FillUniform(Matrix& m, double scale, Rng& rng) {
  if (scale == 0.0) {
    m.setZero();
    return;
  }
  std::uniform_real_distribution<double> dist(-scale, scale);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = dist(rng);
  }
}

}  // namespace

const char* ActivationName(Activation a) {
  switch (a) {
    case Activation::kSigmoid:
      return "sigmoid";
    case Activation::kRelu:
      return "relu";
    case Activation::kLeakyRelu:
      return "leaky_relu";
  }
  return "sigmoid";
}

Activation ParseActivation(const std::string& name) {
  if (name == "sigmoid") return Activation::kSigmoid;
  if (name == "relu") return Activation::kRelu;
  if (name == "leaky_relu") return Activation::kLeakyRelu;
  throw Error(ErrorCode::kInvalidArgument, "unknown activation '" + name + "'");
}

bool operator==(const Theta& a, const Theta& b) {
  if (a.activation != b.activation || a.weights.size() != b.weights.size()) {
    return false;
  }
  if (!SameMatrix(a.embeddings, b.embeddings)) return false;
  for (std::size_t l = 0; l < a.weights.size(); ++l) {
    if (!SameMatrix(a.weights[l], b.weights[l])) return false;
  }
  return true;
}

Theta InitParams(std::size_t num_nodes, std::size_t embedding_dim,
                 std::size_t hidden_dim, std::size_t hidden_layers,
                 double scale, Rng& rng, Activation activation) {
  if (num_nodes == 0 || embedding_dim == 0 || hidden_dim == 0 ||
      hidden_layers == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "N, r, d and L must all be at least 1");
  }
  if (!(scale >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "init scale must be >= 0");
  }
  const auto n = static_cast<Eigen::Index>(num_nodes);
  const auto r = static_cast<Eigen::Index>(embedding_dim);
  const auto d = static_cast<Eigen::Index>(hidden_dim);
  Theta theta;
  theta.activation = activation;
  theta.embeddings.resize(n, r);
  FillUniform(theta.embeddings, scale, rng);
  theta.weights.emplace_back(r, d);
  for (std::size_t l = 1; l < hidden_layers; ++l) theta.weights.emplace_back(d, d);
  theta.weights.emplace_back(d, 1);
  for (Matrix& w : theta.weights) FillUniform(w, scale, rng);
  return theta;
}

void WriteTheta(std::ostream& out, const Theta& theta) {
  BinaryWriter w(out);
  w.Put(kThetaMagic);
  w.Put(kThetaVersion);
  w.PutString(ActivationName(theta.activation));
  w.PutMatrix(theta.embeddings);
  w.Put<std::uint64_t>(theta.weights.size());
  for (const Matrix& m : theta.weights) w.PutMatrix(m);
  w.Check();
}

Theta ReadTheta(std::istream& in) {
  BinaryReader r(in);
  if (r.Get<std::uint32_t>() != kThetaMagic) {
    throw Error(ErrorCode::kParse, "not a parameter block");
  }
  if (const auto v = r.Get<std::uint32_t>(); v != kThetaVersion) {
    throw Error(ErrorCode::kParse,
                "unsupported parameter block version " + std::to_string(v));
  }
  Theta theta;
  theta.activation = ParseActivation(r.GetString());
  theta.embeddings = r.GetMatrix<Matrix>();
  const auto count = r.Get<std::uint64_t>();
  if (count < 2 || count > 4096) throw Error(ErrorCode::kParse, "bad layer count");
  for (std::uint64_t l = 0; l < count; ++l) {
    theta.weights.push_back(r.GetMatrix<Matrix>());
  }
  return theta;
}

}  // namespace privdpr
