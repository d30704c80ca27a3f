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

#include "dpr_model/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "common/errors.hpp"

namespace privdpr {
namespace {

constexpr double kLeakySlope = 0.01;

double Activate(Activation a, double z) {
  switch (a) {
    case Activation::kSigmoid:
      return 1.0 / (1.0 + std::exp(-z));
    case Activation::kRelu:
      return z > 0.0 ? z : 0.0;
    case Activation::kLeakyRelu:
      return z > 0.0 ? z : kLeakySlope * z;
  }
  return z;
}

double ActivateDerivative(Activation a, double z) {
  switch (a) {
    case Activation::kSigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-z));
      return s * (1.0 - s);
    }
    case Activation::kRelu:
      return z > 0.0 ? 1.0 : 0.0;
    case Activation::kLeakyRelu:
      return z > 0.0 ? 1.0 : kLeakySlope;
  }
  return 1.0;
}

// Pre-activations of every layer for a stack of input rows.
struct ForwardTrace {
  Matrix input;
  std::vector<Matrix> pre;   // Z_l, l = 1..L+1
  std::vector<Matrix> post;  // phi(Z_l)
};

ForwardTrace RunForward(const Theta& theta, Matrix input) {
  ForwardTrace t;
  t.input = std::move(input);
  const Matrix* h = &t.input;
  t.pre.reserve(theta.weights.size());
  t.post.reserve(theta.weights.size());
  for (const Matrix& w : theta.weights) {
    t.pre.push_back((*h) * w);
    t.post.push_back(t.pre.back().unaryExpr(
        [a = theta.activation](double z) { return Activate(a, z); }));
    h = &t.post.back();
  }
  return t;
}

Matrix GatherRows(const Matrix& embeddings, std::span<const NodeId> nodes) {
  Matrix out(static_cast<Eigen::Index>(nodes.size()), embeddings.cols());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k] >= embeddings.rows()) {
      throw Error(ErrorCode::kIndex,
                  "node " + std::to_string(nodes[k]) + " out of range");
    }
    out.row(static_cast<Eigen::Index>(k)) = embeddings.row(nodes[k]);
  }
  return out;
}

// Back-propagates upstream coefficients c_k = dLoss/df(v_k). Fills weight
// gradients and returns dLoss/d(input rows).
Matrix RunBackward(const Theta& theta, const ForwardTrace& t,
                   const Vector& upstream, std::vector<Matrix>& grad_weights) {
  const std::size_t layers = theta.weights.size();
  grad_weights.resize(layers);
  Matrix delta = upstream;  // k x 1
  for (std::size_t l = layers; l-- > 0;) {
    delta.array() *= t.pre[l]
                         .unaryExpr([a = theta.activation](double z) {
                           return ActivateDerivative(a, z);
                         })
                         .array();
    const Matrix& below = l == 0 ? t.input : t.post[l - 1];
    grad_weights[l] = below.transpose() * delta;
    delta = delta * theta.weights[l].transpose();
  }
  return delta;
}

}  // namespace

Vector ForwardBatch(const Theta& theta, std::span<const NodeId> nodes) {
  const ForwardTrace t = RunForward(theta, GatherRows(theta.embeddings, nodes));
  return t.post.back().col(0);
}

double Forward(const Theta& theta, NodeId node) {
  const NodeId nodes[] = {node};
  return ForwardBatch(theta, nodes)[0];
}

double EdgeLossFromOutputs(double f_src, double f_dst, double out_degree_src,
                           double in_degree_dst, double gamma,
                           double num_nodes) {
  const double gap = f_src / out_degree_src - f_dst / (in_degree_dst * gamma);
  const double teleport = 1.0 - gamma;
  return in_degree_dst * gamma * gamma * gap * gap +
         gap * 2.0 * gamma * teleport / num_nodes +
         teleport * teleport / (in_degree_dst * num_nodes * num_nodes);
}

double EdgeLoss(const Theta& theta, NodeId src, NodeId dst, const Graph& g,
                double gamma) {
  if (!g.has_edge(src, dst)) {
    throw Error(ErrorCode::kContractViolation,
                "(" + std::to_string(src) + ", " + std::to_string(dst) +
                    ") is not an edge");
  }
  const NodeId nodes[] = {src, dst};
  const Vector f = ForwardBatch(theta, nodes);
  return EdgeLossFromOutputs(f[0], f[1],
                             static_cast<double>(g.out_degree(src)),
                             static_cast<double>(g.in_degree(dst)), gamma,
                             static_cast<double>(g.num_nodes()));
}

namespace {

double Objective(const Theta& theta, const Graph& g, double gamma,
                 bool only_with_in_edges) {
  const std::size_t n = g.num_nodes();
  std::vector<NodeId> all(n);
  for (std::size_t k = 0; k < n; ++k) all[k] = static_cast<NodeId>(k);
  const Vector f = ForwardBatch(theta, all);
  const double teleport = (1.0 - gamma) / static_cast<double>(n);
  double total = 0.0;
  for (NodeId j = 0; j < n; ++j) {
    if (only_with_in_edges && g.in_degree(j) == 0) continue;
    double inflow = 0.0;
    for (NodeId i : g.predecessors(j)) {
      inflow += f[i] / static_cast<double>(g.out_degree(i));
    }
    const double residual = gamma * inflow + teleport - f[j];
    total += residual * residual;
  }
  return total;
}

}  // namespace

double FullObjective(const Theta& theta, const Graph& g, double gamma) {
  return Objective(theta, g, gamma, false);
}

double FullObjectiveWithInEdges(const Theta& theta, const Graph& g,
                                double gamma) {
  return Objective(theta, g, gamma, true);
}

Gradients BatchGradients(const Theta& theta, std::span<const Edge> pairs,
                         const Graph& g, double gamma) {
  Gradients out;
  out.grad_embeddings = Matrix::Zero(theta.embeddings.rows(),
                                     theta.embeddings.cols());
  out.grad_weights.reserve(theta.weights.size());
  for (const Matrix& w : theta.weights) {
    out.grad_weights.push_back(Matrix::Zero(w.rows(), w.cols()));
  }
  if (pairs.empty()) return out;

  std::vector<NodeId> nodes;
  nodes.reserve(pairs.size() * 2);
  for (const Edge& e : pairs) {
    nodes.push_back(e.src);
    nodes.push_back(e.dst);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  auto local = [&nodes](NodeId v) {
    return static_cast<Eigen::Index>(
        std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
  };

  const ForwardTrace trace =
      RunForward(theta, GatherRows(theta.embeddings, nodes));
  const auto f = trace.post.back().col(0);
  const double n = static_cast<double>(g.num_nodes());
  const double linear = 2.0 * gamma * (1.0 - gamma) / n;

  Vector upstream = Vector::Zero(static_cast<Eigen::Index>(nodes.size()));
  for (const Edge& e : pairs) {
    if (!g.has_edge(e.src, e.dst)) {
      throw Error(ErrorCode::kContractViolation,
                  "batch pair (" + std::to_string(e.src) + ", " +
                      std::to_string(e.dst) + ") is not an edge");
    }
    const Eigen::Index a = local(e.src);
    const Eigen::Index b = local(e.dst);
    const double dout = static_cast<double>(g.out_degree(e.src));
    const double din = static_cast<double>(g.in_degree(e.dst));
    out.loss += EdgeLossFromOutputs(f[a], f[b], dout, din, gamma, n);
    const double gap = f[a] / dout - f[b] / (din * gamma);
    const double dgap = 2.0 * din * gamma * gamma * gap + linear;
    upstream[a] += dgap / dout;
    upstream[b] -= dgap / (din * gamma);
  }

  const Matrix grad_rows =
      RunBackward(theta, trace, upstream, out.grad_weights);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    out.grad_embeddings.row(nodes[k]) =
        grad_rows.row(static_cast<Eigen::Index>(k));
  }
  return out;
}

Vector InputGradient(const Theta& theta, NodeId node) {
  const NodeId nodes[] = {node};
  const ForwardTrace trace =
      RunForward(theta, GatherRows(theta.embeddings, nodes));
  std::vector<Matrix> unused;
  const Matrix grad = RunBackward(theta, trace, Vector::Ones(1), unused);
  return grad.row(0).transpose();
}

}  // namespace privdpr
