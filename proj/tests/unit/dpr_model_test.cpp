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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "common/errors.hpp"
#include "common/rng.hpp"
#include "dpr_model/adam.hpp"
#include "dpr_model/network.hpp"
#include "dpr_model/spectral.hpp"
#include "dpr_model/theta.hpp"
#include "oracles/oracles.hpp"

namespace privdpr {
namespace {

Matrix Diag(std::initializer_list<double> values) {
  Matrix m = Matrix::Zero(values.size(), values.size());
  Eigen::Index k = 0;
  for (double v : values) {
    m(k, k) = v;
    ++k;
  }
  return m;
}

Matrix RandomMatrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> dist;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
  return m;
}

double FullSpectralNorm(const Matrix& w) {
  Rng rng(1);
  return SpectralNorm(w, 10000, 1e-14, rng);
}

// Sum of per-edge losses computed entirely by the oracles.
double OracleBatchLoss(const Theta& theta, const std::vector<Edge>& pairs,
                       const Graph& g, double gamma) {
  double total = 0.0;
  for (const Edge& e : pairs) {
    total += oracle::EdgeLossSquareForm(
        oracle::ScalarChainForward(theta, e.src),
        oracle::ScalarChainForward(theta, e.dst),
        static_cast<double>(g.out_degree(e.src)),
        static_cast<double>(g.in_degree(e.dst)), gamma,
        static_cast<double>(g.num_nodes()));
  }
  return total;
}

TEST(ThetaTest, ShapesFollowLayerCount) {
  Rng rng(7);
  const Theta t = InitParams(4, 2, 3, 2, 0.1, rng);
  EXPECT_EQ(t.embeddings.rows(), 4);
  EXPECT_EQ(t.embeddings.cols(), 2);
  ASSERT_EQ(t.weights.size(), 3u);
  EXPECT_EQ(t.weights[0].rows(), 2);
  EXPECT_EQ(t.weights[0].cols(), 3);
  EXPECT_EQ(t.weights[1].rows(), 3);
  EXPECT_EQ(t.weights[1].cols(), 3);
  EXPECT_EQ(t.weights[2].rows(), 3);
  EXPECT_EQ(t.weights[2].cols(), 1);
  EXPECT_EQ(t.hidden_layers(), 2u);
}

TEST(ThetaTest, SameSeedSameParameters) {
  Rng a(7), b(7);
  EXPECT_TRUE(InitParams(4, 2, 3, 2, 0.1, a) == InitParams(4, 2, 3, 2, 0.1, b));
}

TEST(ThetaTest, ZeroScaleGivesZeros) {
  Rng rng(7);
  const Theta t = InitParams(4, 2, 3, 2, 0.0, rng);
  EXPECT_EQ(t.embeddings.squaredNorm(), 0.0);
  for (const Matrix& w : t.weights) EXPECT_EQ(w.squaredNorm(), 0.0);
}

TEST(ThetaTest, SerializationRoundTrips) {
  Rng rng(8);
  const Theta t = InitParams(6, 3, 4, 3, 0.5, rng, Activation::kLeakyRelu);
  std::stringstream io;
  WriteTheta(io, t);
  EXPECT_TRUE(ReadTheta(io) == t);
}

TEST(SpectralTest, ClosedForms) {
  EXPECT_NEAR(FullSpectralNorm(Diag({3, 1})), 3.0, 1e-12);
  EXPECT_NEAR(FullSpectralNorm(Matrix::Identity(5, 5)), 1.0, 1e-12);
}

TEST(SpectralTest, MatchesJacobiSvd) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix w = RandomMatrix(8, 8, rng);
    EXPECT_NEAR(FullSpectralNorm(w), oracle::JacobiLargestSingularValue(w), 1e-6);
    const Matrix tall = RandomMatrix(12, 5, rng);
    EXPECT_NEAR(FullSpectralNorm(tall), oracle::JacobiLargestSingularValue(tall),
                1e-6);
  }
}

TEST(SpectralTest, NormalizeClosedForms) {
  const Matrix d = WeightNormalize(Diag({3, 1}), 5.0);
  EXPECT_NEAR(d(0, 0), 0.2, 1e-12);
  EXPECT_NEAR(d(1, 1), 1.0 / 15.0, 1e-12);
  EXPECT_TRUE(WeightNormalize(Matrix::Identity(3, 3), 2.0)
                  .isApprox(0.5 * Matrix::Identity(3, 3), 1e-12));
}

TEST(SpectralTest, NormalizedNormIsOneOverS) {
  Rng rng(4);
  for (double s : {2.0, 5.0, 8.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix w = RandomMatrix(1 + trial, 7, rng);
      EXPECT_NEAR(oracle::JacobiLargestSingularValue(WeightNormalize(w, s)),
                  1.0 / s, 1e-6);
    }
  }
}

TEST(SpectralTest, RejectsBadInputs) {
  EXPECT_THROW(WeightNormalize(Diag({1, 1}), 1.0), Error);
  EXPECT_THROW(WeightNormalize(Matrix::Zero(2, 2), 5.0), Error);
}

TEST(NetworkTest, ZeroThetaGivesHalf) {
  Rng rng(0);
  const Theta t = InitParams(3, 4, 5, 2, 0.0, rng);
  EXPECT_EQ(Forward(t, 1), 0.5);
}

TEST(NetworkTest, SigmoidOutputInUnitInterval) {
  Rng rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const Theta t = InitParams(3, 3, 4, 1 + trial % 3, 3.0, rng);
    const double f = Forward(t, trial % 3);
    EXPECT_GT(f, 0.0);
    EXPECT_LT(f, 1.0);
  }
}

TEST(NetworkTest, TinyThetaMatchesHandChain) {
  Theta t;
  t.embeddings = Matrix{{0.3}, {-0.7}};
  t.weights = {Matrix{{1.5}}, Matrix{{-2.0}}};
  for (NodeId v : {0u, 1u}) {
    const double h = 1.0 / (1.0 + std::exp(-(t.embeddings(v, 0) * 1.5)));
    const double expected = 1.0 / (1.0 + std::exp(2.0 * h));
    EXPECT_NEAR(Forward(t, v), expected, 1e-12);
  }
}

TEST(NetworkTest, ForwardMatchesScalarOracleForEveryActivation) {
  Rng rng(13);
  for (Activation a :
       {Activation::kSigmoid, Activation::kRelu, Activation::kLeakyRelu}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Theta t = InitParams(5, 4, 3, 1 + trial % 4, 1.0, rng, a);
      std::vector<NodeId> nodes{0, 2, 4, 2};
      const Vector batch = ForwardBatch(t, nodes);
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        const double expected = oracle::ScalarChainForward(t, nodes[k]);
        EXPECT_NEAR(Forward(t, nodes[k]), expected, 1e-12);
        EXPECT_NEAR(batch(k), expected, 1e-12);
      }
    }
  }
}

TEST(EdgeLossTest, BalancedRatioLeavesTeleportTerm) {
  const double gamma = 0.85;
  const double loss = EdgeLossFromOutputs(0.5 / gamma, 0.5, 1.0, 1.0, gamma, 2.0);
  EXPECT_NEAR(loss, 0.0225 / 4.0, 1e-15);
  // d_in = 3, N = 7: (1 - gamma)^2 / (d_in N^2).
  const double f_i = 0.4, d_out = 2.0, d_in = 3.0;
  const double f_j = f_i / d_out * d_in * gamma;
  EXPECT_NEAR(EdgeLossFromOutputs(f_i, f_j, d_out, d_in, gamma, 7.0),
              (1 - gamma) * (1 - gamma) / (d_in * 49.0), 1e-15);
}

TEST(EdgeLossTest, MatchesSquareFormOnRandomInstances) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double f_i = u(rng), f_j = u(rng), gamma = u(rng);
    const double d_out = 1 + trial % 5, d_in = 1 + trial % 7, n = 10 + trial;
    const double expected =
        oracle::EdgeLossSquareForm(f_i, f_j, d_out, d_in, gamma, n);
    EXPECT_NEAR(EdgeLossFromOutputs(f_i, f_j, d_out, d_in, gamma, n), expected,
                1e-12 * std::max(1.0, expected));
  }
}

TEST(EdgeLossTest, NonEdgeIsAContractViolation) {
  Rng rng(1);
  const Theta t = InitParams(3, 2, 2, 1, 0.1, rng);
  const Graph g = Graph::FromEdges(3, std::vector<Edge>{{0, 1}});
  try {
    EdgeLoss(t, 1, 0, g, 0.85);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kContractViolation);
  }
}

TEST(ObjectiveTest, EdgelessZeroTheta) {
  Rng rng(0);
  const Theta t = InitParams(2, 3, 3, 1, 0.0, rng);
  const Graph g = Graph::FromEdges(2, std::vector<Edge>{});
  EXPECT_NEAR(FullObjective(t, g, 0.85), 0.36125, 1e-15);
  EXPECT_EQ(FullObjectiveWithInEdges(t, g, 0.85), 0.0);
}

TEST(ObjectiveTest, SingleEdgeMatchesExpansion) {
  Rng rng(3);
  const double gamma = 0.85;
  const Graph g = Graph::FromEdges(2, std::vector<Edge>{{0, 1}});
  for (int trial = 0; trial < 20; ++trial) {
    const Theta t = InitParams(2, 3, 4, 2, 2.0, rng);
    const double f0 = oracle::ScalarChainForward(t, 0);
    const double f1 = oracle::ScalarChainForward(t, 1);
    const double tele = (1 - gamma) / 2;
    const double node0 = (f0 - tele) * (f0 - tele);
    const double node1 = (f1 - gamma * f0 - tele) * (f1 - gamma * f0 - tele);
    EXPECT_NEAR(FullObjective(t, g, gamma), node0 + node1, 1e-14);
    EXPECT_NEAR(FullObjectiveWithInEdges(t, g, gamma), node1, 1e-14);
    // One in-edge per node: the per-edge bound is tight.
    EXPECT_NEAR(EdgeLoss(t, 0, 1, g, gamma), node1, 1e-14);
  }
}

TEST(GradientTest, MatchesCentralDifferences) {
  std::mt19937_64 graph_rng(41);
  Rng rng(42);
  const double gamma = 0.85, h = 1e-6;
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 3 + trial % 4;
    const Graph g = oracle::RandomGraph(n, 0.6, graph_rng, true);
    std::vector<Edge> pairs = g.edges();
    if (pairs.empty()) continue;
    const Activation act =
        trial % 3 == 0 ? Activation::kLeakyRelu : Activation::kSigmoid;
    Theta t = InitParams(n, 2, 3, 1 + trial % 3, 1.0, rng, act);
    const Gradients grads = BatchGradients(t, pairs, g, gamma);
    EXPECT_NEAR(grads.loss, OracleBatchLoss(t, pairs, g, gamma), 1e-12);

    auto check = [&](Matrix& param, const Matrix& analytic) {
      for (Eigen::Index k = 0; k < param.size(); ++k) {
        const double saved = param.data()[k];
        param.data()[k] = saved + h;
        const double up = OracleBatchLoss(t, pairs, g, gamma);
        param.data()[k] = saved - h;
        const double down = OracleBatchLoss(t, pairs, g, gamma);
        param.data()[k] = saved;
        const double numeric = (up - down) / (2 * h);
        const double a = analytic.data()[k];
        EXPECT_LT(std::abs(a - numeric) / std::max(1e-3, std::abs(numeric)), 1e-5)
            << "analytic " << a << " numeric " << numeric;
      }
    };
    check(t.embeddings, grads.grad_embeddings);
    for (std::size_t l = 0; l < t.weights.size(); ++l) {
      check(t.weights[l], grads.grad_weights[l]);
    }
  }
}

TEST(GradientTest, RepeatedEdgeScalesLinearly) {
  Rng rng(5);
  const Graph g = Graph::FromEdges(3, std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}});
  const Theta t = InitParams(3, 3, 3, 2, 0.7, rng);
  const std::vector<Edge> once{{1, 2}};
  const std::vector<Edge> four(4, Edge{1, 2});
  const Gradients a = BatchGradients(t, once, g, 0.85);
  const Gradients b = BatchGradients(t, four, g, 0.85);
  EXPECT_TRUE(b.grad_embeddings.isApprox(4.0 * a.grad_embeddings, 1e-14));
  for (std::size_t l = 0; l < a.grad_weights.size(); ++l) {
    EXPECT_TRUE(b.grad_weights[l].isApprox(4.0 * a.grad_weights[l], 1e-14));
  }
  EXPECT_NEAR(b.loss, 4.0 * a.loss, 1e-15);
}

TEST(GradientTest, InputGradientMatchesCentralDifferences) {
  Rng rng(9);
  Theta t = InitParams(2, 4, 3, 2, 1.0, rng);
  const Vector grad = InputGradient(t, 1);
  for (Eigen::Index k = 0; k < 4; ++k) {
    const double saved = t.embeddings(1, k);
    t.embeddings(1, k) = saved + 1e-6;
    const double up = oracle::ScalarChainForward(t, 1);
    t.embeddings(1, k) = saved - 1e-6;
    const double down = oracle::ScalarChainForward(t, 1);
    t.embeddings(1, k) = saved;
    EXPECT_NEAR(grad(k), (up - down) / 2e-6, 1e-8);
  }
}

TEST(AdamTest, ZeroGradientLeavesParameters) {
  Matrix p{{1.0, -2.0}};
  const Matrix before = p;
  AdamState adam;
  Matrix* params[] = {&p};
  const Matrix grads[] = {Matrix::Zero(1, 2)};
  adam.Step(params, grads, 0.1);
  EXPECT_TRUE(SameMatrix(p, before));
}

TEST(AdamTest, FirstStepMovesByLearningRate) {
  Matrix p{{1.0, -2.0, 0.5}};
  const Matrix before = p;
  AdamState adam;
  Matrix* params[] = {&p};
  const Matrix grads[] = {Matrix{{3.0, -0.01, 250.0}}};
  adam.Step(params, grads, 1e-3);
  for (Eigen::Index k = 0; k < 3; ++k) {
    const double g = grads[0](0, k);
    const double expected = -1e-3 * g / (std::abs(g) + 1e-8);
    EXPECT_NEAR(p(0, k) - before(0, k), expected, 1e-15);
  }
}

TEST(AdamTest, DeterministicAndSerializable) {
  auto run = [] {
    Rng rng(77);
    Matrix p = RandomMatrix(3, 3, rng);
    AdamState adam;
    for (int step = 0; step < 10; ++step) {
      Matrix* params[] = {&p};
      const Matrix grads[] = {RandomMatrix(3, 3, rng)};
      adam.Step(params, grads, 0.01);
    }
    return std::make_pair(p, adam);
  };
  const auto [p1, a1] = run();
  const auto [p2, a2] = run();
  EXPECT_TRUE(SameMatrix(p1, p2));
  EXPECT_TRUE(a1 == a2);
  std::stringstream io;
  a1.Write(io);
  EXPECT_TRUE(AdamState::Read(io) == a1);
}

TEST(AdamTest, ShapeMismatchThrows) {
  Matrix p(2, 2);
  p.setZero();
  AdamState adam;
  Matrix* params[] = {&p};
  const Matrix grads[] = {Matrix::Zero(2, 3)};
  EXPECT_THROW(adam.Step(params, grads, 0.1), Error);
}

}  // namespace
}  // namespace privdpr
