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
#include <filesystem>
#include <random>
#include <sstream>

#include "common/errors.hpp"
#include "common/rng.hpp"
#include "oracles/oracles.hpp"
#include "trainer/score_matrix.hpp"
#include "trainer/trainer.hpp"

namespace privdpr {
namespace {

namespace fs = std::filesystem;

TrainConfig SmallConfig() {
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.batch_nodes = 4;
  cfg.walks_per_node = 2;
  cfg.walk_length = 6;
  cfg.embedding_dim = 8;
  cfg.hidden_dim = 6;
  cfg.learning_rate = 0.01;
  cfg.master_seed = 1234;
  return cfg;
}

Graph SmallGraph(std::uint64_t seed = 8) {
  std::mt19937_64 rng(seed);
  return oracle::RandomGraph(20, 0.2, rng, /*directed=*/false);
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("privdpr_trainer_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

double ChiSquareCritical1Percent(int dof) {
  // Upper 1% points of the chi-square distribution.
  static const double table[] = {6.635, 9.210, 11.345, 13.277, 15.086,
                                 16.812, 18.475, 20.090, 21.666, 23.209};
  return table[dof - 1];
}

TEST(TrainConfigTest, ValidationListsEveryProblem) {
  TrainConfig cfg;
  cfg.gamma = 1.5;
  cfg.s = 0.5;
  cfg.walk_length = 1;
  try {
    cfg.Validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_GE(e.problems().size(), 3u);
  }
}

TEST(TrainConfigTest, IterationCountsUseFloor) {
  TrainConfig cfg;
  EXPECT_EQ(cfg.IterationsPerEpoch(2708), 169u);
  EXPECT_EQ(cfg.TotalIterations(2708), 845u);
  EXPECT_EQ(cfg.NominalBatchPairs(), 480u);
}

TEST(TrainTest, FixedSeedIsDeterministic) {
  const Graph g = SmallGraph();
  const TrainConfig cfg = SmallConfig();
  const TrainResult a = Train(g, cfg);
  const TrainResult b = Train(g, cfg);
  EXPECT_TRUE(a.theta == b.theta);
  EXPECT_TRUE(a.scores == b.scores);
  EXPECT_TRUE(a.ledger == b.ledger);
  EXPECT_EQ(a.batch_losses, b.batch_losses);

  TrainConfig other = cfg;
  other.master_seed = 99;
  EXPECT_FALSE(Train(g, other).theta == a.theta);
}

TEST(TrainTest, LedgerAndScoreTotals) {
  const Graph g = SmallGraph();
  const TrainConfig cfg = SmallConfig();
  const TrainResult r = Train(g, cfg);
  const std::size_t t = cfg.TotalIterations(g.num_nodes());
  EXPECT_EQ(t, 15u);
  EXPECT_EQ(r.ledger.entries().size(), t);
  EXPECT_LE(std::abs(r.ledger.spent_epsilon() - cfg.epsilon), 1e-12 * cfg.epsilon);
  EXPECT_EQ(r.scores.Total(), static_cast<double>(t * cfg.batch_nodes *
                                                  (cfg.walk_length - 1)));
  for (NodeId v = 0; v < g.num_nodes(); ++v) EXPECT_EQ(r.scores.at(v, v), 0.0);
  EXPECT_EQ(r.theta.hidden_layers(), r.privacy.min_layers);
}

class AuditObserver : public TrainObserver {
 public:
  AuditObserver(double s, double per_edge_bound, double noise_std,
                double batch_pairs)
      : s_(s), per_edge_bound_(per_edge_bound), noise_std_(noise_std),
        batch_pairs_(batch_pairs) {}

  void OnWeightsNormalized(std::size_t iteration, const Theta& theta) override {
    EXPECT_EQ(iteration, next_);
    events_ += "w";
    for (const Matrix& w : theta.weights) {
      EXPECT_NEAR(oracle::JacobiLargestSingularValue(w), 1.0 / s_, 1e-6);
    }
  }
  void OnGradients(std::size_t, const Gradients& grads) override {
    events_ += "g";
    // The summed gradient is bounded by the nominal batch times the
    // per-edge bound.
    EXPECT_LE(grads.grad_embeddings.norm(), batch_pairs_ * per_edge_bound_);
  }
  void OnEmbeddingUpdate(std::size_t, const Matrix& raw_sum,
                         const Matrix& applied) override {
    events_ += "e";
    const Matrix noise = applied * batch_pairs_ - raw_sum;
    for (Eigen::Index k = 0; k < noise.size(); ++k) {
      const double z = noise.data()[k] / noise_std_;
      sum_ += z;
      sum_sq_ += z * z;
      ++count_;
    }
  }
  void OnIterationEnd(std::size_t iteration, const TrainState& state) override {
    events_ += "|";
    EXPECT_EQ(state.ledger.entries().size(), iteration + 1);
    ++next_;
  }

  const std::string& events() const { return events_; }
  double NoiseMean() const { return sum_ / count_; }
  double NoiseStd() const { return std::sqrt(sum_sq_ / count_ - NoiseMean() * NoiseMean()); }
  double count() const { return count_; }

 private:
  double s_, per_edge_bound_, noise_std_, batch_pairs_;
  std::size_t next_ = 0;
  std::string events_;
  double sum_ = 0, sum_sq_ = 0, count_ = 0;
};

TEST(TrainTest, ObserverSeesNormalizedWeightsBoundedGradientsAndCalibratedNoise) {
  const Graph g = SmallGraph();
  TrainConfig cfg = SmallConfig();
  cfg.epochs = 10;
  const PrivacySpec spec = DerivePrivacy(g, cfg);
  const double per_edge =
      spec.m * std::pow(1.0 / cfg.s, static_cast<double>(spec.min_layers + 1));
  AuditObserver audit(cfg.s, per_edge, cfg.s_nabla * spec.sigma,
                      static_cast<double>(spec.batch_pairs));
  Train(g, cfg, &audit);
  std::string expected;
  for (std::size_t k = 0; k < cfg.TotalIterations(20); ++k) expected += "wge|";
  EXPECT_EQ(audit.events(), expected);
  // 50 iterations x 160 entries.
  EXPECT_EQ(audit.count(), 8000);
  EXPECT_NEAR(audit.NoiseMean(), 0.0, 4.0 / std::sqrt(8000.0));
  EXPECT_NEAR(audit.NoiseStd(), 1.0, 0.05);
}

TEST(TrainTest, ResumeFromCheckpointMatchesUninterruptedRun) {
  const Graph g = SmallGraph();
  TrainConfig cfg = SmallConfig();
  const fs::path dir = TempDir("resume");
  cfg.checkpoint_dir = dir;
  const TrainResult full = Train(g, cfg);
  ASSERT_TRUE(fs::exists(dir / "checkpoint_epoch_1.bin"));
  ASSERT_TRUE(fs::exists(dir / "checkpoint_epoch_3.bin"));

  TrainState state = LoadResumeState(dir / "checkpoint_epoch_1.bin", cfg);
  EXPECT_EQ(state.completed_epochs, 1u);
  const TrainResult resumed = Train(g, cfg, nullptr, std::move(state));
  EXPECT_TRUE(resumed.theta == full.theta);
  EXPECT_TRUE(resumed.scores == full.scores);
  EXPECT_TRUE(resumed.ledger == full.ledger);

  TrainConfig changed = cfg;
  changed.learning_rate = 0.5;
  EXPECT_THROW(LoadResumeState(dir / "checkpoint_epoch_1.bin", changed), Error);
  fs::remove_all(dir);
}

TEST(TrainTest, GraphSmallerThanBatchIsRejected) {
  const Graph g = Graph::FromUndirectedEdges(3, std::vector<Edge>{{0, 1}});
  EXPECT_THROW(Train(g, SmallConfig()), Error);
}

TEST(ScoreMatrixTest, AddRulesAndDenseRoundTrip) {
  ScoreMatrix s(3);
  s.Add(0, 1, 2.0);
  s.Add(2, 0);
  EXPECT_EQ(s.at(0, 1), 2.0);
  EXPECT_EQ(s.Total(), 3.0);
  EXPECT_EQ(s.NonZeros(), 2u);
  EXPECT_THROW(s.Add(1, 1), Error);
  EXPECT_THROW(s.Add(0, 1, -1.0), Error);
  EXPECT_THROW(s.Add(0, 3), Error);
  EXPECT_TRUE(ScoreMatrix::FromDense(s.ToDense()) == s);
  std::stringstream io;
  s.Write(io);
  EXPECT_TRUE(ScoreMatrix::Read(io) == s);
}

TEST(ScoreSamplingTest, TwoNodesOnlyCrossTransitions) {
  Rng rng(1);
  Matrix v = Matrix::Random(2, 3);
  ScoreMatrix s(2);
  const std::vector<NodeId> starts{0, 1, 1};
  AccumulateScores(v, starts, 10, 1.0, s, rng);
  EXPECT_EQ(s.at(0, 0), 0.0);
  EXPECT_EQ(s.at(1, 1), 0.0);
  EXPECT_EQ(s.at(0, 1) + s.at(1, 0), 27.0);
}

TEST(ScoreSamplingTest, ZeroEmbeddingsGiveUniformTransitions) {
  Rng rng(2);
  const int n = 5, trials = 20000;
  ScoreMatrix s(n);
  const std::vector<NodeId> starts(trials, 0);
  AccumulateScores(Matrix::Zero(n, 3), starts, 2, 1.0, s, rng);
  const double p = 1.0 / (n - 1);
  const double band = 3 * std::sqrt(trials * p * (1 - p));
  for (NodeId j = 1; j < n; ++j) EXPECT_NEAR(s.at(0, j), trials * p, band);
}

TEST(ScoreSamplingTest, FrequenciesFollowMaskedSoftmax) {
  Rng rng(3);
  const int n = 6, trials = 10000;
  Matrix v(n, 2);
  v << 1.0, 0.2, 1.5, 0.0, 0.4, 0.9, -1.0, 0.3, 0.8, 0.8, 0.0, -0.5;
  const double temperature = 0.7;
  ScoreMatrix s(n);
  const std::vector<NodeId> starts(trials, 0);
  AccumulateScores(v, starts, 2, temperature, s, rng);

  std::vector<double> p(n, 0.0);
  double z = 0.0;
  for (int j = 1; j < n; ++j) {
    p[j] = std::exp(v.row(0).dot(v.row(j)) / temperature);
    z += p[j];
  }
  double chi2 = 0.0;
  for (int j = 1; j < n; ++j) {
    const double expected = trials * p[j] / z;
    chi2 += (s.at(0, j) - expected) * (s.at(0, j) - expected) / expected;
  }
  EXPECT_LT(chi2, ChiSquareCritical1Percent(n - 2));
  // The most aligned neighbour is visited most often.
  NodeId best = 1;
  for (NodeId j = 2; j < n; ++j) {
    if (s.at(0, j) > s.at(0, best)) best = j;
  }
  NodeId best_p = 1;
  for (NodeId j = 2; j < n; ++j) {
    if (p[j] > p[best_p]) best_p = j;
  }
  EXPECT_EQ(best, best_p);
}

}  // namespace
}  // namespace privdpr
