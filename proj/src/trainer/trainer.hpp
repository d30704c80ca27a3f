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

#ifndef PRIVDPR_TRAINER_TRAINER_HPP_
#define PRIVDPR_TRAINER_TRAINER_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dpr_model/adam.hpp"
#include "dpr_model/network.hpp"
#include "dpr_model/spectral.hpp"
#include "dpr_model/theta.hpp"
#include "graph_core/graph.hpp"
#include "privacy_engine/ledger.hpp"
#include "privacy_engine/privacy.hpp"
#include "trainer/score_matrix.hpp"

namespace privdpr {

struct TrainConfig {
  double gamma = 0.85;
  std::size_t epochs = 5;
  std::size_t batch_nodes = 16;
  std::size_t walks_per_node = 2;
  std::size_t walk_length = 16;
  std::size_t embedding_dim = 128;
  std::size_t hidden_dim = 64;
  double s = 8.0;
  double s_nabla = 5.0;
  double learning_rate = 1e-3;
  double epsilon = 3.2;
  double delta = 1e-5;
  std::uint64_t master_seed = 0;
  bool shuffle_nodes = true;
  double init_scale = 0.1;
  Activation activation = Activation::kSigmoid;
  double score_temperature = 1.0;
  std::size_t power_iterations = kDefaultPowerIterations;
  double power_tolerance = kDefaultPowerTolerance;
  // Writes checkpoint_epoch_<k>.bin after every epoch when set.
  std::optional<std::filesystem::path> checkpoint_dir;

  // Throws a ValidationError listing every invalid field.
  void Validate() const;
  std::size_t IterationsPerEpoch(std::size_t num_nodes) const;
  std::size_t TotalIterations(std::size_t num_nodes) const;
  std::size_t NominalBatchPairs() const;
};

// Everything needed to continue training from an epoch boundary.
struct TrainState {
  Theta theta;
  AdamState weight_optimizer;
  AdamState embedding_optimizer;
  std::vector<Vector> power_vectors;
  ScoreMatrix scores;
  PrivacyLedger ledger;
  std::size_t completed_epochs = 0;
  std::size_t completed_iterations = 0;
};

struct TrainResult {
  Theta theta;
  ScoreMatrix scores;
  PrivacyLedger ledger;
  PrivacySpec privacy;
  std::vector<double> batch_losses;
  std::vector<std::string> warnings;
};

// Audit hooks invoked from inside the training loop.
class TrainObserver {
 public:
  virtual ~TrainObserver() = default;
  virtual void OnWeightsNormalized(std::size_t /*iteration*/,
                                   const Theta& /*theta*/) {}
  virtual void OnGradients(std::size_t /*iteration*/,
                           const Gradients& /*grads*/) {}
  // raw_sum is the exact summed embedding gradient, applied is what the
  // optimizer receives.
  virtual void OnEmbeddingUpdate(std::size_t /*iteration*/,
                                 const Matrix& /*raw_sum*/,
                                 const Matrix& /*applied*/) {}
  virtual void OnIterationEnd(std::size_t /*iteration*/,
                              const TrainState& /*state*/) {}
};

PrivacySpec DerivePrivacy(const Graph& g, const TrainConfig& cfg);

// Runs all T = epochs * floor(N / batch_nodes) iterations. When resume is
// given, training continues after its last completed epoch; the ledger and
// iteration counters must match the configuration.
TrainResult Train(const Graph& g, const TrainConfig& cfg,
                  TrainObserver* observer = nullptr,
                  std::optional<TrainState> resume = std::nullopt);

// Fingerprint of every field that influences training, stored in
// checkpoints so a resume against a different configuration is refused.
std::string ConfigFingerprint(const TrainConfig& cfg);

void WriteCheckpoint(const std::filesystem::path& path, const TrainState& state,
                     const std::string& fingerprint);
TrainState ReadCheckpoint(const std::filesystem::path& path,
                          std::string* fingerprint = nullptr);

// Reads a checkpoint and refuses it unless it was written under cfg.
TrainState LoadResumeState(const std::filesystem::path& path,
                           const TrainConfig& cfg);

}  // namespace privdpr

#endif  // PRIVDPR_TRAINER_TRAINER_HPP_
