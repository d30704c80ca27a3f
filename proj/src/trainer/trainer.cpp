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

#include "trainer/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "common/binary_io.hpp"
#include "common/errors.hpp"
#include "common/rng.hpp"
#include "dpr_model/spectral.hpp"
#include "graph_core/walks.hpp"

namespace privdpr {
namespace {

constexpr std::uint32_t kCheckpointMagic = 0x4b434450;  // "PDCK"
constexpr std::uint32_t kCheckpointVersion = 1;

bool AllFinite(const Matrix& m) { return m.allFinite(); }

void CheckFinite(std::size_t iteration, const Gradients& grads) {
  std::string problem;
  if (!std::isfinite(grads.loss)) problem = "loss";
  if (problem.empty() && !AllFinite(grads.grad_embeddings)) {
    problem = "embedding gradient";
  }
  for (std::size_t l = 0; problem.empty() && l < grads.grad_weights.size();
       ++l) {
    if (!AllFinite(grads.grad_weights[l])) {
      problem = "gradient of weight " + std::to_string(l + 1);
    }
  }
  if (!problem.empty()) {
    std::ostringstream msg;
    msg << "non-finite " << problem << " at iteration " << iteration
        << " (batch loss " << grads.loss << ")";
    throw Error(ErrorCode::kNonFinite, msg.str());
  }
}

std::vector<NodeId> EpochOrder(std::size_t num_nodes, const TrainConfig& cfg,
                               std::size_t epoch) {
  std::vector<NodeId> order(num_nodes);
  std::iota(order.begin(), order.end(), NodeId{0});
  if (cfg.shuffle_nodes) {
    Rng rng = MakeRng(cfg.master_seed, StreamPurpose::kShuffle, {epoch});
    std::shuffle(order.begin(), order.end(), rng);
  }
  return order;
}

TrainState FreshState(const Graph& g, const TrainConfig& cfg,
                      const PrivacySpec& privacy) {
  TrainState state;
  Rng init = MakeRng(cfg.master_seed, StreamPurpose::kInit);
  state.theta = InitParams(g.num_nodes(), cfg.embedding_dim, cfg.hidden_dim,
                           privacy.min_layers, cfg.init_scale, init,
                           cfg.activation);
  state.power_vectors.resize(state.theta.weights.size());
  state.scores = ScoreMatrix(g.num_nodes());
  state.ledger = PrivacyLedger(cfg.epsilon, cfg.delta, privacy.iterations);
  return state;
}

void CheckResumable(const TrainState& state, const Graph& g,
                    const TrainConfig& cfg, const PrivacySpec& privacy) {
  const std::size_t per_epoch = cfg.IterationsPerEpoch(g.num_nodes());
  std::vector<std::string> problems;
  if (state.completed_iterations != state.completed_epochs * per_epoch) {
    problems.push_back("checkpoint is not at an epoch boundary");
  }
  if (state.ledger.entries().size() != state.completed_iterations) {
    problems.push_back("ledger entry count does not match iterations done");
  }
  if (state.ledger.iterations() != privacy.iterations ||
      state.ledger.budget_epsilon() != cfg.epsilon ||
      state.ledger.budget_delta() != cfg.delta) {
    problems.push_back("ledger budget does not match the configuration");
  }
  for (const LedgerEntry& e : state.ledger.entries()) {
    if (e.epsilon != privacy.epsilon_per_iteration ||
        e.delta != privacy.delta_per_iteration) {
      problems.push_back("ledger holds entries that are not an even split");
      break;
    }
  }
  if (state.theta.num_nodes() != g.num_nodes() ||
      state.theta.hidden_layers() != privacy.min_layers ||
      state.scores.size() != g.num_nodes()) {
    problems.push_back("checkpoint shapes do not match graph and depth");
  }
  if (state.completed_epochs > cfg.epochs) {
    problems.push_back("checkpoint is past the configured epoch count");
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

}  // namespace

void TrainConfig::Validate() const {
  std::vector<std::string> problems;
  if (!(gamma > 0.0 && gamma < 1.0)) problems.push_back("gamma must be in (0, 1)");
  if (epochs < 1) problems.push_back("epochs must be >= 1");
  if (batch_nodes < 1) problems.push_back("batch_nodes must be >= 1");
  if (walks_per_node < 1) problems.push_back("walks_per_node must be >= 1");
  if (walk_length < 2) problems.push_back("walk_length must be >= 2");
  if (embedding_dim < 1) problems.push_back("embedding_dim must be >= 1");
  if (hidden_dim < 1) problems.push_back("hidden_dim must be >= 1");
  if (!(s > 1.0)) problems.push_back("s must be > 1");
  if (!(s_nabla > 0.0)) problems.push_back("s_nabla must be > 0");
  if (!(learning_rate > 0.0)) problems.push_back("learning_rate must be > 0");
  if (!(epsilon > 0.0)) problems.push_back("epsilon must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) problems.push_back("delta must be in (0, 1)");
  if (!(init_scale >= 0.0)) problems.push_back("init_scale must be >= 0");
  if (!(score_temperature > 0.0)) {
    problems.push_back("score_temperature must be > 0");
  }
  if (power_iterations < 1) problems.push_back("power_iterations must be >= 1");
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

std::size_t TrainConfig::IterationsPerEpoch(std::size_t num_nodes) const {
  return num_nodes / batch_nodes;
}

std::size_t TrainConfig::TotalIterations(std::size_t num_nodes) const {
  return epochs * IterationsPerEpoch(num_nodes);
}

std::size_t TrainConfig::NominalBatchPairs() const {
  return NominalBatchSize(batch_nodes, walks_per_node, walk_length);
}

PrivacySpec DerivePrivacy(const Graph& g, const TrainConfig& cfg) {
  cfg.Validate();
  const std::size_t iterations = cfg.TotalIterations(g.num_nodes());
  if (iterations == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "graph has fewer nodes than batch_nodes; no iterations");
  }
  PrivacyInputs in;
  in.epsilon = cfg.epsilon;
  in.delta = cfg.delta;
  in.s = cfg.s;
  in.s_nabla = cfg.s_nabla;
  in.iterations = iterations;
  in.batch_pairs = cfg.NominalBatchPairs();
  in.num_nodes = g.num_nodes();
  in.gamma = cfg.gamma;
  return PrivacySpec::Derive(in);
}

TrainResult Train(const Graph& g, const TrainConfig& cfg,
                  TrainObserver* observer, std::optional<TrainState> resume) {
  const PrivacySpec privacy = DerivePrivacy(g, cfg);
  TrainState state;
  if (resume) {
    CheckResumable(*resume, g, cfg, privacy);
    state = std::move(*resume);
  } else {
    state = FreshState(g, cfg, privacy);
  }

  TrainResult result;
  result.privacy = privacy;
  result.warnings = privacy.warnings;

  const std::size_t per_epoch = cfg.IterationsPerEpoch(g.num_nodes());
  const auto batch_pairs = static_cast<double>(privacy.batch_pairs);
  Theta& theta = state.theta;

  for (std::size_t epoch = state.completed_epochs; epoch < cfg.epochs;
       ++epoch) {
    const std::vector<NodeId> order = EpochOrder(g.num_nodes(), cfg, epoch);
    for (std::size_t j = 0; j < per_epoch; ++j) {
      const std::size_t iteration = state.completed_iterations;
      const std::span<const NodeId> node_list(
          order.data() + j * cfg.batch_nodes, cfg.batch_nodes);

      const WalkBatch batch = GenerateWalkBatch(
          g, node_list, cfg.walks_per_node, cfg.walk_length,
          DeriveSeed(cfg.master_seed, StreamPurpose::kWalks, {iteration}));

      for (std::size_t l = 0; l < theta.weights.size(); ++l) {
        Rng spectral =
            MakeRng(cfg.master_seed, StreamPurpose::kSpectral, {iteration, l});
        theta.weights[l] = WeightNormalize(
            theta.weights[l], cfg.s, cfg.power_iterations, cfg.power_tolerance,
            spectral, &state.power_vectors[l]);
      }
      if (observer) observer->OnWeightsNormalized(iteration, theta);

      Gradients grads = BatchGradients(theta, batch.pairs, g, cfg.gamma);
      CheckFinite(iteration, grads);
      if (observer) observer->OnGradients(iteration, grads);
      result.batch_losses.push_back(grads.loss);

      std::vector<Matrix*> weight_params;
      for (Matrix& w : theta.weights) weight_params.push_back(&w);
      for (Matrix& gw : grads.grad_weights) gw /= batch_pairs;
      state.weight_optimizer.Step(weight_params, grads.grad_weights,
                                  cfg.learning_rate);

      Rng noise = MakeRng(cfg.master_seed, StreamPurpose::kNoise, {iteration});
      const Matrix noisy = PerturbGradient(grads.grad_embeddings, cfg.s_nabla,
                                           privacy.sigma, batch_pairs, noise);
      if (observer) {
        observer->OnEmbeddingUpdate(iteration, grads.grad_embeddings, noisy);
      }
      Matrix* embedding_params[] = {&theta.embeddings};
      state.embedding_optimizer.Step(embedding_params,
                                     std::span<const Matrix>(&noisy, 1),
                                     cfg.learning_rate);
      state.ledger.RecordIteration();

      Rng sampler = MakeRng(cfg.master_seed, StreamPurpose::kScores, {iteration});
      AccumulateScores(theta.embeddings, node_list, cfg.walk_length,
                       cfg.score_temperature, state.scores, sampler);

      ++state.completed_iterations;
      if (observer) observer->OnIterationEnd(iteration, state);
    }
    state.completed_epochs = epoch + 1;
    if (cfg.checkpoint_dir) {
      WriteCheckpoint(*cfg.checkpoint_dir / ("checkpoint_epoch_" +
                                             std::to_string(epoch + 1) + ".bin"),
                      state, ConfigFingerprint(cfg));
    }
  }

  state.ledger.Verify();
  result.theta = std::move(state.theta);
  result.scores = std::move(state.scores);
  result.ledger = std::move(state.ledger);
  return result;
}

std::string ConfigFingerprint(const TrainConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "gamma=" << cfg.gamma << ";epochs=" << cfg.epochs
      << ";batch_nodes=" << cfg.batch_nodes
      << ";walks_per_node=" << cfg.walks_per_node
      << ";walk_length=" << cfg.walk_length << ";r=" << cfg.embedding_dim
      << ";d=" << cfg.hidden_dim << ";s=" << cfg.s
      << ";s_nabla=" << cfg.s_nabla << ";eta=" << cfg.learning_rate
      << ";epsilon=" << cfg.epsilon << ";delta=" << cfg.delta
      << ";seed=" << cfg.master_seed << ";shuffle=" << cfg.shuffle_nodes
      << ";init_scale=" << cfg.init_scale
      << ";activation=" << ActivationName(cfg.activation)
      << ";temperature=" << cfg.score_temperature
      << ";power_iterations=" << cfg.power_iterations
      << ";power_tolerance=" << cfg.power_tolerance;
  return out.str();
}

void WriteCheckpoint(const std::filesystem::path& path, const TrainState& state,
                     const std::string& fingerprint) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  BinaryWriter w(out);
  w.Put(kCheckpointMagic);
  w.Put(kCheckpointVersion);
  w.PutString(fingerprint);
  w.Put<std::uint64_t>(state.completed_epochs);
  w.Put<std::uint64_t>(state.completed_iterations);
  WriteTheta(out, state.theta);
  state.weight_optimizer.Write(out);
  state.embedding_optimizer.Write(out);
  w.Put<std::uint64_t>(state.power_vectors.size());
  for (const Vector& v : state.power_vectors) w.PutMatrix(v);
  state.scores.Write(out);
  const PrivacyLedger& ledger = state.ledger;
  w.Put(ledger.budget_epsilon());
  w.Put(ledger.budget_delta());
  w.Put<std::uint64_t>(ledger.iterations());
  w.Put<std::uint64_t>(ledger.entries().size());
  for (const LedgerEntry& e : ledger.entries()) {
    w.Put(e.epsilon);
    w.Put(e.delta);
  }
  w.Check();
}

TrainState ReadCheckpoint(const std::filesystem::path& path,
                          std::string* fingerprint) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  BinaryReader r(in);
  if (r.Get<std::uint32_t>() != kCheckpointMagic) {
    throw Error(ErrorCode::kParse, path.string() + " is not a checkpoint");
  }
  if (const auto v = r.Get<std::uint32_t>(); v != kCheckpointVersion) {
    throw Error(ErrorCode::kParse,
                "unsupported checkpoint version " + std::to_string(v));
  }
  const std::string stored = r.GetString();
  if (fingerprint) *fingerprint = stored;
  TrainState state;
  state.completed_epochs = r.Get<std::uint64_t>();
  state.completed_iterations = r.Get<std::uint64_t>();
  state.theta = ReadTheta(in);
  state.weight_optimizer = AdamState::Read(in);
  state.embedding_optimizer = AdamState::Read(in);
  const auto vectors = r.Get<std::uint64_t>();
  if (vectors > 4096) throw Error(ErrorCode::kParse, "corrupt checkpoint");
  for (std::uint64_t k = 0; k < vectors; ++k) {
    state.power_vectors.push_back(r.GetMatrix<Vector>());
  }
  state.scores = ScoreMatrix::Read(in);
  const double eps = r.Get<double>();
  const double del = r.Get<double>();
  const auto iterations = r.Get<std::uint64_t>();
  state.ledger = PrivacyLedger(eps, del, iterations);
  const auto entries = r.Get<std::uint64_t>();
  for (std::uint64_t k = 0; k < entries; ++k) {
    const double e = r.Get<double>();
    const double d = r.Get<double>();
    state.ledger.Record(e, d);
  }
  return state;
}

TrainState LoadResumeState(const std::filesystem::path& path,
                           const TrainConfig& cfg) {
  std::string stored;
  TrainState state = ReadCheckpoint(path, &stored);
  if (stored != ConfigFingerprint(cfg)) {
    throw ValidationError(
        {"checkpoint " + path.string() +
         " was written under a different training configuration"});
  }
  return state;
}

}  // namespace privdpr
