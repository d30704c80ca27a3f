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

#ifndef PRIVDPR_HARNESS_CONFIG_HPP_
#define PRIVDPR_HARNESS_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "trainer/trainer.hpp"

namespace privdpr {

enum class LinkScorer { kEmbedding, kCommonNeighbors };

struct DatasetConfig {
  std::filesystem::path edges;
  std::optional<std::string> format;  // "tsv" or "csv"; inferred when empty
  bool symmetrize = true;
  std::optional<std::filesystem::path> labels;
};

// One experiment: a dataset, training defaults, and a list of privacy
// budgets, each repeated `runs` times. Every default mirrors the reference
// parameter settings, so an empty override block reproduces them.
struct ExperimentConfig {
  DatasetConfig dataset;
  TrainConfig train;
  std::vector<double> epsilons{3.2};
  std::size_t runs = 5;
  std::filesystem::path output_dir = "runs";
  std::uint64_t master_seed = 0;
  std::optional<std::size_t> target_edges;
  bool downstream = false;
  LinkScorer link_scorer = LinkScorer::kEmbedding;
  std::size_t threads = 1;
  bool checkpoints = true;
  std::vector<std::string> sweep_metrics{"TC", "REDE", "CPL", "KS"};

  // Lists every problem (missing files, out-of-range values) at once.
  void Validate() const;
};

// Parses a config document. Relative paths resolve against base_dir.
// Unknown keys are rejected.
ExperimentConfig ParseExperimentConfig(const nlohmann::json& doc,
                                       const std::filesystem::path& base_dir);
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

// The resolved configuration as a document, without the output directory.
nlohmann::json ToJson(const ExperimentConfig& cfg);
nlohmann::json ToJson(const TrainConfig& cfg);

}  // namespace privdpr

#endif  // PRIVDPR_HARNESS_CONFIG_HPP_
