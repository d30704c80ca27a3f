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

#ifndef PRIVDPR_HARNESS_EXPERIMENT_HPP_
#define PRIVDPR_HARNESS_EXPERIMENT_HPP_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "harness/config.hpp"
#include "json.hpp"

namespace privdpr {

struct SynthSummary {
  std::filesystem::path output_dir;
  std::size_t completed_runs = 0;
  std::vector<std::string> warnings;
};

// Trains and samples runs x epsilons synthetic graphs. Layout:
//   <out>/manifest.json, <out>/node_map.csv
//   <out>/eps_<e>/run_<k>/{synthetic.edges, synthetic.json, ledger.json,
//                          embeddings.tsv, checkpoints/}
// With resume set, each run continues from its latest checkpoint.
SynthSummary RunSynth(const ExperimentConfig& cfg, bool resume = false,
                      std::ostream* log = nullptr);

struct EvalOptions {
  bool downstream = false;
  std::optional<LinkScorer> link_scorer;  // manifest value when unset
  std::optional<std::filesystem::path> labels;
  std::optional<std::filesystem::path> output_dir;  // synthetic_dir if unset
};

// Compares every synthetic graph listed in the manifest against the original
// graph. Writes eval_report.json and eval_long.csv and returns the report.
// Missing runs are listed as gaps and aggregated over the rest.
nlohmann::json RunEval(const std::filesystem::path& original,
                       const std::filesystem::path& synthetic_dir,
                       const EvalOptions& options = {},
                       std::ostream* log = nullptr);

// Synth plus eval over at least two epsilons, then writes sweep.csv with one
// row per (epsilon, metric, run) sorted in that order.
std::filesystem::path RunSweep(const ExperimentConfig& cfg,
                               std::ostream* log = nullptr);

inline constexpr const char* kSweepSchema = "# schema: privdpr-sweep/1";
inline constexpr const char* kSweepHeader =
    "epsilon,metric,run,value,original,score";

// Prints a per-epsilon summary of eval_report.json in `dir` and writes it to
// summary.md.
std::string RunReport(const std::filesystem::path& dir);

}  // namespace privdpr

#endif  // PRIVDPR_HARNESS_EXPERIMENT_HPP_
