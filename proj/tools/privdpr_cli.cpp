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

// Command line front end for the privdpr shared library.
//
//   privdpr synth  --config exp.json [--out DIR] [--seed N] [--target-edges K]
//                  [--threads T] [--resume]
//   privdpr eval   --original edges.tsv --synthetic DIR [--downstream]
//                  [--labels FILE] [--out DIR]
//   privdpr sweep  --config exp.json [--out DIR] [--seed N] [--downstream] ...
//   privdpr report DIR
//
// Exit codes: 0 success, 1 validation, 2 runtime, 3 privacy overdraft.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "privdpr/privdpr.h"

namespace {

struct ConfigFlags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> target_edges;
  std::optional<std::size_t> threads;
  bool downstream = false;
};

void AddConfigFlags(CLI::App* cmd, ConfigFlags& flags) {
  cmd->add_option("--config", flags.config, "Experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", flags.out, "Output directory override");
  cmd->add_option("--seed", flags.seed, "Master seed override");
  cmd->add_option("--target-edges", flags.target_edges,
                  "Undirected edge count of each synthetic graph");
  cmd->add_option("--threads", flags.threads, "Parallel runs")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--downstream", flags.downstream,
                "Also compute link prediction AUC and Micro-F1");
}

int Fail(privdpr_status status) {
  std::fprintf(stderr, "privdpr: %s\n", privdpr_last_error());
  return static_cast<int>(status);
}

// Loads the config and applies command line overrides.
privdpr_status LoadConfig(const ConfigFlags& flags, privdpr_config** config) {
  privdpr_status st = privdpr_config_load(flags.config.c_str(), config);
  if (st != PRIVDPR_OK) return st;
  if (!flags.out.empty()) st = privdpr_config_set_output_dir(*config, flags.out.c_str());
  if (st == PRIVDPR_OK && flags.seed) st = privdpr_config_set_seed(*config, *flags.seed);
  if (st == PRIVDPR_OK && flags.target_edges) {
    st = privdpr_config_set_target_edges(*config, *flags.target_edges);
  }
  if (st == PRIVDPR_OK && flags.threads) {
    st = privdpr_config_set_threads(*config, *flags.threads);
  }
  if (st == PRIVDPR_OK && flags.downstream) {
    st = privdpr_config_set_downstream(*config, 1);
  }
  if (st == PRIVDPR_OK) st = privdpr_config_validate(*config);
  return st;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private graph synthesis from deep PageRank"};
  app.set_version_flag("--version", privdpr_version());
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress progress output");

  ConfigFlags synth_flags;
  bool resume = false;
  CLI::App* synth = app.add_subcommand("synth", "Train and sample synthetic graphs");
  AddConfigFlags(synth, synth_flags);
  synth->add_flag("--resume", resume, "Continue runs from their last checkpoint");

  std::string original, synthetic_dir, labels, eval_out;
  bool eval_downstream = false;
  CLI::App* eval = app.add_subcommand("eval", "Score synthetic graphs against the original");
  eval->add_option("--original", original, "Original edge list")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--synthetic", synthetic_dir, "Directory written by synth")
      ->required()
      ->check(CLI::ExistingDirectory);
  eval->add_flag("--downstream", eval_downstream,
                 "Also compute link prediction AUC and Micro-F1");
  eval->add_option("--labels", labels, "Node labels for classification")
      ->check(CLI::ExistingFile);
  eval->add_option("--out", eval_out, "Report directory (default: --synthetic)");

  ConfigFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "Synth and eval across privacy budgets");
  AddConfigFlags(sweep, sweep_flags);

  std::string report_dir;
  CLI::App* report = app.add_subcommand("report", "Summarize an evaluation report");
  report->add_option("dir", report_dir, "Directory holding eval_report.json")
      ->required()
      ->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : PRIVDPR_ERR_VALIDATION;
  }
  privdpr_set_verbose(quiet ? 0 : 1);

  privdpr_status st = PRIVDPR_OK;
  if (synth->parsed() || sweep->parsed()) {
    privdpr_config* config = nullptr;
    const ConfigFlags& flags = synth->parsed() ? synth_flags : sweep_flags;
    st = LoadConfig(flags, &config);
    if (st == PRIVDPR_OK) {
      st = synth->parsed() ? privdpr_synth(config, resume ? 1 : 0)
                           : privdpr_sweep(config);
    }
    privdpr_config_free(config);
  } else if (eval->parsed()) {
    st = privdpr_eval(original.c_str(), synthetic_dir.c_str(),
                      eval_downstream ? 1 : 0,
                      labels.empty() ? nullptr : labels.c_str(),
                      eval_out.empty() ? nullptr : eval_out.c_str());
  } else if (report->parsed()) {
    char* text = nullptr;
    st = privdpr_report(report_dir.c_str(), &text);
    if (st == PRIVDPR_OK) {
      std::fputs(text, stdout);
      privdpr_free(text);
    }
  }
  return st == PRIVDPR_OK ? 0 : Fail(st);
}
