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

#include "privdpr/privdpr.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <iostream>
#include <limits>
#include <new>
#include <string>

#include "common/errors.hpp"
#include "evaluation/stats.hpp"
#include "graph_core/edge_list_io.hpp"
#include "graph_core/pagerank.hpp"
#include "harness/artifacts.hpp"
#include "harness/config.hpp"
#include "harness/experiment.hpp"
#include "privacy_engine/privacy.hpp"

struct privdpr_graph {
  privdpr::Graph graph;
};

struct privdpr_config {
  privdpr::ExperimentConfig config;
};

namespace {

thread_local std::string g_last_error;
bool g_verbose = false;

std::ostream* Log() { return g_verbose ? &std::cerr : nullptr; }

privdpr_status StatusFor(privdpr::ErrorCode code) {
  using privdpr::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParse:
    case ErrorCode::kIndex:
    case ErrorCode::kValidation:
      return PRIVDPR_ERR_VALIDATION;
    case ErrorCode::kPrivacyOverdraft:
      return PRIVDPR_ERR_PRIVACY_OVERDRAFT;
    default:
      return PRIVDPR_ERR_RUNTIME;
  }
}

template <typename Fn>
privdpr_status Guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PRIVDPR_OK;
  } catch (const privdpr::Error& e) {
    g_last_error = std::string(privdpr::ErrorCodeName(e.code())) + ": " + e.what();
    return StatusFor(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return PRIVDPR_ERR_RUNTIME;
}

void Require(bool condition, const char* message) {
  if (!condition) {
    throw privdpr::Error(privdpr::ErrorCode::kInvalidArgument, message);
  }
}

double OrNan(const std::optional<double>& v) {
  return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

extern "C" {

const char* privdpr_version(void) { return privdpr::kCodeVersion; }

const char* privdpr_last_error(void) { return g_last_error.c_str(); }

void privdpr_set_verbose(int enabled) { g_verbose = enabled != 0; }

privdpr_status privdpr_graph_load(const char* path, int symmetrize,
                                  privdpr_graph** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    privdpr::LoadOptions options;
    options.format = privdpr::FormatFromPath(path);
    options.symmetrize = symmetrize != 0;
    auto loaded = privdpr::LoadEdgeListFile(path, options);
    *out = new privdpr_graph{std::move(loaded.graph)};
  });
}

void privdpr_graph_free(privdpr_graph* graph) { delete graph; }

size_t privdpr_graph_num_nodes(const privdpr_graph* graph) {
  return graph ? graph->graph.num_nodes() : 0;
}

size_t privdpr_graph_num_edges(const privdpr_graph* graph) {
  return graph ? graph->graph.num_edges() : 0;
}

privdpr_status privdpr_graph_pagerank(const privdpr_graph* graph,
                                      double damping, double* out,
                                      size_t len) {
  return Guard([&] {
    Require(graph != nullptr && out != nullptr, "null argument");
    Require(len >= graph->graph.num_nodes(), "output buffer too small");
    auto scores = privdpr::PageRankExact(graph->graph, damping);
    std::copy(scores.begin(), scores.end(), out);
  });
}

privdpr_status privdpr_graph_stats_compute(const privdpr_graph* graph,
                                           privdpr_graph_stats* out) {
  return Guard([&] {
    Require(graph != nullptr && out != nullptr, "null argument");
    const privdpr::GraphStats s = privdpr::ComputeStats(graph->graph);
    out->triangle_count = static_cast<double>(s.triangle_count);
    out->wedge_count = static_cast<double>(s.wedge_count);
    out->claw_count = static_cast<double>(s.claw_count);
    out->rede = OrNan(s.rede);
    out->cpl = OrNan(s.cpl);
    out->diameter = s.diameter ? static_cast<double>(*s.diameter)
                               : std::numeric_limits<double>::quiet_NaN();
    out->lcc_size = static_cast<double>(s.lcc_size);
  });
}

privdpr_status privdpr_degree_ks(const privdpr_graph* a, const privdpr_graph* b,
                                 double* out) {
  return Guard([&] {
    Require(a != nullptr && b != nullptr && out != nullptr, "null argument");
    *out = privdpr::DegreeKs(a->graph, b->graph);
  });
}

privdpr_status privdpr_gradient_bound(size_t num_nodes, double gamma,
                                      double* out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    *out = privdpr::ComputeM(num_nodes, gamma);
  });
}

privdpr_status privdpr_min_layers(double s_nabla, double batch_pairs,
                                  double bound, double s, size_t iterations,
                                  size_t* out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    *out = privdpr::MinLayers(s_nabla, batch_pairs, bound, s, iterations);
  });
}

privdpr_status privdpr_noise_sigma(double epsilon, double delta,
                                   size_t iterations, double* out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    *out = privdpr::NoiseSigma(epsilon, delta, iterations);
  });
}

privdpr_status privdpr_config_load(const char* path, privdpr_config** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    *out = new privdpr_config{privdpr::LoadExperimentConfig(path)};
  });
}

void privdpr_config_free(privdpr_config* config) { delete config; }

privdpr_status privdpr_config_set_output_dir(privdpr_config* config,
                                             const char* dir) {
  return Guard([&] {
    Require(config != nullptr && dir != nullptr, "null argument");
    config->config.output_dir = dir;
  });
}

privdpr_status privdpr_config_set_seed(privdpr_config* config, uint64_t seed) {
  return Guard([&] {
    Require(config != nullptr, "null argument");
    config->config.master_seed = seed;
  });
}

privdpr_status privdpr_config_set_target_edges(privdpr_config* config,
                                               size_t target_edges) {
  return Guard([&] {
    Require(config != nullptr, "null argument");
    Require(target_edges > 0, "target_edges must be positive");
    config->config.target_edges = target_edges;
  });
}

privdpr_status privdpr_config_set_downstream(privdpr_config* config,
                                             int enabled) {
  return Guard([&] {
    Require(config != nullptr, "null argument");
    config->config.downstream = enabled != 0;
  });
}

privdpr_status privdpr_config_set_threads(privdpr_config* config,
                                          size_t threads) {
  return Guard([&] {
    Require(config != nullptr, "null argument");
    Require(threads > 0, "threads must be positive");
    config->config.threads = threads;
  });
}

privdpr_status privdpr_config_validate(const privdpr_config* config) {
  return Guard([&] {
    Require(config != nullptr, "null argument");
    config->config.Validate();
  });
}

privdpr_status privdpr_synth(const privdpr_config* config, int resume) {
  return Guard([&] {
    Require(config != nullptr, "null argument");
    auto summary = privdpr::RunSynth(config->config, resume != 0, Log());
    if (g_verbose) {
      for (const auto& w : summary.warnings) std::cerr << "warning: " << w << "\n";
    }
  });
}

privdpr_status privdpr_eval(const char* original, const char* synthetic_dir,
                            int downstream, const char* labels,
                            const char* out_dir) {
  return Guard([&] {
    Require(original != nullptr && synthetic_dir != nullptr, "null argument");
    privdpr::EvalOptions options;
    options.downstream = downstream != 0;
    if (labels != nullptr) options.labels = labels;
    if (out_dir != nullptr) options.output_dir = out_dir;
    privdpr::RunEval(original, synthetic_dir, options, Log());
  });
}

privdpr_status privdpr_sweep(const privdpr_config* config) {
  return Guard([&] {
    Require(config != nullptr, "null argument");
    privdpr::RunSweep(config->config, Log());
  });
}

privdpr_status privdpr_report(const char* dir, char** text) {
  return Guard([&] {
    Require(dir != nullptr && text != nullptr, "null argument");
    const std::string table = privdpr::RunReport(dir);
    char* buffer = static_cast<char*>(std::malloc(table.size() + 1));
    if (buffer == nullptr) throw std::bad_alloc();
    std::memcpy(buffer, table.c_str(), table.size() + 1);
    *text = buffer;
  });
}

void privdpr_free(void* ptr) { std::free(ptr); }

}  // extern "C"
