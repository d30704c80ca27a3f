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

/* Public C interface of the privdpr library. Every call that can fail
 * returns a privdpr_status; the message of the most recent failure on the
 * calling thread is available from privdpr_last_error(). Objects are opaque
 * handles released with the matching *_free function. */

#ifndef PRIVDPR_PRIVDPR_H_
#define PRIVDPR_PRIVDPR_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PRIVDPR_API __declspec(dllexport)
#else
#define PRIVDPR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as process exit codes for the command line tool. */
typedef enum privdpr_status {
  PRIVDPR_OK = 0,
  PRIVDPR_ERR_VALIDATION = 1, /* bad input, config, file format or index */
  PRIVDPR_ERR_RUNTIME = 2,
  PRIVDPR_ERR_PRIVACY_OVERDRAFT = 3,
} privdpr_status;

typedef struct privdpr_graph privdpr_graph;
typedef struct privdpr_config privdpr_config;

/* Undefined statistics are NaN. */
typedef struct privdpr_graph_stats {
  double triangle_count;
  double wedge_count;
  double claw_count;
  double rede;
  double cpl;
  double diameter;
  double lcc_size;
} privdpr_graph_stats;

PRIVDPR_API const char* privdpr_version(void);
PRIVDPR_API const char* privdpr_last_error(void);
/* Progress lines go to stderr when enabled. Off by default. */
PRIVDPR_API void privdpr_set_verbose(int enabled);

/* ---- graphs ---- */
PRIVDPR_API privdpr_status privdpr_graph_load(const char* path, int symmetrize,
                                              privdpr_graph** out);
PRIVDPR_API void privdpr_graph_free(privdpr_graph* graph);
PRIVDPR_API size_t privdpr_graph_num_nodes(const privdpr_graph* graph);
PRIVDPR_API size_t privdpr_graph_num_edges(const privdpr_graph* graph);
/* Writes num_nodes scores into out (capacity len). */
PRIVDPR_API privdpr_status privdpr_graph_pagerank(const privdpr_graph* graph,
                                                  double damping, double* out,
                                                  size_t len);
PRIVDPR_API privdpr_status privdpr_graph_stats_compute(
    const privdpr_graph* graph, privdpr_graph_stats* out);
PRIVDPR_API privdpr_status privdpr_degree_ks(const privdpr_graph* a,
                                             const privdpr_graph* b,
                                             double* out);

/* ---- privacy calibration ---- */
PRIVDPR_API privdpr_status privdpr_gradient_bound(size_t num_nodes,
                                                  double gamma, double* out);
PRIVDPR_API privdpr_status privdpr_min_layers(double s_nabla,
                                              double batch_pairs,
                                              double bound, double s,
                                              size_t iterations, size_t* out);
PRIVDPR_API privdpr_status privdpr_noise_sigma(double epsilon, double delta,
                                               size_t iterations, double* out);

/* ---- experiments ---- */
PRIVDPR_API privdpr_status privdpr_config_load(const char* path,
                                               privdpr_config** out);
PRIVDPR_API void privdpr_config_free(privdpr_config* config);
PRIVDPR_API privdpr_status privdpr_config_set_output_dir(privdpr_config* config,
                                                         const char* dir);
PRIVDPR_API privdpr_status privdpr_config_set_seed(privdpr_config* config,
                                                   uint64_t seed);
PRIVDPR_API privdpr_status privdpr_config_set_target_edges(
    privdpr_config* config, size_t target_edges);
PRIVDPR_API privdpr_status privdpr_config_set_downstream(privdpr_config* config,
                                                         int enabled);
PRIVDPR_API privdpr_status privdpr_config_set_threads(privdpr_config* config,
                                                      size_t threads);
/* Reports every configuration problem in one message. */
PRIVDPR_API privdpr_status privdpr_config_validate(const privdpr_config* config);

PRIVDPR_API privdpr_status privdpr_synth(const privdpr_config* config,
                                         int resume);
/* labels may be NULL; out_dir may be NULL to write into synthetic_dir. */
PRIVDPR_API privdpr_status privdpr_eval(const char* original,
                                        const char* synthetic_dir,
                                        int downstream, const char* labels,
                                        const char* out_dir);
PRIVDPR_API privdpr_status privdpr_sweep(const privdpr_config* config);
/* On success *text receives a summary table; free it with privdpr_free. */
PRIVDPR_API privdpr_status privdpr_report(const char* dir, char** text);
PRIVDPR_API void privdpr_free(void* ptr);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* PRIVDPR_PRIVDPR_H_ */
