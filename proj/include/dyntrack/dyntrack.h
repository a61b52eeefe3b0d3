/*
 * Copyright 2026 The dyntrack Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * dyntrack: community tracking on weighted dynamic graphs.
 *
 * Plain C interface of libdyntrack. Objects are opaque handles created by a
 * *_create / *_load function and released with the matching *_destroy.
 * Every fallible call returns a dt_status; on failure a description of the
 * last error on the calling thread is available from dt_last_error().
 * Node ids are the external string ids of the snapshot files.
 */

#ifndef DYNTRACK_DYNTRACK_H_
#define DYNTRACK_DYNTRACK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DT_API __declspec(dllexport)
#else
#define DT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dt_status {
  DT_OK = 0,
  DT_ERR_INVALID_ARGUMENT = 1,
  DT_ERR_IO = 2,
  DT_ERR_PARSE = 3,
  DT_ERR_INCONSISTENT_UPDATE = 4,
  DT_ERR_UNKNOWN_NODE = 5,
  DT_ERR_ZERO_DEGREE = 6,
  DT_ERR_EMPTY_GRAPH = 7,
  DT_ERR_INFEASIBLE_CHROMOSOME = 8,
  DT_ERR_LENGTH_MISMATCH = 9,
  DT_ERR_PARTITION_MISMATCH = 10,
  DT_ERR_INCONSISTENT_SEQUENCE = 11,
  DT_ERR_INTERNAL = 99
} dt_status;

DT_API const char* dt_version(void);
DT_API const char* dt_status_name(dt_status status);
/* Message of the last failed call on this thread, "" if none. */
DT_API const char* dt_last_error(void);

/* ---- Graphs ------------------------------------------------------------ */

typedef struct dt_graph dt_graph;

DT_API dt_status dt_graph_create(dt_graph** out);
/* Reads a snapshot file (`src,dst,weight` lines). */
DT_API dt_status dt_graph_load(const char* path, dt_graph** out);
DT_API void dt_graph_destroy(dt_graph* graph);

DT_API dt_status dt_graph_add_node(dt_graph* graph, const char* id);
/* Adds missing endpoints. Fails if the edge exists or weight <= 0. */
DT_API dt_status dt_graph_add_edge(dt_graph* graph, const char* a,
                                   const char* b, double weight);
DT_API dt_status dt_graph_node_count(const dt_graph* graph, size_t* out);
DT_API dt_status dt_graph_edge_count(const dt_graph* graph, size_t* out);
DT_API dt_status dt_graph_total_weight(const dt_graph* graph, double* out);
DT_API dt_status dt_graph_weighted_degree(const dt_graph* graph,
                                          const char* id, double* out);

/* ---- Incremental tracker ----------------------------------------------- */

typedef struct dt_tracker dt_tracker;

/* Seeds the partition of the first snapshot. */
DT_API dt_status dt_tracker_create(const dt_graph* first, dt_tracker** out);
DT_API void dt_tracker_destroy(dt_tracker* tracker);
/* Diffs the tracked graph against `next` and applies the updates. The
 * number of update entries applied goes to `updates` when non-NULL. */
DT_API dt_status dt_tracker_advance(dt_tracker* tracker, const dt_graph* next,
                                    size_t* updates);
DT_API dt_status dt_tracker_community_of(const dt_tracker* tracker,
                                         const char* id, uint32_t* out);
DT_API dt_status dt_tracker_community_count(const dt_tracker* tracker,
                                            size_t* out);
DT_API dt_status dt_tracker_modularity(const dt_tracker* tracker, double* out);
/* `nodeid,communityid` lines sorted by node id. */
DT_API dt_status dt_tracker_write_partition(const dt_tracker* tracker,
                                            const char* path);

/* ---- Genetic algorithm ------------------------------------------------- */

typedef struct dt_ga_config {
  int population_size;
  int generations;
  double crossover_prob;
  double mutation_prob;
  double elite_fraction;
  uint64_t seed;
} dt_ga_config;

typedef struct dt_ga_result {
  double modularity;
  size_t communities;
} dt_ga_result;

/* Population 100, 50 generations, crossover 0.9, mutation 0.1, elite 0.2. */
DT_API void dt_ga_config_init(dt_ga_config* cfg);
DT_API dt_status dt_ga_run(const dt_graph* graph, const dt_ga_config* cfg,
                           dt_ga_result* out);

/* ---- Pipeline ---------------------------------------------------------- */

typedef enum dt_algorithm {
  DT_ALGO_DYCI = 0,
  DT_ALGO_GA = 1,
  DT_ALGO_BOTH = 2
} dt_algorithm;

typedef enum dt_layout_mode {
  DT_LAYOUT_FREE = 0,
  DT_LAYOUT_FIXED = 1,
  DT_LAYOUT_ANCHORED = 2
} dt_layout_mode;

typedef struct dt_run_config {
  const char* input_dir;
  const char* output_dir;
  dt_algorithm algorithm;
  dt_layout_mode layout_mode;
  double anchor_stiffness;
  dt_ga_config ga;
  uint64_t seed;
  /* Non-zero: print per-snapshot lines and sequence averages to stdout. */
  int verbose;
} dt_run_config;

typedef struct dt_run_summary {
  size_t snapshots;
  size_t report_rows;
  double dyci_mean_modularity;
  double dyci_mean_communities;
  double dyci_mean_elapsed_ms;
  double ga_mean_modularity;
  double ga_mean_communities;
  double ga_mean_elapsed_ms;
} dt_run_summary;

DT_API void dt_run_config_init(dt_run_config* cfg);
/* `summary` may be NULL. */
DT_API dt_status dt_run(const dt_run_config* cfg, dt_run_summary* summary);

/* Writes a synthetic planted-partition sequence described by the JSON spec
 * file into `out_dir`. */
DT_API dt_status dt_synth(const char* spec_path, const char* out_dir);

/* ---- Frames server ----------------------------------------------------- */

typedef struct dt_server dt_server;

/* Binds host:port (port 0 picks a free one). GET /frames.json returns the
 * frames file, re-read on each request. When `static_dir` is non-NULL its
 * files are served under /. */
DT_API dt_status dt_server_create(const char* frames_path, const char* host,
                                  int port, const char* static_dir,
                                  dt_server** out);
DT_API int dt_server_port(const dt_server* server);
/* Blocks until dt_server_stop is called from another thread. */
DT_API dt_status dt_server_listen(dt_server* server);
DT_API void dt_server_stop(dt_server* server);
DT_API void dt_server_destroy(dt_server* server);

#ifdef __cplusplus
}
#endif

#endif /* DYNTRACK_DYNTRACK_H_ */
