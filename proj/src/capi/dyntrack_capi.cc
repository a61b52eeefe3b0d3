// Copyright 2026 The dyntrack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dyntrack/dyntrack.h"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include <httplib.h>

#include "core/dyci.h"
#include "core/error.h"
#include "core/ga.h"
#include "core/graph.h"
#include "core/metrics.h"
#include "core/pipeline.h"
#include "core/snapshot_io.h"
#include "core/synth.h"

struct dt_graph {
  dyntrack::NodeDictionary dict;
  dyntrack::SnapshotGraph graph;
};

struct dt_tracker {
  dyntrack::NodeDictionary dict;
  std::unique_ptr<dyntrack::DyciTracker> tracker;
};

struct dt_server {
  httplib::Server http;
  std::string frames_path;
  int port = 0;
};

namespace {

using dyntrack::ErrorCode;

thread_local std::string g_last_error;

dt_status ToStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return DT_ERR_INVALID_ARGUMENT;
    case ErrorCode::kIo: return DT_ERR_IO;
    case ErrorCode::kParse: return DT_ERR_PARSE;
    case ErrorCode::kInconsistentUpdate: return DT_ERR_INCONSISTENT_UPDATE;
    case ErrorCode::kUnknownNode: return DT_ERR_UNKNOWN_NODE;
    case ErrorCode::kZeroDegree: return DT_ERR_ZERO_DEGREE;
    case ErrorCode::kEmptyGraph: return DT_ERR_EMPTY_GRAPH;
    case ErrorCode::kInfeasibleChromosome: return DT_ERR_INFEASIBLE_CHROMOSOME;
    case ErrorCode::kLengthMismatch: return DT_ERR_LENGTH_MISMATCH;
    case ErrorCode::kPartitionMismatch: return DT_ERR_PARTITION_MISMATCH;
    case ErrorCode::kInconsistentSequence: return DT_ERR_INCONSISTENT_SEQUENCE;
  }
  return DT_ERR_INTERNAL;
}

dt_status Fail(dt_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
dt_status Guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return DT_OK;
  } catch (const dyntrack::Error& e) {
    return Fail(ToStatus(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(DT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(DT_ERR_INTERNAL, e.what());
  }
}

#define DT_REQUIRE(cond, what)                                  \
  do {                                                          \
    if (!(cond)) return Fail(DT_ERR_INVALID_ARGUMENT, (what));  \
  } while (0)

// Re-expresses `g` (named through `from`) with ids interned in `to`.
dyntrack::SnapshotGraph Remap(const dyntrack::SnapshotGraph& g,
                              const dyntrack::NodeDictionary& from,
                              dyntrack::NodeDictionary& to) {
  dyntrack::SnapshotGraph out(g.t());
  for (const auto& [n, _] : g.adjacency()) out.AddNode(to.Intern(from.Name(n)));
  for (const dyntrack::WeightedEdge& e : g.Edges()) {
    out.AddEdge(to.Intern(from.Name(e.a)), to.Intern(from.Name(e.b)), e.w);
  }
  return out;
}

dyntrack::GaConfig ToGaConfig(const dt_ga_config& c) {
  dyntrack::GaConfig cfg;
  cfg.population_size = c.population_size;
  cfg.generations = c.generations;
  cfg.crossover_prob = c.crossover_prob;
  cfg.mutation_prob = c.mutation_prob;
  cfg.elite_fraction = c.elite_fraction;
  cfg.seed = c.seed;
  return cfg;
}

}  // namespace

extern "C" {

const char* dt_version(void) { return "1.0.0"; }

const char* dt_status_name(dt_status status) {
  switch (status) {
    case DT_OK: return "ok";
    case DT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DT_ERR_IO: return "i/o error";
    case DT_ERR_PARSE: return "parse error";
    case DT_ERR_INCONSISTENT_UPDATE: return "inconsistent update";
    case DT_ERR_UNKNOWN_NODE: return "unknown node";
    case DT_ERR_ZERO_DEGREE: return "zero degree";
    case DT_ERR_EMPTY_GRAPH: return "empty graph";
    case DT_ERR_INFEASIBLE_CHROMOSOME: return "infeasible chromosome";
    case DT_ERR_LENGTH_MISMATCH: return "length mismatch";
    case DT_ERR_PARTITION_MISMATCH: return "partition mismatch";
    case DT_ERR_INCONSISTENT_SEQUENCE: return "inconsistent sequence";
    case DT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* dt_last_error(void) { return g_last_error.c_str(); }

dt_status dt_graph_create(dt_graph** out) {
  DT_REQUIRE(out, "out is NULL");
  return Guard([&] { *out = new dt_graph(); });
}

dt_status dt_graph_load(const char* path, dt_graph** out) {
  DT_REQUIRE(path && out, "path and out are required");
  return Guard([&] {
    auto g = std::make_unique<dt_graph>();
    g->graph = dyntrack::ReadSnapshot(path, g->dict, 0);
    *out = g.release();
  });
}

void dt_graph_destroy(dt_graph* graph) { delete graph; }

dt_status dt_graph_add_node(dt_graph* graph, const char* id) {
  DT_REQUIRE(graph && id && *id, "graph and a non-empty id are required");
  return Guard([&] { graph->graph.AddNode(graph->dict.Intern(id)); });
}

dt_status dt_graph_add_edge(dt_graph* graph, const char* a, const char* b,
                            double weight) {
  DT_REQUIRE(graph && a && b && *a && *b, "graph and both ids are required");
  return Guard([&] {
    const dyntrack::NodeId na = graph->dict.Intern(a);
    const dyntrack::NodeId nb = graph->dict.Intern(b);
    if (na == nb) {
      throw dyntrack::Error(ErrorCode::kInvalidArgument, "self-loop");
    }
    if (!(weight > 0)) {
      throw dyntrack::Error(ErrorCode::kInvalidArgument,
                            "weight must be positive");
    }
    graph->graph.AddNode(na);
    graph->graph.AddNode(nb);
    graph->graph.AddEdge(na, nb, weight);
  });
}

dt_status dt_graph_node_count(const dt_graph* graph, size_t* out) {
  DT_REQUIRE(graph && out, "graph and out are required");
  *out = graph->graph.node_count();
  return DT_OK;
}

dt_status dt_graph_edge_count(const dt_graph* graph, size_t* out) {
  DT_REQUIRE(graph && out, "graph and out are required");
  *out = graph->graph.edge_count();
  return DT_OK;
}

dt_status dt_graph_total_weight(const dt_graph* graph, double* out) {
  DT_REQUIRE(graph && out, "graph and out are required");
  *out = graph->graph.total_weight();
  return DT_OK;
}

dt_status dt_graph_weighted_degree(const dt_graph* graph, const char* id,
                                   double* out) {
  DT_REQUIRE(graph && id && out, "graph, id and out are required");
  return Guard([&] {
    auto n = graph->dict.Find(id);
    if (!n) {
      throw dyntrack::Error(ErrorCode::kUnknownNode,
                            std::string("unknown node ") + id);
    }
    *out = dyntrack::WeightedDegree(graph->graph, *n);
  });
}

dt_status dt_tracker_create(const dt_graph* first, dt_tracker** out) {
  DT_REQUIRE(first && out, "first and out are required");
  return Guard([&] {
    auto t = std::make_unique<dt_tracker>();
    dyntrack::SnapshotGraph g = Remap(first->graph, first->dict, t->dict);
    t->tracker = std::make_unique<dyntrack::DyciTracker>(std::move(g));
    *out = t.release();
  });
}

void dt_tracker_destroy(dt_tracker* tracker) { delete tracker; }

dt_status dt_tracker_advance(dt_tracker* tracker, const dt_graph* next,
                             size_t* updates) {
  DT_REQUIRE(tracker && next, "tracker and next are required");
  return Guard([&] {
    const dyntrack::SnapshotGraph g = Remap(next->graph, next->dict,
                                            tracker->dict);
    const dyntrack::UpdateSet u =
        dyntrack::DiffSnapshots(tracker->tracker->graph(), g);
    tracker->tracker->Step(u);
    if (updates) *updates = u.size();
  });
}

dt_status dt_tracker_community_of(const dt_tracker* tracker, const char* id,
                                  uint32_t* out) {
  DT_REQUIRE(tracker && id && out, "tracker, id and out are required");
  return Guard([&] {
    auto n = tracker->dict.Find(id);
    if (!n || !tracker->tracker->graph().HasNode(*n)) {
      throw dyntrack::Error(ErrorCode::kUnknownNode,
                            std::string("unknown node ") + id);
    }
    *out = tracker->tracker->partition().CommunityOf(*n).value;
  });
}

dt_status dt_tracker_community_count(const dt_tracker* tracker, size_t* out) {
  DT_REQUIRE(tracker && out, "tracker and out are required");
  *out = tracker->tracker->partition().community_count();
  return DT_OK;
}

dt_status dt_tracker_modularity(const dt_tracker* tracker, double* out) {
  DT_REQUIRE(tracker && out, "tracker and out are required");
  return Guard([&] {
    *out = dyntrack::Modularity(tracker->tracker->graph(),
                                tracker->tracker->partition());
  });
}

dt_status dt_tracker_write_partition(const dt_tracker* tracker,
                                     const char* path) {
  DT_REQUIRE(tracker && path, "tracker and path are required");
  return Guard([&] {
    dyntrack::WritePartition(path, tracker->tracker->partition(),
                             tracker->dict);
  });
}

void dt_ga_config_init(dt_ga_config* cfg) {
  if (!cfg) return;
  const dyntrack::GaConfig defaults;
  cfg->population_size = defaults.population_size;
  cfg->generations = defaults.generations;
  cfg->crossover_prob = defaults.crossover_prob;
  cfg->mutation_prob = defaults.mutation_prob;
  cfg->elite_fraction = defaults.elite_fraction;
  cfg->seed = defaults.seed;
}

dt_status dt_ga_run(const dt_graph* graph, const dt_ga_config* cfg,
                    dt_ga_result* out) {
  DT_REQUIRE(graph && cfg && out, "graph, cfg and out are required");
  return Guard([&] {
    const dyntrack::GaResult r = dyntrack::Evolve(graph->graph, ToGaConfig(*cfg));
    out->modularity = r.fitness;
    out->communities = r.partition.community_count();
  });
}

void dt_run_config_init(dt_run_config* cfg) {
  if (!cfg) return;
  cfg->input_dir = nullptr;
  cfg->output_dir = nullptr;
  cfg->algorithm = DT_ALGO_DYCI;
  cfg->layout_mode = DT_LAYOUT_ANCHORED;
  cfg->anchor_stiffness = dyntrack::LayoutMode::Anchored().anchor_stiffness;
  dt_ga_config_init(&cfg->ga);
  cfg->seed = 0;
  cfg->verbose = 0;
}

dt_status dt_run(const dt_run_config* cfg, dt_run_summary* summary) {
  DT_REQUIRE(cfg && cfg->input_dir && cfg->output_dir,
             "input_dir and output_dir are required");
  return Guard([&] {
    dyntrack::RunConfig run;
    run.input_dir = cfg->input_dir;
    run.output_dir = cfg->output_dir;
    switch (cfg->algorithm) {
      case DT_ALGO_DYCI: run.algorithm = dyntrack::AlgorithmChoice::kDyci; break;
      case DT_ALGO_GA: run.algorithm = dyntrack::AlgorithmChoice::kGa; break;
      case DT_ALGO_BOTH: run.algorithm = dyntrack::AlgorithmChoice::kBoth; break;
      default:
        throw dyntrack::Error(ErrorCode::kInvalidArgument, "unknown algorithm");
    }
    switch (cfg->layout_mode) {
      case DT_LAYOUT_FREE: run.layout_mode = dyntrack::LayoutMode::Free(); break;
      case DT_LAYOUT_FIXED: run.layout_mode = dyntrack::LayoutMode::Fixed(); break;
      case DT_LAYOUT_ANCHORED:
        run.layout_mode = dyntrack::LayoutMode::Anchored(cfg->anchor_stiffness);
        break;
      default:
        throw dyntrack::Error(ErrorCode::kInvalidArgument,
                              "unknown layout mode");
    }
    run.ga = ToGaConfig(cfg->ga);
    run.seed = cfg->seed;
    run.log = cfg->verbose ? &std::cout : nullptr;
    const dyntrack::RunSummary s = dyntrack::Run(run);
    if (summary) {
      summary->snapshots = s.snapshots;
      summary->report_rows = s.reports.size();
      summary->dyci_mean_modularity = s.dyci.modularity;
      summary->dyci_mean_communities = s.dyci.community_count;
      summary->dyci_mean_elapsed_ms = s.dyci.elapsed_ms;
      summary->ga_mean_modularity = s.ga.modularity;
      summary->ga_mean_communities = s.ga.community_count;
      summary->ga_mean_elapsed_ms = s.ga.elapsed_ms;
    }
  });
}

dt_status dt_synth(const char* spec_path, const char* out_dir) {
  DT_REQUIRE(spec_path && out_dir, "spec_path and out_dir are required");
  return Guard([&] {
    const dyntrack::SynthSpec spec = dyntrack::ReadSynthSpec(spec_path);
    dyntrack::WriteSequence(dyntrack::Synthesize(spec), out_dir);
  });
}

dt_status dt_server_create(const char* frames_path, const char* host, int port,
                           const char* static_dir, dt_server** out) {
  DT_REQUIRE(frames_path && out, "frames_path and out are required");
  DT_REQUIRE(port >= 0 && port <= 65535, "port out of range");
  return Guard([&] {
    auto server = std::make_unique<dt_server>();
    server->frames_path = frames_path;
    const std::string path = server->frames_path;
    server->http.Get("/frames.json", [path](const httplib::Request&,
                                            httplib::Response& res) {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        res.status = 404;
        res.set_content("frames file not found", "text/plain");
        return;
      }
      std::ostringstream body;
      body << in.rdbuf();
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_content(body.str(), "application/json");
    });
    if (static_dir) {
      if (!server->http.set_mount_point("/", static_dir)) {
        throw dyntrack::Error(ErrorCode::kIo,
                              std::string("cannot serve ") + static_dir);
      }
    } else {
      server->http.Get("/", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("{\"frames\":\"/frames.json\"}", "application/json");
      });
    }
    const std::string bind_host = host ? host : "127.0.0.1";
    if (port == 0) {
      server->port = server->http.bind_to_any_port(bind_host);
    } else {
      server->port =
          server->http.bind_to_port(bind_host, port) ? port : -1;
    }
    if (server->port <= 0) {
      throw dyntrack::Error(ErrorCode::kIo, "cannot bind " + bind_host + ":" +
                                                std::to_string(port));
    }
    *out = server.release();
  });
}

int dt_server_port(const dt_server* server) {
  return server ? server->port : -1;
}

dt_status dt_server_listen(dt_server* server) {
  DT_REQUIRE(server, "server is NULL");
  return Guard([&] {
    if (!server->http.listen_after_bind()) {
      throw dyntrack::Error(ErrorCode::kIo, "server stopped with an error");
    }
  });
}

void dt_server_stop(dt_server* server) {
  if (server) server->http.stop();
}

void dt_server_destroy(dt_server* server) { delete server; }

}  // extern "C"
