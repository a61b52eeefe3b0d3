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

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <tuple>

#include "httplib.h"

namespace {

namespace fs = std::filesystem;

fs::path Scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dyntrack_capi_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

// Two triangles joined by a light bridge.
dt_graph* TwoTriangles() {
  dt_graph* g = nullptr;
  EXPECT_EQ(dt_graph_create(&g), DT_OK);
  for (auto [a, b, w] : {std::tuple{"a", "b", 3.0}, {"b", "c", 3.0},
                         {"a", "c", 3.0}, {"x", "y", 3.0}, {"y", "z", 3.0},
                         {"x", "z", 3.0}, {"c", "x", 1.0}}) {
    EXPECT_EQ(dt_graph_add_edge(g, a, b, w), DT_OK);
  }
  return g;
}

TEST(CApiTest, VersionAndStatusNames) {
  EXPECT_STRNE(dt_version(), "");
  EXPECT_STREQ(dt_status_name(DT_OK), "ok");
  EXPECT_STRNE(dt_status_name(DT_ERR_PARSE), dt_status_name(DT_ERR_IO));
}

TEST(CApiTest, GraphBuildingAndErrors) {
  dt_graph* g = TwoTriangles();
  size_t nodes = 0, edges = 0;
  double m = 0, deg = 0;
  ASSERT_EQ(dt_graph_node_count(g, &nodes), DT_OK);
  ASSERT_EQ(dt_graph_edge_count(g, &edges), DT_OK);
  ASSERT_EQ(dt_graph_total_weight(g, &m), DT_OK);
  ASSERT_EQ(dt_graph_weighted_degree(g, "c", &deg), DT_OK);
  EXPECT_EQ(nodes, 6u);
  EXPECT_EQ(edges, 7u);
  EXPECT_EQ(m, 19.0);
  EXPECT_EQ(deg, 7.0);

  EXPECT_EQ(dt_graph_add_edge(g, "a", "b", 1), DT_ERR_INVALID_ARGUMENT);
  EXPECT_STRNE(dt_last_error(), "");
  EXPECT_EQ(dt_graph_add_edge(g, "p", "q", 0), DT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dt_graph_weighted_degree(g, "nobody", &deg), DT_ERR_UNKNOWN_NODE);
  EXPECT_EQ(dt_graph_node_count(nullptr, &nodes), DT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dt_graph_add_node(g, "solo"), DT_OK);
  ASSERT_EQ(dt_graph_node_count(g, &nodes), DT_OK);
  EXPECT_EQ(nodes, 7u);
  dt_graph_destroy(g);
  dt_graph_destroy(nullptr);
}

TEST(CApiTest, LoadReportsParseAndIoErrors) {
  const fs::path dir = Scratch("load");
  dt_graph* g = nullptr;
  EXPECT_EQ(dt_graph_load((dir / "absent.edges").c_str(), &g), DT_ERR_IO);
  WriteFile(dir / "bad.edges", "a,b,1\na,b,none\n");
  EXPECT_EQ(dt_graph_load((dir / "bad.edges").c_str(), &g), DT_ERR_PARSE);
  EXPECT_NE(std::string(dt_last_error()).find("bad.edges:2"), std::string::npos);
  WriteFile(dir / "ok.edges", "a,b,2\nb,a,1\nc,,\n");
  ASSERT_EQ(dt_graph_load((dir / "ok.edges").c_str(), &g), DT_OK);
  double m = 0;
  ASSERT_EQ(dt_graph_total_weight(g, &m), DT_OK);
  EXPECT_EQ(m, 3.0);
  dt_graph_destroy(g);
}

TEST(CApiTest, TrackerFollowsUpdates) {
  dt_graph* first = TwoTriangles();
  dt_tracker* tr = nullptr;
  ASSERT_EQ(dt_tracker_create(first, &tr), DT_OK);
  size_t count = 0;
  ASSERT_EQ(dt_tracker_community_count(tr, &count), DT_OK);
  EXPECT_EQ(count, 2u);
  uint32_t ca = 0, cc = 0, cx = 0;
  ASSERT_EQ(dt_tracker_community_of(tr, "a", &ca), DT_OK);
  ASSERT_EQ(dt_tracker_community_of(tr, "c", &cc), DT_OK);
  ASSERT_EQ(dt_tracker_community_of(tr, "x", &cx), DT_OK);
  EXPECT_EQ(ca, cc);
  EXPECT_NE(ca, cx);
  double q = 0;
  ASSERT_EQ(dt_tracker_modularity(tr, &q), DT_OK);
  EXPECT_GT(q, 0.3);

  // A heavy bridge pulls both triangles together.
  dt_graph* next = nullptr;
  ASSERT_EQ(dt_graph_create(&next), DT_OK);
  for (auto [a, b, w] : {std::tuple{"a", "b", 3.0}, {"b", "c", 3.0},
                         {"a", "c", 3.0}, {"x", "y", 3.0}, {"y", "z", 3.0},
                         {"x", "z", 3.0}, {"c", "x", 20.0}}) {
    ASSERT_EQ(dt_graph_add_edge(next, a, b, w), DT_OK);
  }
  size_t updates = 0;
  ASSERT_EQ(dt_tracker_advance(tr, next, &updates), DT_OK);
  EXPECT_EQ(updates, 1u);
  ASSERT_EQ(dt_tracker_community_count(tr, &count), DT_OK);
  EXPECT_EQ(count, 1u);
  EXPECT_EQ(dt_tracker_community_of(tr, "nobody", &ca), DT_ERR_UNKNOWN_NODE);

  const fs::path dir = Scratch("tracker");
  ASSERT_EQ(dt_tracker_write_partition(tr, (dir / "p.csv").c_str()), DT_OK);
  std::ifstream in(dir / "p.csv");
  std::string first_line;
  std::getline(in, first_line);
  EXPECT_EQ(first_line.rfind("a,", 0), 0u);

  dt_tracker_destroy(tr);
  dt_graph_destroy(first);
  dt_graph_destroy(next);
}

TEST(CApiTest, EdgelessTrackerHasNoModularity) {
  dt_graph* g = nullptr;
  ASSERT_EQ(dt_graph_create(&g), DT_OK);
  ASSERT_EQ(dt_graph_add_node(g, "a"), DT_OK);
  dt_tracker* tr = nullptr;
  ASSERT_EQ(dt_tracker_create(g, &tr), DT_OK);
  double q = 0;
  EXPECT_EQ(dt_tracker_modularity(tr, &q), DT_ERR_EMPTY_GRAPH);
  dt_tracker_destroy(tr);
  dt_graph_destroy(g);
}

TEST(CApiTest, GaRun) {
  dt_ga_config cfg;
  dt_ga_config_init(&cfg);
  EXPECT_EQ(cfg.population_size, 100);
  EXPECT_EQ(cfg.generations, 50);
  EXPECT_DOUBLE_EQ(cfg.crossover_prob, 0.9);
  EXPECT_DOUBLE_EQ(cfg.mutation_prob, 0.1);
  EXPECT_DOUBLE_EQ(cfg.elite_fraction, 0.2);
  cfg.seed = 4;
  dt_graph* g = TwoTriangles();
  dt_ga_result r{};
  ASSERT_EQ(dt_ga_run(g, &cfg, &r), DT_OK);
  EXPECT_EQ(r.communities, 2u);
  // Two triangles split at the bridge.
  EXPECT_NEAR(r.modularity, 18.0 / 19 - 2 * std::pow(19.0 / 38, 2), 1e-12);
  cfg.population_size = 0;
  EXPECT_EQ(dt_ga_run(g, &cfg, &r), DT_ERR_INVALID_ARGUMENT);
  dt_graph_destroy(g);
}

TEST(CApiTest, SynthAndRun) {
  const fs::path dir = Scratch("run");
  WriteFile(dir / "spec.json",
            R"({"nodes":30,"communities":3,"p_in":0.5,"p_out":0.02,)"
            R"("snapshots":3,"churn":0.05,"seed":5})");
  ASSERT_EQ(dt_synth((dir / "spec.json").c_str(), (dir / "seq").c_str()), DT_OK);
  EXPECT_TRUE(fs::exists(dir / "seq" / "snapshot_2.edges"));

  dt_run_config cfg;
  dt_run_config_init(&cfg);
  EXPECT_EQ(cfg.algorithm, DT_ALGO_DYCI);
  EXPECT_EQ(cfg.layout_mode, DT_LAYOUT_ANCHORED);
  const std::string in = (dir / "seq").string(), out = (dir / "out").string();
  cfg.input_dir = in.c_str();
  cfg.output_dir = out.c_str();
  cfg.algorithm = DT_ALGO_BOTH;
  cfg.ga.generations = 5;
  cfg.ga.population_size = 20;
  dt_run_summary s{};
  ASSERT_EQ(dt_run(&cfg, &s), DT_OK) << dt_last_error();
  EXPECT_EQ(s.snapshots, 3u);
  EXPECT_EQ(s.report_rows, 6u);
  EXPECT_GT(s.dyci_mean_modularity, 0);
  EXPECT_GT(s.ga_mean_communities, 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "frames.json"));
  EXPECT_TRUE(fs::exists(dir / "out" / "ga_partition_2.csv"));

  const std::string missing = (dir / "nothing").string();
  cfg.input_dir = missing.c_str();
  EXPECT_EQ(dt_run(&cfg, nullptr), DT_ERR_IO);
  fs::create_directories(dir / "gap");
  WriteFile(dir / "gap" / "snapshot_1.edges", "a,b,1\n");
  const std::string gap = (dir / "gap").string();
  cfg.input_dir = gap.c_str();
  EXPECT_EQ(dt_run(&cfg, nullptr), DT_ERR_INCONSISTENT_SEQUENCE);
  EXPECT_EQ(dt_run(nullptr, nullptr), DT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dt_synth((dir / "absent.json").c_str(), out.c_str()), DT_ERR_IO);
}

TEST(CApiTest, ServerServesFramesFile) {
  const fs::path dir = Scratch("server");
  const std::string frames = R"({"frames":[]})";
  WriteFile(dir / "frames.json", frames);
  dt_server* server = nullptr;
  ASSERT_EQ(dt_server_create((dir / "frames.json").c_str(), "127.0.0.1", 0,
                             nullptr, &server),
            DT_OK);
  const int port = dt_server_port(server);
  ASSERT_GT(port, 0);
  dt_status listen_status = DT_ERR_INTERNAL;
  std::thread loop([&] { listen_status = dt_server_listen(server); });

  httplib::Client client("127.0.0.1", port);
  httplib::Result res;
  for (int attempt = 0; attempt < 100 && !res; ++attempt) {
    res = client.Get("/frames.json");
    if (!res) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, frames);
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/json");

  // The file is re-read per request.
  const std::string updated = R"({"frames":[{"t":0,"nodes":[],"edges":[]}]})";
  WriteFile(dir / "frames.json", updated);
  res = client.Get("/frames.json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->body, updated);

  fs::remove(dir / "frames.json");
  res = client.Get("/frames.json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);

  dt_server_stop(server);
  loop.join();
  EXPECT_EQ(listen_status, DT_OK);
  dt_server_destroy(server);
}

TEST(CApiTest, ServerRejectsBadArguments) {
  dt_server* server = nullptr;
  EXPECT_EQ(dt_server_create(nullptr, nullptr, 0, nullptr, &server),
            DT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dt_server_create("f.json", nullptr, 70000, nullptr, &server),
            DT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dt_server_create("f.json", nullptr, 0, "/no/such/dir", &server),
            DT_ERR_IO);
  EXPECT_EQ(dt_server_port(nullptr), -1);
}

}  // namespace
