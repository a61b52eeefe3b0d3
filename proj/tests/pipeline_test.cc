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


#include "core/pipeline.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "core/error.h"
#include "core/snapshot_io.h"
#include "core/synth.h"

namespace dyntrack {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path MakeSequence(const std::string& name, int snapshots) {
  const fs::path dir = fs::temp_directory_path() / ("dyntrack_pipe_" + name);
  fs::remove_all(dir);
  SynthSpec s;
  s.nodes = 40;
  s.communities = 4;
  s.p_in = 0.4;
  s.p_out = 0.02;
  s.snapshots = snapshots;
  s.churn = {0.05, 0.05, 0.05, 0.05, 0.05};
  s.seed = 21;
  WriteSequence(Synthesize(s), dir / "in");
  return dir;
}

RunConfig Config(const fs::path& dir, AlgorithmChoice algo,
                 const std::string& out = "out") {
  RunConfig cfg;
  cfg.input_dir = dir / "in";
  cfg.output_dir = dir / out;
  cfg.algorithm = algo;
  cfg.ga.population_size = 20;
  cfg.ga.generations = 5;
  cfg.seed = 3;
  return cfg;
}

TEST(PipelineTest, SingleSnapshotDyci) {
  const fs::path dir = MakeSequence("single", 1);
  const RunSummary s = dyntrack::Run(Config(dir, AlgorithmChoice::kDyci));
  EXPECT_EQ(s.snapshots, 1u);
  ASSERT_EQ(s.reports.size(), 1u);
  EXPECT_EQ(s.reports[0].algorithm, Algorithm::kDyci);
  EXPECT_EQ(s.dyci.snapshots, 1u);
  EXPECT_EQ(s.ga.snapshots, 0u);
  EXPECT_TRUE(fs::exists(dir / "out" / "partition_0.csv"));
  EXPECT_FALSE(fs::exists(dir / "out" / "ga_partition_0.csv"));
  const std::string reports = Slurp(dir / "out" / "reports.csv");
  EXPECT_EQ(std::count(reports.begin(), reports.end(), '\n'), 2);
}

TEST(PipelineTest, BothAlgorithmsWriteEveryOutput) {
  const fs::path dir = MakeSequence("both", 5);
  const RunSummary s = dyntrack::Run(Config(dir, AlgorithmChoice::kBoth));
  EXPECT_EQ(s.snapshots, 5u);
  ASSERT_EQ(s.reports.size(), 10u);
  EXPECT_EQ(s.dyci.snapshots, 5u);
  EXPECT_EQ(s.ga.snapshots, 5u);
  for (int t = 0; t < 5; ++t) {
    const auto p = ReadPartition(dir / "out" / ("partition_" + std::to_string(t) + ".csv"));
    const auto q =
        ReadPartition(dir / "out" / ("ga_partition_" + std::to_string(t) + ".csv"));
    EXPECT_EQ(p.size(), q.size());
    NodeDictionary dict;
    const SnapshotGraph g = ReadSnapshot(SnapshotPath(dir / "in", t), dict, t);
    EXPECT_EQ(p.size(), g.node_count());
  }
  const std::string frames = Slurp(dir / "out" / "frames.json");
  EXPECT_EQ(ValidateFramesJson(frames), "");
  const auto doc = nlohmann::json::parse(frames);
  ASSERT_EQ(doc["frames"].size(), 5u);
  for (int t = 0; t < 5; ++t) EXPECT_EQ(doc["frames"][t]["t"], t);
}

TEST(PipelineTest, GaOnlyWritesItsPartitionAsTheMainOne) {
  const fs::path dir = MakeSequence("gaonly", 2);
  const RunSummary s = dyntrack::Run(Config(dir, AlgorithmChoice::kGa));
  ASSERT_EQ(s.reports.size(), 2u);
  EXPECT_EQ(s.reports[0].algorithm, Algorithm::kGa);
  EXPECT_TRUE(fs::exists(dir / "out" / "partition_1.csv"));
  EXPECT_FALSE(fs::exists(dir / "out" / "ga_partition_1.csv"));
}

TEST(PipelineTest, OutputsAreDeterministic) {
  const fs::path dir = MakeSequence("determinism", 4);
  dyntrack::Run(Config(dir, AlgorithmChoice::kBoth, "a"));
  dyntrack::Run(Config(dir, AlgorithmChoice::kBoth, "b"));
  for (int t = 0; t < 4; ++t) {
    for (const std::string prefix : {"partition_", "ga_partition_"}) {
      const std::string name = prefix + std::to_string(t) + ".csv";
      EXPECT_EQ(Slurp(dir / "a" / name), Slurp(dir / "b" / name)) << name;
    }
  }
  EXPECT_EQ(Slurp(dir / "a" / "frames.json"), Slurp(dir / "b" / "frames.json"));
}

TEST(PipelineTest, GaSeedsDifferPerSnapshot) {
  EXPECT_NE(GaSeedFor(1, 0), GaSeedFor(1, 1));
  EXPECT_NE(GaSeedFor(1, 0), GaSeedFor(2, 0));
  EXPECT_EQ(GaSeedFor(5, 3), GaSeedFor(5, 3));
}

TEST(PipelineTest, EdgelessSnapshotIsAnError) {
  const fs::path dir = fs::temp_directory_path() / "dyntrack_pipe_edgeless";
  fs::remove_all(dir);
  fs::create_directories(dir / "in");
  std::ofstream(dir / "in" / "snapshot_0.edges") << "a,b,1\n";
  std::ofstream(dir / "in" / "snapshot_1.edges") << "a,,\nb,,\n";
  try {
    dyntrack::Run(Config(dir, AlgorithmChoice::kDyci));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyGraph);
  }
}

TEST(PipelineTest, MalformedSnapshotReportsFileAndLine) {
  const fs::path dir = fs::temp_directory_path() / "dyntrack_pipe_malformed";
  fs::remove_all(dir);
  fs::create_directories(dir / "in");
  std::ofstream(dir / "in" / "snapshot_0.edges") << "a,b,1\nb,c,zero\n";
  try {
    dyntrack::Run(Config(dir, AlgorithmChoice::kDyci));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("snapshot_0.edges:2:"), std::string::npos);
  }
}

}  // namespace
}  // namespace dyntrack
