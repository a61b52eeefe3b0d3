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

#include "core/layout.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include <nlohmann/json.hpp>

#include "core/dyci.h"
#include "core/error.h"
#include "test_util.h"

namespace dyntrack {
namespace {

using testing::Names;

TEST(LayoutTest, SingleNodeSitsAtOrigin) {
  Names n;
  SnapshotGraph g = n.Graph({}, {"solo"});
  Rng rng(1);
  const LayoutResult r = LayoutStep(g, nullptr, LayoutMode::Free(), rng);
  EXPECT_EQ(r.frame.positions.at(n("solo")), (Vec2{0, 0}));
}

TEST(LayoutTest, PositionsCoverExactlyTheGraphAndAreFinite) {
  std::mt19937_64 grng(3);
  SnapshotGraph g = testing::RandomGraph(40, 0.08, 3, grng);
  g.AddNode(NodeId{999});
  Rng rng(5);
  const LayoutResult r = LayoutStep(g, nullptr, LayoutMode::Free(), rng);
  ASSERT_EQ(r.frame.positions.size(), g.node_count());
  for (const auto& [node, p] : r.frame.positions) {
    EXPECT_TRUE(g.HasNode(node));
    EXPECT_TRUE(std::isfinite(p.x) && std::isfinite(p.y));
  }
  EXPECT_EQ(r.frame.edges, g.Edges());
}

TEST(LayoutTest, FixedModeWithoutChangeIsBitIdentical) {
  std::mt19937_64 grng(4);
  SnapshotGraph g = testing::RandomGraph(30, 0.1, 4, grng);
  Rng rng(7);
  const LayoutFrame first = LayoutStep(g, nullptr, LayoutMode::Free(), rng).frame;
  const LayoutFrame second =
      LayoutStep(g, &first, LayoutMode::Fixed(), rng).frame;
  EXPECT_EQ(second.positions, first.positions);
}

TEST(LayoutTest, FixedModePinsPersistentNodesOnly) {
  std::mt19937_64 grng(6);
  SnapshotGraph g = testing::RandomGraph(30, 0.1, 4, grng);
  Rng rng(7);
  const LayoutFrame first = LayoutStep(g, nullptr, LayoutMode::Free(), rng).frame;
  SnapshotGraph next = g;
  next.AddNode(NodeId{100});
  next.AddEdge(NodeId{100}, NodeId{0}, 2);
  next.AddNode(NodeId{101});
  const LayoutFrame second =
      LayoutStep(next, &first, LayoutMode::Fixed(), rng).frame;
  for (const auto& [node, p] : first.positions) {
    EXPECT_EQ(second.positions.at(node), p);
  }
  EXPECT_TRUE(second.positions.contains(NodeId{100}));
  EXPECT_TRUE(second.positions.contains(NodeId{101}));
}

TEST(LayoutTest, StifferAnchorsMoveLess) {
  std::mt19937_64 grng(10);
  SnapshotGraph g = testing::RandomGraph(50, 0.08, 3, grng);
  SnapshotGraph next = testing::ChurnEdges(g, 0.1, grng);
  Rng rng(1);
  const LayoutFrame first = LayoutStep(g, nullptr, LayoutMode::Free(), rng).frame;
  double last = std::numeric_limits<double>::infinity();
  double softest = 0;
  for (double stiffness : {0.05, 0.15, 0.5, 1.5, 5.0, 15.0, 50.0}) {
    Rng step_rng(2);
    const LayoutFrame f =
        LayoutStep(next, &first, LayoutMode::Anchored(stiffness), step_rng).frame;
    const double d = MeanDisplacement(first, f);
    EXPECT_LE(d, last) << "stiffness " << stiffness;
    if (softest == 0) softest = d;
    last = d;
  }
  // Three decades of stiffness shrink the displacement several times over.
  EXPECT_LT(last, softest / 5);
}

TEST(LayoutTest, DeterministicUnderSeed) {
  std::mt19937_64 grng(8);
  SnapshotGraph g = testing::RandomGraph(30, 0.1, 4, grng);
  Rng a(42), b(42);
  EXPECT_EQ(LayoutStep(g, nullptr, LayoutMode::Free(), a).frame.positions,
            LayoutStep(g, nullptr, LayoutMode::Free(), b).frame.positions);
}

TEST(LayoutTest, RejectsNonPositiveStiffness) {
  Names n;
  Rng rng(1);
  EXPECT_THROW(LayoutStep(n.Graph({{"a", "b", 1}}), nullptr,
                          LayoutMode::Anchored(0), rng),
               Error);
}

TEST(LayoutTest, NewComponentIsPlacedAwayFromOldOnes) {
  Names n;
  SnapshotGraph g = n.Graph({{"a", "b", 1}});
  Rng rng(1);
  const LayoutFrame first = LayoutStep(g, nullptr, LayoutMode::Free(), rng).frame;
  SnapshotGraph next = n.Graph({{"a", "b", 1}, {"x", "y", 1}});
  const LayoutFrame second =
      LayoutStep(next, &first, LayoutMode::Fixed(), rng).frame;
  EXPECT_NE(second.positions.at(n("x")), second.positions.at(n("y")));
  EXPECT_NE(second.positions.at(n("x")), second.positions.at(n("a")));
}

TEST(StressTest, PerfectPathDrawingHasZeroStress) {
  Names n;
  SnapshotGraph g = n.Graph({{"a", "b", 1}, {"b", "c", 1}});
  LayoutFrame f;
  f.positions = {{n("a"), {0, 0}}, {n("b"), {2, 0}}, {n("c"), {4, 0}}};
  EXPECT_NEAR(NormalizedStress(f, g), 0, 1e-15);
  f.positions[n("c")] = {2, 2};
  EXPECT_GT(NormalizedStress(f, g), 0);
}

TEST(AnnotateTest, PresenceAndInitialFlags) {
  Names n;
  const SnapshotGraph g0 = n.Graph({{"a", "b", 1}});
  const SnapshotGraph g1 = n.Graph({{"a", "c", 1}});
  const SnapshotGraph g2 = n.Graph({{"a", "b", 1}, {"b", "c", 1}});
  PresenceHistory h;
  Rng rng(1);
  std::vector<LayoutFrame> frames;
  for (const SnapshotGraph* g : {&g0, &g1, &g2}) {
    h.Observe(*g);
    LayoutFrame f = LayoutStep(*g, frames.empty() ? nullptr : &frames.back(),
                               LayoutMode::Anchored(), rng)
                        .frame;
    frames.push_back(Annotate(std::move(f), SeedPartition(*g), h));
  }
  EXPECT_EQ(frames[2].presence.at(n("a")), 3);
  EXPECT_EQ(frames[1].presence.at(n("c")), 1);
  EXPECT_EQ(frames[2].presence.at(n("c")), 2);
  EXPECT_EQ(frames[2].presence.at(n("b")), 2);
  for (const LayoutFrame& f : frames) {
    if (f.initial.contains(n("b"))) EXPECT_TRUE(f.initial.at(n("b")));
    if (f.initial.contains(n("c"))) EXPECT_FALSE(f.initial.at(n("c")));
    EXPECT_TRUE(f.initial.at(n("a")));
  }
  EXPECT_THROW(Annotate(frames[0], SeedPartition(g2), h), Error);
}

TEST(FramesJsonTest, ExportMatchesSchemaAndSortsById) {
  NodeDictionary dict;
  SnapshotGraph g;
  for (const char* name : {"zed", "amy", "bob"}) g.AddNode(dict.Intern(name));
  g.AddEdge(dict.Intern("zed"), dict.Intern("amy"), 2);
  g.AddEdge(dict.Intern("amy"), dict.Intern("bob"), 1);
  PresenceHistory h;
  h.Observe(g);
  Rng rng(3);
  std::vector<LayoutFrame> frames{Annotate(
      LayoutStep(g, nullptr, LayoutMode::Free(), rng).frame, SeedPartition(g), h)};
  const std::string text = FramesToJson(frames, dict);
  EXPECT_EQ(ValidateFramesJson(text), "");
  const auto doc = nlohmann::json::parse(text);
  const auto& nodes = doc["frames"][0]["nodes"];
  ASSERT_EQ(nodes.size(), 3u);
  EXPECT_EQ(nodes[0]["id"], "amy");
  EXPECT_EQ(nodes[1]["id"], "bob");
  EXPECT_EQ(nodes[2]["id"], "zed");
  EXPECT_EQ(nodes[0]["presence"], 1);
  EXPECT_EQ(nodes[0]["initial"], true);
  EXPECT_EQ(doc["frames"][0]["edges"].size(), 2u);
  const auto& edge = doc["frames"][0]["edges"][0];
  EXPECT_TRUE(edge.contains("s") && edge.contains("d") && edge.contains("w"));
}

TEST(FramesJsonTest, ValidatorRejectsSchemaDrift) {
  EXPECT_NE(ValidateFramesJson("not json"), "");
  EXPECT_NE(ValidateFramesJson(R"({"frame":[]})"), "");
  EXPECT_EQ(ValidateFramesJson(R"({"frames":[]})"), "");
  EXPECT_NE(ValidateFramesJson(R"({"frames":[{"t":0,"nodes":[]}]})"), "");
  EXPECT_NE(ValidateFramesJson(
                R"({"frames":[{"t":0,"nodes":[{"id":"a","x":0,"y":0,)"
                R"("community":0,"presence":1}],"edges":[]}]})"),
            "");
  EXPECT_NE(ValidateFramesJson(
                R"({"frames":[{"t":0,"nodes":[{"id":"a","x":0,"y":0,)"
                R"("community":0,"presence":1,"initial":"yes"}],"edges":[]}]})"),
            "");
  EXPECT_NE(ValidateFramesJson(
                R"({"frames":[{"t":0,"nodes":[],"edges":[{"s":"a","d":"b"}]}]})"),
            "");
  EXPECT_EQ(ValidateFramesJson(
                R"({"frames":[{"t":0,"nodes":[{"id":"a","x":0,"y":0.5,)"
                R"("community":3,"presence":1,"initial":true}],)"
                R"("edges":[{"s":"a","d":"b","w":2}]}]})"),
            "");
}

}  // namespace
}  // namespace dyntrack
