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

// Incremental force-directed layout of a snapshot sequence.
//
// Each frame starts from the previous frame's coordinates. Three
// positioning modes decide how much persistent nodes may move:
//
//   Free      every node relaxes.
//   Fixed     nodes of the previous frame keep their coordinates; only new
//             nodes relax around them.
//   Anchored  every node of the previous frame is tied by a spring to an
//             invisible pinned copy of itself at its old position.
//
// Forces follow Fruchterman-Reingold: repulsion k^2/d between all pairs,
// attraction w d^2/k along each edge, a weak pull toward the origin that
// keeps disconnected pieces together, and step lengths bounded by a
// temperature that cools geometrically. An anchor behaves like an edge of
// weight `anchor_stiffness` to the pinned copy, which exerts no repulsion.

#ifndef DYNTRACK_CORE_LAYOUT_H_
#define DYNTRACK_CORE_LAYOUT_H_

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "core/ga.h"
#include "core/graph.h"
#include "core/partition.h"

namespace dyntrack {

struct Vec2 {
  double x = 0;
  double y = 0;

  bool operator==(const Vec2&) const = default;
};

enum class PositioningMode { kFree, kFixed, kAnchored };

struct LayoutMode {
  PositioningMode kind = PositioningMode::kFree;
  // In units of a unit-weight edge's spring. Anchored only.
  double anchor_stiffness = 0.5;

  static LayoutMode Free() { return {PositioningMode::kFree, 0.5}; }
  static LayoutMode Fixed() { return {PositioningMode::kFixed, 0.5}; }
  static LayoutMode Anchored(double stiffness = 0.5) {
    return {PositioningMode::kAnchored, stiffness};
  }

  // Throws Error(kInvalidArgument) for a non-positive stiffness.
  void Validate() const;
};

struct LayoutParams {
  double ideal_length = 1.0;
  int max_iterations = 1000;
  // Converged once no node moves more than this in one iteration.
  double tolerance = 1e-3;
  double cooling = 0.97;
  double gravity = 0.02;
  // Uniform jitter around the neighbour centroid of a new node, in units of
  // ideal_length.
  double jitter = 0.1;
};

struct LayoutFrame {
  int t = 0;
  std::map<NodeId, Vec2> positions;
  std::map<NodeId, CommunityId> community;
  std::map<NodeId, int> presence;
  std::map<NodeId, bool> initial;
  std::vector<WeightedEdge> edges;
};

struct LayoutResult {
  LayoutFrame frame;
  int iterations = 0;
  // False when the iteration cap was hit; the frame then holds the last
  // positions reached.
  bool converged = true;
};

// Lays out `g`, starting from `prev` when given. Only geometry and edges
// are filled; see Annotate for the visual attributes.
LayoutResult LayoutStep(const SnapshotGraph& g, const LayoutFrame* prev,
                        const LayoutMode& mode, Rng& rng,
                        const LayoutParams& params = {});

// Per-node appearance counts over the snapshots observed so far, and the
// node set of the first snapshot.
class PresenceHistory {
 public:
  // Call once per snapshot, in order.
  void Observe(const SnapshotGraph& g);

  int Count(NodeId n) const;
  bool IsInitial(NodeId n) const { return initial_.contains(n); }
  std::size_t snapshots() const { return snapshots_; }

 private:
  std::map<NodeId, int> counts_;
  std::set<NodeId> initial_;
  std::size_t snapshots_ = 0;
};

// Fills community, presence and initial flags. Throws
// Error(kPartitionMismatch) when `p` does not cover exactly the frame's
// nodes.
LayoutFrame Annotate(LayoutFrame frame, const Partition& p,
                     const PresenceHistory& history);

// Mean distance moved by nodes present in both frames; 0 if none.
double MeanDisplacement(const LayoutFrame& before, const LayoutFrame& after);

// Stress against hop distances, after the optimal uniform scaling of the
// drawing, averaged over connected pairs.
double NormalizedStress(const LayoutFrame& frame, const SnapshotGraph& g);

// Serializes frames as
//   {"frames":[{"t":..,"nodes":[{"id","x","y","community","presence",
//   "initial"}],"edges":[{"s","d","w"}]}]}
// with nodes ordered by external id.
std::string FramesToJson(std::span<const LayoutFrame> frames,
                         const NodeDictionary& dict);

// Checks a frames document against the schema above. Returns an empty
// string when it conforms, otherwise the first violation.
std::string ValidateFramesJson(const std::string& text);

}  // namespace dyntrack

#endif  // DYNTRACK_CORE_LAYOUT_H_
