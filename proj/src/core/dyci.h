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

// Incremental community tracking on weighted dynamic graphs.
//
// The first snapshot is partitioned by triangle seeding followed by weight
// driven merges. Every later snapshot is reached through an UpdateSet whose
// entries are handled one by one, only touching the communities around the
// updated element:
//
//   * a community that loses a node or an intra edge is split into its
//     connected components, and each component is absorbed by the adjacent
//     community with the heaviest link when INW(com, CC) >= IW(CC);
//   * a new node joins the adjacent community that receives the largest
//     share of its weighted degree;
//   * an inter edge that appears or gets heavier merges its two endpoint
//     communities when INW(c1, c2) >= IW(c1) or INW(c1, c2) >= IW(c2).
//
// After every merge the surviving community is re-tested against its
// neighbours with the pair condition until no merge fires.
//
// Ties are broken by heavier link, then heavier IW, then smaller id. A merge
// keeps the id of the side with the larger IW (smaller id on a tie).

#ifndef DYNTRACK_CORE_DYCI_H_
#define DYNTRACK_CORE_DYCI_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "core/graph.h"
#include "core/partition.h"

namespace dyntrack {

// Sum of incident edge weights. Throws Error(kUnknownNode).
Weight WeightedDegree(const SnapshotGraph& g, NodeId n);

// Fraction of n's weighted degree that falls into community c. Throws
// Error(kZeroDegree) for an isolated node.
double WeightedIncidence(const SnapshotGraph& g, const Partition& p, NodeId n,
                         CommunityId c);

// INW(com, cc) >= IW(cc).
bool AbsorptionHolds(const Partition& p, CommunityId com, CommunityId cc);
// INW(c1, c2) >= IW(c1) or INW(c1, c2) >= IW(c2). Requires c1 != c2 to be
// adjacent.
bool PairMergeHolds(const Partition& p, CommunityId c1, CommunityId c2);

// Static partition of the first snapshot.
Partition SeedPartition(const SnapshotGraph& g0);

struct DyciStats {
  std::size_t merges = 0;
  std::size_t splits = 0;
};

class DyciTracker {
 public:
  // Seeds the partition from `g0`.
  explicit DyciTracker(SnapshotGraph g0);
  // Resumes from an existing state; `p` must cover `g` exactly.
  DyciTracker(SnapshotGraph g, Partition p);

  const SnapshotGraph& graph() const { return graph_; }
  const Partition& partition() const { return partition_; }
  const DyciStats& stats() const { return stats_; }

  // Applies the five update lists in order (node removals, edge removals,
  // node additions, edge additions, weight updates), each handler seeing
  // the graph produced by the preceding ones. The set is validated first;
  // on Error(kInconsistentUpdate) the tracker is unchanged.
  void Step(const UpdateSet& u);

  // Single-update entry points. Each one is a Step with a one-entry set.
  void RemoveNode(NodeId n);
  void RemoveEdge(NodeId a, NodeId b);
  void AddNode(NodeId n, std::vector<std::pair<NodeId, Weight>> edges = {});
  void AddEdge(NodeId a, NodeId b, Weight w);
  void UpdateWeight(NodeId a, NodeId b, Weight w);

 private:
  void OnNodeRemoved(NodeId n, const std::vector<WeightedEdge>& edges);
  void OnEdgeRemoved(const WeightedEdge& e);
  void OnNodeAdded(const NodeAddition& add);
  void OnEdgeAdded(const WeightedEdge& e);
  void OnWeightUpdated(const WeightedEdge& e, Weight old_w);

  // Splits `c` into its connected components and lets each one be
  // absorbed by a dominating neighbour.
  void ResolveCommunity(CommunityId c);
  // Absorbs `cc` into its best neighbour satisfying the absorption test.
  void AbsorbIfDominated(CommunityId cc);
  // Merges c1 and c2 if the pair test holds, then cascades.
  void TryPairMerge(CommunityId c1, CommunityId c2);
  // Re-tests `c` against its neighbours until no pair merge fires.
  void Cascade(CommunityId c);
  CommunityId Merge(CommunityId c1, CommunityId c2);

  SnapshotGraph graph_;
  Partition partition_;
  DyciStats stats_;
};

}  // namespace dyntrack

#endif  // DYNTRACK_CORE_DYCI_H_
