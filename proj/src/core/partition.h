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

#ifndef DYNTRACK_CORE_PARTITION_H_
#define DYNTRACK_CORE_PARTITION_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "core/graph.h"

namespace dyntrack {

struct CommunityId {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const CommunityId&) const = default;
};

// Weight between two distinct communities, plus the number of edges that
// carry it. The edge count decides when a pair stops being adjacent, so
// non-integer weights never leave a residue entry behind.
struct Link {
  Weight weight = 0;
  std::size_t edges = 0;
};

// Node-to-community assignment with cached intra-community weights (IW) and
// inter-community weights (INW).
//
// The caches only stay correct if every change to the underlying graph is
// reported through the On* hooks, in the same order it is applied to the
// graph. DyciTracker does this; other callers normally build a fresh
// partition with FromAssignment.
class Partition {
 public:
  Partition() = default;

  // Every node of `g` must be labeled. Labels become the community ids.
  static Partition FromAssignment(
      const SnapshotGraph& g, const std::map<NodeId, CommunityId>& labels);
  static Partition Singletons(const SnapshotGraph& g);

  bool Contains(NodeId n) const { return membership_.contains(n); }
  // Throws Error(kUnknownNode).
  CommunityId CommunityOf(NodeId n) const;
  bool HasCommunity(CommunityId c) const { return members_.contains(c); }
  // Throws Error(kInvalidArgument) for an unknown community.
  const std::set<NodeId>& Members(CommunityId c) const;

  std::size_t node_count() const { return membership_.size(); }
  std::size_t community_count() const { return members_.size(); }
  std::vector<CommunityId> Communities() const;
  const std::map<NodeId, CommunityId>& membership() const {
    return membership_;
  }

  Weight IntraWeight(CommunityId c) const;
  Weight InterWeight(CommunityId g, CommunityId h) const;
  // Communities sharing at least one edge with `c`.
  const std::map<CommunityId, Link>& Adjacent(CommunityId c) const;
  // Every adjacent pair once, with g < h.
  std::vector<std::pair<std::pair<CommunityId, CommunityId>, Weight>>
  InterWeights() const;
  // Sum of IW over communities plus INW over unordered pairs. Equals the
  // graph's total weight whenever the caches are consistent.
  Weight AccountedWeight() const;

  // Same member sets, ids included.
  bool operator==(const Partition& other) const {
    return members_ == other.members_;
  }

  // --- Cache maintenance -------------------------------------------------

  // Adds a node with no accounted edges as a new singleton community.
  CommunityId AddSingleton(NodeId n);
  // Drops a node whose edges have all been reported removed. Its community
  // disappears when it becomes empty.
  void DropNode(NodeId n);

  void OnEdgeAdded(NodeId a, NodeId b, Weight w);
  void OnEdgeRemoved(NodeId a, NodeId b, Weight w);
  void OnWeightChanged(NodeId a, NodeId b, Weight old_w, Weight new_w);

  // --- Restructuring -----------------------------------------------------

  // Moves `n` (as present in `g`) into `target`, which must exist.
  void MoveNode(const SnapshotGraph& g, NodeId n, CommunityId target);
  // Moves the given nodes into a fresh community and returns its id.
  CommunityId Detach(const SnapshotGraph& g, const std::vector<NodeId>& nodes);
  // Folds `from` into `into`; `from` disappears.
  void MergeInto(CommunityId from, CommunityId into);

 private:
  CommunityId Allocate();
  void AddLink(CommunityId g, CommunityId h, Weight w, int edges);
  void AddToPair(CommunityId g, CommunityId h, Weight w, int edges);
  void EraseIfEmpty(CommunityId c);

  std::map<NodeId, CommunityId> membership_;
  std::map<CommunityId, std::set<NodeId>> members_;
  std::map<CommunityId, Weight> intra_;
  // Symmetric: inter_[g][h] and inter_[h][g] hold the same link.
  std::map<CommunityId, std::map<CommunityId, Link>> inter_;
  std::uint32_t next_id_ = 0;
};

}  // namespace dyntrack

#endif  // DYNTRACK_CORE_PARTITION_H_
