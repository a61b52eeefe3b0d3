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

// Snapshot graphs, update sets and the diff between consecutive snapshots.
//
// A dynamic graph is a sequence of undirected edge-weighted snapshots. Each
// snapshot is turned into the next by an UpdateSet made of five typed lists
// (node removals, edge removals, node additions, edge additions, weight
// updates) which are applied in that order.

#ifndef DYNTRACK_CORE_GRAPH_H_
#define DYNTRACK_CORE_GRAPH_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dyntrack {

// Dense node index. External string ids are interned through a
// NodeDictionary shared by every snapshot of one sequence, so a node that
// disappears and comes back keeps its index.
struct NodeId {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const NodeId&) const = default;
};

using Weight = double;

struct Edge {
  NodeId a;
  NodeId b;

  auto operator<=>(const Edge&) const = default;
};

struct WeightedEdge {
  NodeId a;
  NodeId b;
  Weight w = 0;

  auto operator<=>(const WeightedEdge&) const = default;
};

// Orders the endpoints so that a <= b.
inline Edge Canonical(NodeId a, NodeId b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

class NodeDictionary {
 public:
  NodeId Intern(std::string_view name);
  std::optional<NodeId> Find(std::string_view name) const;
  const std::string& Name(NodeId id) const;
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
};

// Undirected graph with strictly positive edge weights and no self-loops.
// Mutators throw Error(kInvalidArgument) when an invariant would break.
class SnapshotGraph {
 public:
  using Neighbors = std::map<NodeId, Weight>;

  explicit SnapshotGraph(int t = 0) : t_(t) {}

  int t() const { return t_; }
  void set_t(int t) { t_ = t; }

  bool HasNode(NodeId n) const { return adjacency_.contains(n); }
  bool HasEdge(NodeId a, NodeId b) const;
  std::optional<Weight> EdgeWeight(NodeId a, NodeId b) const;

  // Throws Error(kUnknownNode) for a node outside the graph.
  const Neighbors& NeighborsOf(NodeId n) const;

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  // M: sum of w over unordered pairs.
  Weight total_weight() const { return total_weight_; }

  std::vector<NodeId> Nodes() const;
  // Each undirected edge once, with a < b, in lexicographic order.
  std::vector<WeightedEdge> Edges() const;
  const std::map<NodeId, Neighbors>& adjacency() const { return adjacency_; }

  // Returns false when the node already exists.
  bool AddNode(NodeId n);
  void AddEdge(NodeId a, NodeId b, Weight w);
  // Returns the removed weight.
  Weight RemoveEdge(NodeId a, NodeId b);
  // Removes the node with its incident edges; returns those edges.
  std::vector<WeightedEdge> RemoveNode(NodeId n);
  // Returns the previous weight.
  Weight SetWeight(NodeId a, NodeId b, Weight w);

  // Structural equality: node set, edge set and weights. Ignores t.
  bool operator==(const SnapshotGraph& other) const {
    return adjacency_ == other.adjacency_;
  }

 private:
  int t_;
  std::map<NodeId, Neighbors> adjacency_;
  std::size_t edge_count_ = 0;
  Weight total_weight_ = 0;
};

struct NodeAddition {
  NodeId node;
  std::vector<std::pair<NodeId, Weight>> edges;

  bool operator==(const NodeAddition&) const = default;
};

struct UpdateSet {
  std::vector<NodeId> node_to_remove;
  std::vector<Edge> edge_to_remove;
  std::vector<NodeAddition> node_to_add;
  std::vector<WeightedEdge> edge_to_add;
  std::vector<WeightedEdge> edge_weight_update;

  bool empty() const {
    return node_to_remove.empty() && edge_to_remove.empty() &&
           node_to_add.empty() && edge_to_add.empty() &&
           edge_weight_update.empty();
  }
  std::size_t size() const {
    return node_to_remove.size() + edge_to_remove.size() +
           node_to_add.size() + edge_to_add.size() +
           edge_weight_update.size();
  }
  bool operator==(const UpdateSet&) const = default;
};

// Checks entry by entry that `u` can be applied to `g` in the canonical
// order and throws Error(kInconsistentUpdate) naming the first offending
// entry otherwise. The observer, when set, is called after each entry has
// been applied to the working copy.
struct UpdateObserver {
  std::function<void(NodeId, const std::vector<WeightedEdge>&)> node_removed;
  std::function<void(const WeightedEdge&)> edge_removed;
  std::function<void(const NodeAddition&)> node_added;
  std::function<void(const WeightedEdge&)> edge_added;
  // Receives the new weight and the previous one.
  std::function<void(const WeightedEdge&, Weight)> weight_updated;
};

// Applies the update set to `g` in place. `g` is left partially updated if
// an entry is inconsistent, so callers that need atomicity work on a copy.
void ApplyUpdatesInPlace(SnapshotGraph& g, const UpdateSet& u,
                         const UpdateObserver* observer = nullptr);

// Returns G_{t+1}; the input is untouched. The result carries t + 1.
SnapshotGraph ApplyUpdates(const SnapshotGraph& g, const UpdateSet& u);

// The unique minimal update set turning `prev` into `next`.
UpdateSet DiffSnapshots(const SnapshotGraph& prev, const SnapshotGraph& next);

}  // namespace dyntrack

#endif  // DYNTRACK_CORE_GRAPH_H_
