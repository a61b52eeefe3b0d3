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

#include "core/graph.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "core/error.h"

namespace dyntrack {

namespace {

std::string Describe(NodeId n) { return "#" + std::to_string(n.value); }

std::string Describe(NodeId a, NodeId b) {
  return "(" + Describe(a) + "," + Describe(b) + ")";
}

[[noreturn]] void Inconsistent(const char* list, std::size_t index,
                               const std::string& entry,
                               const std::string& reason) {
  std::ostringstream os;
  os << "inconsistent update: " << list << "[" << index << "] " << entry
     << ": " << reason;
  throw Error(ErrorCode::kInconsistentUpdate, os.str());
}

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace

NodeId NodeDictionary::Intern(std::string_view name) {
  auto it = index_.find(std::string(name));
  if (it != index_.end()) return it->second;
  NodeId id{static_cast<std::uint32_t>(names_.size())};
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

std::optional<NodeId> NodeDictionary::Find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& NodeDictionary::Name(NodeId id) const {
  if (id.value >= names_.size()) {
    throw Error(ErrorCode::kUnknownNode,
                "no name registered for node " + Describe(id));
  }
  return names_[id.value];
}

bool SnapshotGraph::HasEdge(NodeId a, NodeId b) const {
  return EdgeWeight(a, b).has_value();
}

std::optional<Weight> SnapshotGraph::EdgeWeight(NodeId a, NodeId b) const {
  auto it = adjacency_.find(a);
  if (it == adjacency_.end()) return std::nullopt;
  auto jt = it->second.find(b);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

const SnapshotGraph::Neighbors& SnapshotGraph::NeighborsOf(NodeId n) const {
  auto it = adjacency_.find(n);
  if (it == adjacency_.end()) {
    throw Error(ErrorCode::kUnknownNode, "unknown node " + Describe(n));
  }
  return it->second;
}

std::vector<NodeId> SnapshotGraph::Nodes() const {
  std::vector<NodeId> out;
  out.reserve(adjacency_.size());
  for (const auto& [n, _] : adjacency_) out.push_back(n);
  return out;
}

std::vector<WeightedEdge> SnapshotGraph::Edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(edge_count_);
  for (const auto& [a, nbrs] : adjacency_) {
    for (const auto& [b, w] : nbrs) {
      if (a < b) out.push_back({a, b, w});
    }
  }
  return out;
}

bool SnapshotGraph::AddNode(NodeId n) {
  return adjacency_.try_emplace(n).second;
}

void SnapshotGraph::AddEdge(NodeId a, NodeId b, Weight w) {
  if (a == b) Invalid("self-loop on " + Describe(a));
  if (!(w > 0)) Invalid("non-positive weight on " + Describe(a, b));
  auto ia = adjacency_.find(a);
  auto ib = adjacency_.find(b);
  if (ia == adjacency_.end() || ib == adjacency_.end()) {
    Invalid("edge endpoint missing for " + Describe(a, b));
  }
  if (!ia->second.emplace(b, w).second) {
    Invalid("edge already exists " + Describe(a, b));
  }
  ib->second.emplace(a, w);
  ++edge_count_;
  total_weight_ += w;
}

Weight SnapshotGraph::RemoveEdge(NodeId a, NodeId b) {
  auto ia = adjacency_.find(a);
  auto ib = adjacency_.find(b);
  if (ia == adjacency_.end() || ib == adjacency_.end()) {
    Invalid("no such edge " + Describe(a, b));
  }
  auto it = ia->second.find(b);
  if (it == ia->second.end()) Invalid("no such edge " + Describe(a, b));
  Weight w = it->second;
  ia->second.erase(it);
  ib->second.erase(a);
  --edge_count_;
  total_weight_ -= w;
  return w;
}

std::vector<WeightedEdge> SnapshotGraph::RemoveNode(NodeId n) {
  auto it = adjacency_.find(n);
  if (it == adjacency_.end()) Invalid("no such node " + Describe(n));
  std::vector<WeightedEdge> removed;
  removed.reserve(it->second.size());
  for (const auto& [m, w] : it->second) {
    removed.push_back({n, m, w});
    adjacency_[m].erase(n);
    --edge_count_;
    total_weight_ -= w;
  }
  adjacency_.erase(it);
  return removed;
}

Weight SnapshotGraph::SetWeight(NodeId a, NodeId b, Weight w) {
  if (!(w > 0)) Invalid("non-positive weight on " + Describe(a, b));
  auto ia = adjacency_.find(a);
  if (ia == adjacency_.end()) Invalid("no such edge " + Describe(a, b));
  auto it = ia->second.find(b);
  if (it == ia->second.end()) Invalid("no such edge " + Describe(a, b));
  Weight old = it->second;
  it->second = w;
  adjacency_[b][a] = w;
  total_weight_ += w - old;
  return old;
}

void ApplyUpdatesInPlace(SnapshotGraph& g, const UpdateSet& u,
                         const UpdateObserver* observer) {
  for (std::size_t i = 0; i < u.node_to_remove.size(); ++i) {
    NodeId n = u.node_to_remove[i];
    if (!g.HasNode(n)) {
      Inconsistent("nodeToRemove", i, Describe(n), "node does not exist");
    }
    auto removed = g.RemoveNode(n);
    if (observer && observer->node_removed) observer->node_removed(n, removed);
  }

  std::set<Edge> removed_edges;
  for (std::size_t i = 0; i < u.edge_to_remove.size(); ++i) {
    const Edge& e = u.edge_to_remove[i];
    auto w = g.EdgeWeight(e.a, e.b);
    if (!w) {
      Inconsistent("edgeToRemove", i, Describe(e.a, e.b),
                   "edge does not exist");
    }
    g.RemoveEdge(e.a, e.b);
    removed_edges.insert(Canonical(e.a, e.b));
    if (observer && observer->edge_removed) {
      observer->edge_removed({e.a, e.b, *w});
    }
  }

  std::set<Edge> added_edges;
  for (std::size_t i = 0; i < u.node_to_add.size(); ++i) {
    const NodeAddition& add = u.node_to_add[i];
    if (g.HasNode(add.node)) {
      Inconsistent("nodeToAdd", i, Describe(add.node), "node already exists");
    }
    for (const auto& [m, w] : add.edges) {
      if (m == add.node) {
        Inconsistent("nodeToAdd", i, Describe(add.node), "self-loop");
      }
      if (!g.HasNode(m)) {
        Inconsistent("nodeToAdd", i, Describe(add.node),
                     "neighbor " + Describe(m) + " does not exist");
      }
      if (!(w > 0)) {
        Inconsistent("nodeToAdd", i, Describe(add.node),
                     "non-positive weight toward " + Describe(m));
      }
    }
    g.AddNode(add.node);
    for (const auto& [m, w] : add.edges) {
      if (g.HasEdge(add.node, m)) {
        Inconsistent("nodeToAdd", i, Describe(add.node),
                     "duplicate neighbor " + Describe(m));
      }
      g.AddEdge(add.node, m, w);
      added_edges.insert(Canonical(add.node, m));
    }
    if (observer && observer->node_added) observer->node_added(add);
  }

  for (std::size_t i = 0; i < u.edge_to_add.size(); ++i) {
    const WeightedEdge& e = u.edge_to_add[i];
    const std::string entry = Describe(e.a, e.b);
    if (e.a == e.b) Inconsistent("edgeToAdd", i, entry, "self-loop");
    if (removed_edges.contains(Canonical(e.a, e.b))) {
      Inconsistent("edgeToAdd", i, entry, "edge is also removed in this set");
    }
    if (!g.HasNode(e.a) || !g.HasNode(e.b)) {
      Inconsistent("edgeToAdd", i, entry, "endpoint does not exist");
    }
    if (g.HasEdge(e.a, e.b)) {
      Inconsistent("edgeToAdd", i, entry, "edge already exists");
    }
    if (!(e.w > 0)) Inconsistent("edgeToAdd", i, entry, "non-positive weight");
    g.AddEdge(e.a, e.b, e.w);
    added_edges.insert(Canonical(e.a, e.b));
    if (observer && observer->edge_added) observer->edge_added(e);
  }

  for (std::size_t i = 0; i < u.edge_weight_update.size(); ++i) {
    const WeightedEdge& e = u.edge_weight_update[i];
    const std::string entry = Describe(e.a, e.b);
    if (added_edges.contains(Canonical(e.a, e.b))) {
      Inconsistent("edgeWeightUpdate", i, entry,
                   "edge is added in this set; the addition carries the "
                   "final weight");
    }
    if (!g.HasEdge(e.a, e.b)) {
      Inconsistent("edgeWeightUpdate", i, entry, "edge does not exist");
    }
    if (!(e.w > 0)) {
      Inconsistent("edgeWeightUpdate", i, entry,
                   "non-positive weight (use edgeToRemove)");
    }
    Weight old = g.SetWeight(e.a, e.b, e.w);
    if (observer && observer->weight_updated) observer->weight_updated(e, old);
  }
}

SnapshotGraph ApplyUpdates(const SnapshotGraph& g, const UpdateSet& u) {
  SnapshotGraph next = g;
  ApplyUpdatesInPlace(next, u);
  next.set_t(g.t() + 1);
  return next;
}

UpdateSet DiffSnapshots(const SnapshotGraph& prev, const SnapshotGraph& next) {
  UpdateSet u;
  for (const auto& [n, _] : prev.adjacency()) {
    if (!next.HasNode(n)) u.node_to_remove.push_back(n);
  }

  // Edges among persistent nodes. Iterating prev/next in key order keeps
  // every list sorted.
  for (const auto& [a, nbrs] : prev.adjacency()) {
    if (!next.HasNode(a)) continue;
    for (const auto& [b, w] : nbrs) {
      if (!(a < b) || !next.HasNode(b)) continue;
      auto nw = next.EdgeWeight(a, b);
      if (!nw) {
        u.edge_to_remove.push_back({a, b});
      } else if (*nw != w) {
        u.edge_weight_update.push_back({a, b, *nw});
      }
    }
  }

  // A new node carries its edges toward persistent nodes and toward new
  // nodes with a smaller index, which have been added just before it.
  for (const auto& [n, nbrs] : next.adjacency()) {
    if (prev.HasNode(n)) continue;
    NodeAddition add{n, {}};
    for (const auto& [m, w] : nbrs) {
      if (prev.HasNode(m) || m < n) add.edges.emplace_back(m, w);
    }
    u.node_to_add.push_back(std::move(add));
  }

  for (const auto& [a, nbrs] : next.adjacency()) {
    if (!prev.HasNode(a)) continue;
    for (const auto& [b, w] : nbrs) {
      if (!(a < b) || !prev.HasNode(b)) continue;
      if (!prev.HasEdge(a, b)) u.edge_to_add.push_back({a, b, w});
    }
  }
  return u;
}

}  // namespace dyntrack
