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

#include "core/dyci.h"

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <tuple>

#include "core/error.h"

namespace dyntrack {

namespace {

// True when candidate (w1, c1) ranks before (w2, c2): heavier link, then
// heavier community, then smaller id.
bool RanksBefore(const Partition& p, Weight w1, CommunityId c1, Weight w2,
                 CommunityId c2) {
  if (w1 != w2) return w1 > w2;
  Weight iw1 = p.IntraWeight(c1);
  Weight iw2 = p.IntraWeight(c2);
  if (iw1 != iw2) return iw1 > iw2;
  return c1 < c2;
}

struct Triangle {
  Weight weight;
  std::array<NodeId, 3> nodes;
};

}  // namespace

Weight WeightedDegree(const SnapshotGraph& g, NodeId n) {
  Weight total = 0;
  for (const auto& [_, w] : g.NeighborsOf(n)) total += w;
  return total;
}

double WeightedIncidence(const SnapshotGraph& g, const Partition& p, NodeId n,
                         CommunityId c) {
  const Weight degree = WeightedDegree(g, n);
  if (degree == 0) {
    throw Error(ErrorCode::kZeroDegree,
                "node #" + std::to_string(n.value) + " has no incident edge");
  }
  Weight into = 0;
  for (const auto& [m, w] : g.NeighborsOf(n)) {
    if (p.CommunityOf(m) == c) into += w;
  }
  return into / degree;
}

bool AbsorptionHolds(const Partition& p, CommunityId com, CommunityId cc) {
  return p.InterWeight(com, cc) >= p.IntraWeight(cc);
}

bool PairMergeHolds(const Partition& p, CommunityId c1, CommunityId c2) {
  const Weight between = p.InterWeight(c1, c2);
  return between >= p.IntraWeight(c1) || between >= p.IntraWeight(c2);
}

Partition SeedPartition(const SnapshotGraph& g0) {
  // Triangle seeds, heaviest first.
  std::vector<Triangle> triangles;
  for (const auto& [a, na] : g0.adjacency()) {
    for (auto it = na.upper_bound(a); it != na.end(); ++it) {
      const auto [b, wab] = *it;
      const auto& nb = g0.NeighborsOf(b);
      for (auto jt = na.upper_bound(b); jt != na.end(); ++jt) {
        const auto [c, wac] = *jt;
        auto bc = nb.find(c);
        if (bc == nb.end()) continue;
        triangles.push_back({wab + wac + bc->second, {a, b, c}});
      }
    }
  }
  std::sort(triangles.begin(), triangles.end(),
            [](const Triangle& x, const Triangle& y) {
              if (x.weight != y.weight) return x.weight > y.weight;
              return x.nodes < y.nodes;
            });

  std::map<NodeId, CommunityId> labels;
  std::uint32_t next = 0;
  for (const Triangle& tri : triangles) {
    if (std::any_of(tri.nodes.begin(), tri.nodes.end(),
                    [&](NodeId n) { return labels.contains(n); })) {
      continue;
    }
    CommunityId c{next++};
    for (NodeId n : tri.nodes) labels[n] = c;
  }
  for (const auto& [n, _] : g0.adjacency()) {
    if (!labels.contains(n)) labels[n] = CommunityId{next++};
  }
  Partition p = Partition::FromAssignment(g0, labels);

  // Merge passes: every qualifying adjacent pair, heaviest link first. A
  // community takes part in at most one merge per pass so that each test
  // sees current weights. Stops once a pass merges nothing.
  for (bool merged = true; merged;) {
    merged = false;
    auto pairs = p.InterWeights();
    std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
      if (x.second != y.second) return x.second > y.second;
      return x.first < y.first;
    });
    std::set<CommunityId> touched;
    for (const auto& [pair, w] : pairs) {
      const auto [g, h] = pair;
      if (touched.contains(g) || touched.contains(h)) continue;
      if (!PairMergeHolds(p, g, h)) continue;
      const bool keep_g = p.IntraWeight(g) > p.IntraWeight(h) ||
                          (p.IntraWeight(g) == p.IntraWeight(h) && g < h);
      const CommunityId keep = keep_g ? g : h;
      const CommunityId gone = keep_g ? h : g;
      p.MergeInto(gone, keep);
      touched.insert(keep);
      touched.insert(gone);
      merged = true;
    }
  }
  return p;
}

DyciTracker::DyciTracker(SnapshotGraph g0)
    : graph_(std::move(g0)), partition_(SeedPartition(graph_)) {}

DyciTracker::DyciTracker(SnapshotGraph g, Partition p)
    : graph_(std::move(g)), partition_(std::move(p)) {
  if (partition_.node_count() != graph_.node_count()) {
    throw Error(ErrorCode::kPartitionMismatch,
                "partition does not cover the graph");
  }
  for (const auto& [n, _] : graph_.adjacency()) {
    if (!partition_.Contains(n)) {
      throw Error(ErrorCode::kPartitionMismatch,
                  "node #" + std::to_string(n.value) + " is not partitioned");
    }
  }
}

void DyciTracker::Step(const UpdateSet& u) {
  // Validate on a scratch copy so that a bad set leaves us untouched.
  {
    SnapshotGraph scratch = graph_;
    ApplyUpdatesInPlace(scratch, u);
  }
  UpdateObserver observer;
  observer.node_removed = [this](NodeId n,
                                 const std::vector<WeightedEdge>& edges) {
    OnNodeRemoved(n, edges);
  };
  observer.edge_removed = [this](const WeightedEdge& e) { OnEdgeRemoved(e); };
  observer.node_added = [this](const NodeAddition& a) { OnNodeAdded(a); };
  observer.edge_added = [this](const WeightedEdge& e) { OnEdgeAdded(e); };
  observer.weight_updated = [this](const WeightedEdge& e, Weight old_w) {
    OnWeightUpdated(e, old_w);
  };
  ApplyUpdatesInPlace(graph_, u, &observer);
  graph_.set_t(graph_.t() + 1);
}

void DyciTracker::RemoveNode(NodeId n) {
  UpdateSet u;
  u.node_to_remove.push_back(n);
  Step(u);
}

void DyciTracker::RemoveEdge(NodeId a, NodeId b) {
  UpdateSet u;
  u.edge_to_remove.push_back({a, b});
  Step(u);
}

void DyciTracker::AddNode(NodeId n,
                          std::vector<std::pair<NodeId, Weight>> edges) {
  UpdateSet u;
  u.node_to_add.push_back({n, std::move(edges)});
  Step(u);
}

void DyciTracker::AddEdge(NodeId a, NodeId b, Weight w) {
  UpdateSet u;
  u.edge_to_add.push_back({a, b, w});
  Step(u);
}

void DyciTracker::UpdateWeight(NodeId a, NodeId b, Weight w) {
  UpdateSet u;
  u.edge_weight_update.push_back({a, b, w});
  Step(u);
}

void DyciTracker::OnNodeRemoved(NodeId n,
                                const std::vector<WeightedEdge>& edges) {
  const CommunityId old = partition_.CommunityOf(n);
  for (const WeightedEdge& e : edges) partition_.OnEdgeRemoved(e.a, e.b, e.w);
  partition_.DropNode(n);
  if (partition_.HasCommunity(old)) ResolveCommunity(old);
}

void DyciTracker::OnEdgeRemoved(const WeightedEdge& e) {
  const CommunityId ca = partition_.CommunityOf(e.a);
  const CommunityId cb = partition_.CommunityOf(e.b);
  partition_.OnEdgeRemoved(e.a, e.b, e.w);
  // An inter edge only lowers INW, which strengthens the partition.
  if (ca == cb) ResolveCommunity(ca);
}

void DyciTracker::OnNodeAdded(const NodeAddition& add) {
  const CommunityId own = partition_.AddSingleton(add.node);
  for (const auto& [m, w] : add.edges) {
    partition_.OnEdgeAdded(add.node, m, w);
  }
  if (add.edges.empty()) return;

  // argmax of WI(newNode, c): the degree is common to all candidates, so
  // the link weight from the singleton ranks them.
  std::optional<std::pair<CommunityId, Weight>> best;
  for (const auto& [c, link] : partition_.Adjacent(own)) {
    if (!best || RanksBefore(partition_, link.weight, c, best->second,
                             best->first)) {
      best = {c, link.weight};
    }
  }
  partition_.MergeInto(own, best->first);
  Cascade(best->first);
}

void DyciTracker::OnEdgeAdded(const WeightedEdge& e) {
  partition_.OnEdgeAdded(e.a, e.b, e.w);
  const CommunityId ca = partition_.CommunityOf(e.a);
  const CommunityId cb = partition_.CommunityOf(e.b);
  if (ca != cb) TryPairMerge(ca, cb);
}

void DyciTracker::OnWeightUpdated(const WeightedEdge& e, Weight old_w) {
  partition_.OnWeightChanged(e.a, e.b, old_w, e.w);
  const CommunityId ca = partition_.CommunityOf(e.a);
  const CommunityId cb = partition_.CommunityOf(e.b);
  if (ca != cb && e.w > old_w) {
    TryPairMerge(ca, cb);
  } else if (ca == cb && e.w < old_w) {
    AbsorbIfDominated(ca);
  }
}

void DyciTracker::ResolveCommunity(CommunityId c) {
  const std::set<NodeId>& members = partition_.Members(c);

  struct Component {
    Weight intra = 0;
    std::vector<NodeId> nodes;
  };
  std::vector<Component> components;
  std::set<NodeId> seen;
  for (NodeId start : members) {
    if (seen.contains(start)) continue;
    Component comp;
    std::vector<NodeId> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      NodeId n = stack.back();
      stack.pop_back();
      comp.nodes.push_back(n);
      for (const auto& [m, w] : graph_.NeighborsOf(n)) {
        if (!members.contains(m)) continue;
        if (n < m) comp.intra += w;
        if (seen.insert(m).second) stack.push_back(m);
      }
    }
    std::sort(comp.nodes.begin(), comp.nodes.end());
    components.push_back(std::move(comp));
  }
  // The heaviest component keeps the id.
  std::stable_sort(components.begin(), components.end(),
                   [](const Component& x, const Component& y) {
                     if (x.intra != y.intra) return x.intra > y.intra;
                     return x.nodes.front() < y.nodes.front();
                   });

  std::vector<CommunityId> ids{c};
  for (std::size_t i = 1; i < components.size(); ++i) {
    ids.push_back(partition_.Detach(graph_, components[i].nodes));
    ++stats_.splits;
  }
  for (CommunityId id : ids) {
    if (partition_.HasCommunity(id)) AbsorbIfDominated(id);
  }
}

void DyciTracker::AbsorbIfDominated(CommunityId cc) {
  std::optional<std::pair<CommunityId, Weight>> best;
  for (const auto& [com, link] : partition_.Adjacent(cc)) {
    if (!AbsorptionHolds(partition_, com, cc)) continue;
    if (!best || RanksBefore(partition_, link.weight, com, best->second,
                             best->first)) {
      best = {com, link.weight};
    }
  }
  if (!best) return;
  Cascade(Merge(cc, best->first));
}

void DyciTracker::TryPairMerge(CommunityId c1, CommunityId c2) {
  if (!PairMergeHolds(partition_, c1, c2)) return;
  Cascade(Merge(c1, c2));
}

void DyciTracker::Cascade(CommunityId c) {
  for (;;) {
    std::optional<std::pair<CommunityId, Weight>> best;
    for (const auto& [h, link] : partition_.Adjacent(c)) {
      if (!PairMergeHolds(partition_, c, h)) continue;
      if (!best || RanksBefore(partition_, link.weight, h, best->second,
                               best->first)) {
        best = {h, link.weight};
      }
    }
    if (!best) return;
    c = Merge(c, best->first);
  }
}

CommunityId DyciTracker::Merge(CommunityId c1, CommunityId c2) {
  const Weight iw1 = partition_.IntraWeight(c1);
  const Weight iw2 = partition_.IntraWeight(c2);
  const bool keep_first = iw1 > iw2 || (iw1 == iw2 && c1 < c2);
  const CommunityId keep = keep_first ? c1 : c2;
  partition_.MergeInto(keep_first ? c2 : c1, keep);
  ++stats_.merges;
  return keep;
}

}  // namespace dyntrack
