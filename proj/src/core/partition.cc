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

#include "core/partition.h"

#include <algorithm>
#include <string>

#include "core/error.h"

namespace dyntrack {

namespace {

const std::map<CommunityId, Link>& EmptyLinks() {
  static const std::map<CommunityId, Link> kEmpty;
  return kEmpty;
}

}  // namespace

Partition Partition::FromAssignment(
    const SnapshotGraph& g, const std::map<NodeId, CommunityId>& labels) {
  Partition p;
  for (const auto& [n, _] : g.adjacency()) {
    auto it = labels.find(n);
    if (it == labels.end()) {
      throw Error(ErrorCode::kPartitionMismatch,
                  "node #" + std::to_string(n.value) + " has no community");
    }
    p.membership_[n] = it->second;
    p.members_[it->second].insert(n);
    p.intra_.try_emplace(it->second, 0);
    p.next_id_ = std::max(p.next_id_, it->second.value + 1);
  }
  if (labels.size() != g.node_count()) {
    throw Error(ErrorCode::kPartitionMismatch,
                "assignment labels nodes outside the graph");
  }
  for (const WeightedEdge& e : g.Edges()) p.OnEdgeAdded(e.a, e.b, e.w);
  return p;
}

Partition Partition::Singletons(const SnapshotGraph& g) {
  Partition p;
  for (const auto& [n, _] : g.adjacency()) p.AddSingleton(n);
  for (const WeightedEdge& e : g.Edges()) p.OnEdgeAdded(e.a, e.b, e.w);
  return p;
}

CommunityId Partition::CommunityOf(NodeId n) const {
  auto it = membership_.find(n);
  if (it == membership_.end()) {
    throw Error(ErrorCode::kUnknownNode,
                "node #" + std::to_string(n.value) + " is not partitioned");
  }
  return it->second;
}

const std::set<NodeId>& Partition::Members(CommunityId c) const {
  auto it = members_.find(c);
  if (it == members_.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown community " + std::to_string(c.value));
  }
  return it->second;
}

std::vector<CommunityId> Partition::Communities() const {
  std::vector<CommunityId> out;
  out.reserve(members_.size());
  for (const auto& [c, _] : members_) out.push_back(c);
  return out;
}

Weight Partition::IntraWeight(CommunityId c) const {
  auto it = intra_.find(c);
  return it == intra_.end() ? 0 : it->second;
}

Weight Partition::InterWeight(CommunityId g, CommunityId h) const {
  auto it = inter_.find(g);
  if (it == inter_.end()) return 0;
  auto jt = it->second.find(h);
  return jt == it->second.end() ? 0 : jt->second.weight;
}

const std::map<CommunityId, Link>& Partition::Adjacent(CommunityId c) const {
  auto it = inter_.find(c);
  return it == inter_.end() ? EmptyLinks() : it->second;
}

std::vector<std::pair<std::pair<CommunityId, CommunityId>, Weight>>
Partition::InterWeights() const {
  std::vector<std::pair<std::pair<CommunityId, CommunityId>, Weight>> out;
  for (const auto& [g, links] : inter_) {
    for (const auto& [h, link] : links) {
      if (g < h) out.push_back({{g, h}, link.weight});
    }
  }
  return out;
}

Weight Partition::AccountedWeight() const {
  Weight total = 0;
  for (const auto& [_, w] : intra_) total += w;
  for (const auto& [pair, w] : InterWeights()) total += w;
  return total;
}

CommunityId Partition::Allocate() {
  CommunityId c{next_id_++};
  members_[c];
  intra_[c] = 0;
  return c;
}

CommunityId Partition::AddSingleton(NodeId n) {
  if (membership_.contains(n)) {
    throw Error(ErrorCode::kInvalidArgument,
                "node #" + std::to_string(n.value) + " already partitioned");
  }
  CommunityId c = Allocate();
  members_[c].insert(n);
  membership_[n] = c;
  return c;
}

void Partition::DropNode(NodeId n) {
  CommunityId c = CommunityOf(n);
  membership_.erase(n);
  members_[c].erase(n);
  EraseIfEmpty(c);
}

void Partition::EraseIfEmpty(CommunityId c) {
  auto it = members_.find(c);
  if (it == members_.end() || !it->second.empty()) return;
  members_.erase(it);
  intra_.erase(c);
  // An empty community has no edges left, so no links either.
  inter_.erase(c);
}

void Partition::AddToPair(CommunityId g, CommunityId h, Weight w, int edges) {
  if (g == h) {
    intra_[g] += w;
    return;
  }
  AddLink(g, h, w, edges);
}

void Partition::AddLink(CommunityId g, CommunityId h, Weight w, int edges) {
  for (auto [x, y] : {std::pair{g, h}, std::pair{h, g}}) {
    auto& links = inter_[x];
    Link& link = links[y];
    link.weight += w;
    link.edges = static_cast<std::size_t>(
        static_cast<long long>(link.edges) + edges);
    if (link.edges == 0) {
      links.erase(y);
      if (links.empty()) inter_.erase(x);
    }
  }
}

void Partition::OnEdgeAdded(NodeId a, NodeId b, Weight w) {
  AddToPair(CommunityOf(a), CommunityOf(b), w, 1);
}

void Partition::OnEdgeRemoved(NodeId a, NodeId b, Weight w) {
  AddToPair(CommunityOf(a), CommunityOf(b), -w, -1);
}

void Partition::OnWeightChanged(NodeId a, NodeId b, Weight old_w,
                                Weight new_w) {
  AddToPair(CommunityOf(a), CommunityOf(b), new_w - old_w, 0);
}

void Partition::MoveNode(const SnapshotGraph& g, NodeId n,
                         CommunityId target) {
  CommunityId from = CommunityOf(n);
  if (from == target) return;
  if (!members_.contains(target)) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown community " + std::to_string(target.value));
  }
  for (const auto& [m, w] : g.NeighborsOf(n)) {
    CommunityId other = CommunityOf(m);
    AddToPair(from, other, -w, -1);
    AddToPair(target, other, w, 1);
  }
  membership_[n] = target;
  members_[from].erase(n);
  members_[target].insert(n);
  EraseIfEmpty(from);
}

CommunityId Partition::Detach(const SnapshotGraph& g,
                              const std::vector<NodeId>& nodes) {
  CommunityId c = Allocate();
  for (NodeId n : nodes) MoveNode(g, n, c);
  EraseIfEmpty(c);
  return c;
}

void Partition::MergeInto(CommunityId from, CommunityId into) {
  if (from == into) return;
  if (!members_.contains(from) || !members_.contains(into)) {
    throw Error(ErrorCode::kInvalidArgument, "merge of unknown community");
  }
  Link between;
  if (auto it = inter_.find(from); it != inter_.end()) {
    if (auto jt = it->second.find(into); jt != it->second.end()) {
      between = jt->second;
    }
  }
  intra_[into] += intra_[from] + between.weight;
  if (between.edges > 0) {
    AddLink(from, into, -between.weight, -static_cast<int>(between.edges));
  }

  if (auto it = inter_.find(from); it != inter_.end()) {
    std::map<CommunityId, Link> links = std::move(it->second);
    inter_.erase(it);
    for (const auto& [h, link] : links) {
      auto ht = inter_.find(h);
      ht->second.erase(from);
      if (ht->second.empty()) inter_.erase(ht);
      AddLink(into, h, link.weight, static_cast<int>(link.edges));
    }
  }

  for (NodeId n : members_[from]) {
    membership_[n] = into;
    members_[into].insert(n);
  }
  members_.erase(from);
  intra_.erase(from);
}

}  // namespace dyntrack
