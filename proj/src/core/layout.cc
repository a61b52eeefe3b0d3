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

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <optional>

#include <nlohmann/json.hpp>

#include "core/error.h"

namespace dyntrack {

namespace {

using Json = nlohmann::ordered_json;

struct Body {
  NodeId id;
  Vec2 pos;
  bool movable = true;
  std::optional<Vec2> anchor;
};

double Norm(double dx, double dy) { return std::sqrt(dx * dx + dy * dy); }

// Places nodes that are not in `placed` yet. Nodes with placed neighbours go
// to the weighted centroid of those neighbours plus jitter, repeatedly, so
// placement spreads outward; what is left belongs to components without any
// placed node and goes on a circle.
void PlaceNewNodes(const SnapshotGraph& g, std::map<NodeId, Vec2>& placed,
                   Rng& rng, const LayoutParams& params) {
  const double k = params.ideal_length;
  std::uniform_real_distribution<double> jitter(-params.jitter * k,
                                                params.jitter * k);
  std::vector<NodeId> pending;
  for (const auto& [n, _] : g.adjacency()) {
    if (!placed.contains(n)) pending.push_back(n);
  }
  for (bool progress = true; progress && !pending.empty();) {
    progress = false;
    std::vector<NodeId> still;
    for (NodeId n : pending) {
      double sx = 0, sy = 0, sw = 0;
      for (const auto& [m, w] : g.NeighborsOf(n)) {
        auto it = placed.find(m);
        if (it == placed.end()) continue;
        sx += w * it->second.x;
        sy += w * it->second.y;
        sw += w;
      }
      if (sw == 0) {
        still.push_back(n);
        continue;
      }
      const double jx = jitter(rng);
      const double jy = jitter(rng);
      placed[n] = {sx / sw + jx, sy / sw + jy};
      progress = true;
    }
    pending = std::move(still);
  }
  if (pending.empty()) return;

  Vec2 center;
  double radius = 0;
  if (!placed.empty()) {
    for (const auto& [_, p] : placed) {
      center.x += p.x;
      center.y += p.y;
    }
    center.x /= static_cast<double>(placed.size());
    center.y /= static_cast<double>(placed.size());
    for (const auto& [_, p] : placed) {
      radius = std::max(radius, Norm(p.x - center.x, p.y - center.y));
    }
    radius += k;
  } else if (pending.size() > 1) {
    radius = k * std::sqrt(static_cast<double>(pending.size())) / 2;
  }
  const double step = 2 * std::numbers::pi / static_cast<double>(pending.size());
  for (std::size_t i = 0; i < pending.size(); ++i) {
    const double angle = step * static_cast<double>(i);
    placed[pending[i]] = {center.x + radius * std::cos(angle),
                          center.y + radius * std::sin(angle)};
  }
}

}  // namespace

void LayoutMode::Validate() const {
  if (!(anchor_stiffness > 0) || !std::isfinite(anchor_stiffness)) {
    throw Error(ErrorCode::kInvalidArgument,
                "anchor stiffness must be positive and finite");
  }
}

LayoutResult LayoutStep(const SnapshotGraph& g, const LayoutFrame* prev,
                        const LayoutMode& mode, Rng& rng,
                        const LayoutParams& params) {
  mode.Validate();
  const double k = params.ideal_length;

  std::map<NodeId, Vec2> start;
  if (prev) {
    for (const auto& [n, p] : prev->positions) {
      if (g.HasNode(n)) start[n] = p;
    }
  }
  std::set<NodeId> persistent;
  for (const auto& [n, _] : start) persistent.insert(n);
  PlaceNewNodes(g, start, rng, params);

  std::vector<Body> bodies;
  bodies.reserve(start.size());
  std::map<NodeId, std::size_t> index;
  for (const auto& [n, p] : start) {
    Body b{n, p, true, std::nullopt};
    if (persistent.contains(n)) {
      if (mode.kind == PositioningMode::kFixed) b.movable = false;
      if (mode.kind == PositioningMode::kAnchored) b.anchor = p;
    }
    index[n] = bodies.size();
    bodies.push_back(b);
  }
  std::vector<std::pair<std::size_t, std::size_t>> springs;
  std::vector<double> spring_w;
  for (const WeightedEdge& e : g.Edges()) {
    springs.emplace_back(index[e.a], index[e.b]);
    spring_w.push_back(e.w);
  }

  LayoutResult result;
  const std::size_t n = bodies.size();
  const bool any_movable =
      std::any_of(bodies.begin(), bodies.end(),
                  [](const Body& b) { return b.movable; });
  double temperature = 0.1 * k * std::sqrt(static_cast<double>(n)) + 0.1 * k;
  std::vector<Vec2> force(n);

  if (any_movable) {
    result.converged = false;
    for (int iter = 0; iter < params.max_iterations; ++iter) {
      std::fill(force.begin(), force.end(), Vec2{});
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          double dx = bodies[i].pos.x - bodies[j].pos.x;
          double dy = bodies[i].pos.y - bodies[j].pos.y;
          double d = Norm(dx, dy);
          if (d < 1e-9 * k) {
            // Coincident: push apart along a direction fixed by the pair.
            const double angle = static_cast<double>(i * 7 + j * 13);
            dx = std::cos(angle) * 1e-9 * k;
            dy = std::sin(angle) * 1e-9 * k;
            d = 1e-9 * k;
          }
          const double f = k * k / d;
          force[i].x += dx / d * f;
          force[i].y += dy / d * f;
          force[j].x -= dx / d * f;
          force[j].y -= dy / d * f;
        }
      }
      for (std::size_t e = 0; e < springs.size(); ++e) {
        const auto [i, j] = springs[e];
        const double dx = bodies[i].pos.x - bodies[j].pos.x;
        const double dy = bodies[i].pos.y - bodies[j].pos.y;
        const double d = Norm(dx, dy);
        if (d == 0) continue;
        const double f = spring_w[e] * d * d / k;
        force[i].x -= dx / d * f;
        force[i].y -= dy / d * f;
        force[j].x += dx / d * f;
        force[j].y += dy / d * f;
      }
      for (std::size_t i = 0; i < n; ++i) {
        const Body& b = bodies[i];
        force[i].x -= params.gravity * b.pos.x;
        force[i].y -= params.gravity * b.pos.y;
        if (b.anchor) {
          const double dx = b.pos.x - b.anchor->x;
          const double dy = b.pos.y - b.anchor->y;
          const double d = Norm(dx, dy);
          if (d > 0) {
            const double f = mode.anchor_stiffness * d * d / k;
            force[i].x -= dx / d * f;
            force[i].y -= dy / d * f;
          }
        }
      }

      double max_step = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!bodies[i].movable) continue;
        const double len = Norm(force[i].x, force[i].y);
        if (len == 0) continue;
        const double step = std::min(len, temperature);
        bodies[i].pos.x += force[i].x / len * step;
        bodies[i].pos.y += force[i].y / len * step;
        max_step = std::max(max_step, step);
      }
      temperature *= params.cooling;
      result.iterations = iter + 1;
      if (max_step < params.tolerance) {
        result.converged = true;
        break;
      }
    }
  }

  LayoutFrame& frame = result.frame;
  frame.t = g.t();
  for (const Body& b : bodies) frame.positions[b.id] = b.pos;
  frame.edges = g.Edges();
  return result;
}

void PresenceHistory::Observe(const SnapshotGraph& g) {
  for (const auto& [n, _] : g.adjacency()) {
    ++counts_[n];
    if (snapshots_ == 0) initial_.insert(n);
  }
  ++snapshots_;
}

int PresenceHistory::Count(NodeId n) const {
  auto it = counts_.find(n);
  return it == counts_.end() ? 0 : it->second;
}

LayoutFrame Annotate(LayoutFrame frame, const Partition& p,
                     const PresenceHistory& history) {
  if (p.node_count() != frame.positions.size()) {
    throw Error(ErrorCode::kPartitionMismatch,
                "partition and frame cover different node sets");
  }
  frame.community.clear();
  frame.presence.clear();
  frame.initial.clear();
  for (const auto& [n, _] : frame.positions) {
    if (!p.Contains(n)) {
      throw Error(ErrorCode::kPartitionMismatch,
                  "frame node #" + std::to_string(n.value) +
                      " has no community");
    }
    frame.community[n] = p.CommunityOf(n);
    frame.presence[n] = std::max(1, history.Count(n));
    frame.initial[n] = history.IsInitial(n);
  }
  return frame;
}

double MeanDisplacement(const LayoutFrame& before, const LayoutFrame& after) {
  double total = 0;
  std::size_t count = 0;
  for (const auto& [n, p] : after.positions) {
    auto it = before.positions.find(n);
    if (it == before.positions.end()) continue;
    total += Norm(p.x - it->second.x, p.y - it->second.y);
    ++count;
  }
  return count == 0 ? 0 : total / static_cast<double>(count);
}

double NormalizedStress(const LayoutFrame& frame, const SnapshotGraph& g) {
  const std::vector<NodeId> nodes = g.Nodes();
  std::map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;

  struct Pair {
    double drawn;
    double hops;
  };
  std::vector<Pair> pairs;
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    std::vector<int> dist(nodes.size(), -1);
    std::deque<std::size_t> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (const auto& [m, _] : g.NeighborsOf(nodes[u])) {
        const std::size_t v = index[m];
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    const Vec2 ps = frame.positions.at(nodes[s]);
    for (std::size_t t = s + 1; t < nodes.size(); ++t) {
      if (dist[t] <= 0) continue;
      const Vec2 pt = frame.positions.at(nodes[t]);
      pairs.push_back({Norm(ps.x - pt.x, ps.y - pt.y),
                       static_cast<double>(dist[t])});
    }
  }
  if (pairs.empty()) return 0;
  // alpha minimizing sum ((alpha x - d) / d)^2.
  double num = 0, den = 0;
  for (const Pair& p : pairs) {
    num += p.drawn / p.hops;
    den += p.drawn * p.drawn / (p.hops * p.hops);
  }
  const double alpha = den > 0 ? num / den : 1;
  double stress = 0;
  for (const Pair& p : pairs) {
    const double r = (alpha * p.drawn - p.hops) / p.hops;
    stress += r * r;
  }
  return stress / static_cast<double>(pairs.size());
}

std::string FramesToJson(std::span<const LayoutFrame> frames,
                         const NodeDictionary& dict) {
  Json doc;
  Json& out = doc["frames"] = Json::array();
  for (const LayoutFrame& f : frames) {
    std::vector<NodeId> order;
    for (const auto& [n, _] : f.positions) order.push_back(n);
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
      return dict.Name(a) < dict.Name(b);
    });
    Json frame;
    frame["t"] = f.t;
    Json& nodes = frame["nodes"] = Json::array();
    for (NodeId n : order) {
      const Vec2 p = f.positions.at(n);
      auto community = f.community.find(n);
      auto presence = f.presence.find(n);
      auto initial = f.initial.find(n);
      Json node;
      node["id"] = dict.Name(n);
      node["x"] = p.x;
      node["y"] = p.y;
      node["community"] =
          community == f.community.end() ? 0 : community->second.value;
      node["presence"] = presence == f.presence.end() ? 1 : presence->second;
      node["initial"] = initial != f.initial.end() && initial->second;
      nodes.push_back(std::move(node));
    }
    Json& edges = frame["edges"] = Json::array();
    for (const WeightedEdge& e : f.edges) {
      Json edge;
      edge["s"] = dict.Name(e.a);
      edge["d"] = dict.Name(e.b);
      edge["w"] = e.w;
      edges.push_back(std::move(edge));
    }
    out.push_back(std::move(frame));
  }
  return doc.dump();
}

std::string ValidateFramesJson(const std::string& text) {
  Json doc = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) return "not valid JSON";
  if (!doc.is_object() || doc.size() != 1 || !doc.contains("frames") ||
      !doc["frames"].is_array()) {
    return "top level must be {\"frames\": [...]}";
  }
  auto has_exactly = [](const Json& obj,
                        std::initializer_list<const char*> keys) {
    if (!obj.is_object() || obj.size() != keys.size()) return false;
    return std::all_of(keys.begin(), keys.end(),
                       [&](const char* key) { return obj.contains(key); });
  };
  std::size_t fi = 0;
  for (const Json& frame : doc["frames"]) {
    const std::string where = "frames[" + std::to_string(fi++) + "]";
    if (!has_exactly(frame, {"t", "nodes", "edges"})) {
      return where + " must hold exactly t, nodes, edges";
    }
    if (!frame["t"].is_number_integer()) return where + ".t must be an int";
    if (!frame["nodes"].is_array() || !frame["edges"].is_array()) {
      return where + " nodes/edges must be arrays";
    }
    for (const Json& node : frame["nodes"]) {
      if (!has_exactly(node,
                       {"id", "x", "y", "community", "presence", "initial"})) {
        return where + " node has wrong fields";
      }
      if (!node["id"].is_string() || !node["x"].is_number() ||
          !node["y"].is_number() || !node["community"].is_number_integer() ||
          !node["presence"].is_number_integer() ||
          !node["initial"].is_boolean()) {
        return where + " node field has wrong type";
      }
      if (node["presence"].get<long long>() < 1) {
        return where + " presence must be >= 1";
      }
    }
    for (const Json& edge : frame["edges"]) {
      if (!has_exactly(edge, {"s", "d", "w"}) || !edge["s"].is_string() ||
          !edge["d"].is_string() || !edge["w"].is_number()) {
        return where + " edge must be {s: str, d: str, w: num}";
      }
    }
  }
  return {};
}

}  // namespace dyntrack
