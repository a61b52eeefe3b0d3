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

#include "core/synth.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "core/error.h"
#include "core/snapshot_io.h"

namespace dyntrack {

namespace fs = std::filesystem;

namespace {

using Rng64 = std::mt19937_64;

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, "invalid synth spec: " + what);
}

std::size_t Portion(double rate, std::size_t of) {
  return static_cast<std::size_t>(std::llround(rate * static_cast<double>(of)));
}

class Generator {
 public:
  explicit Generator(const SynthSpec& spec) : spec_(spec), rng_(spec.seed) {
    double intra_pairs = 0;
    for (int b = 0; b < spec.communities; ++b) {
      const double size = BlockSize(b);
      intra_pairs += size * (size - 1) / 2;
    }
    const double n = spec.nodes;
    const double inter_pairs = n * (n - 1) / 2 - intra_pairs;
    const double in = spec.p_in * intra_pairs;
    const double out = spec.p_out * inter_pairs;
    intra_share_ = in + out > 0 ? in / (in + out) : 1;
  }

  SynthSequence Run() {
    SynthSequence seq;
    SnapshotGraph g(0);
    for (int i = 0; i < spec_.nodes; ++i) {
      const int block = static_cast<int>(
          static_cast<long long>(i) * spec_.communities / spec_.nodes);
      AddNode(seq.dict, g, block, /*wire=*/false);
    }
    for (const auto& [a, _] : g.adjacency()) {
      for (const auto& [b, __] : g.adjacency()) {
        if (!(a < b)) continue;
        const bool same = block_[a] == block_[b];
        if (Chance(same ? spec_.p_in : spec_.p_out)) {
          g.AddEdge(a, b, DrawWeight(same));
        }
      }
    }
    Record(seq, g);
    for (int t = 1; t < spec_.snapshots; ++t) {
      Churn(seq.dict, g);
      g.set_t(t);
      Record(seq, g);
    }
    return seq;
  }

 private:
  double BlockSize(int b) const {
    const long long n = spec_.nodes;
    const long long c = spec_.communities;
    // Nodes i with floor(i * c / n) == b.
    const long long lo = (b * n + c - 1) / c;
    const long long hi = ((b + 1) * n + c - 1) / c;
    return static_cast<double>(hi - lo);
  }

  bool Chance(double p) {
    return p > 0 && std::uniform_real_distribution<double>(0, 1)(rng_) < p;
  }

  Weight DrawWeight(bool intra) {
    const int lo = intra ? spec_.intra_weight_min : spec_.inter_weight_min;
    const int hi = intra ? spec_.intra_weight_max : spec_.inter_weight_max;
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  NodeId AddNode(NodeDictionary& dict, SnapshotGraph& g, int block,
                 bool wire) {
    const NodeId n = dict.Intern("n" + std::to_string(next_name_++));
    std::vector<NodeId> existing = g.Nodes();
    g.AddNode(n);
    block_[n] = block;
    members_[block].push_back(n);
    if (wire) {
      for (NodeId m : existing) {
        const bool same = block_[m] == block;
        if (Chance(same ? spec_.p_in : spec_.p_out)) {
          g.AddEdge(n, m, DrawWeight(same));
        }
      }
    }
    return n;
  }

  template <typename T>
  std::vector<T> Sample(const std::vector<T>& from, std::size_t count) {
    std::vector<T> out;
    std::sample(from.begin(), from.end(), std::back_inserter(out),
                std::min(count, from.size()), rng_);
    return out;
  }

  void Churn(NodeDictionary& dict, SnapshotGraph& g) {
    const ChurnRates& r = spec_.churn;
    const std::size_t node_count = g.node_count();

    for (NodeId n : Sample(g.Nodes(), Portion(r.node_remove, node_count))) {
      g.RemoveNode(n);
      auto& list = members_[block_[n]];
      list.erase(std::find(list.begin(), list.end(), n));
    }
    for (const WeightedEdge& e :
         Sample(g.Edges(), Portion(r.edge_remove, g.edge_count()))) {
      g.RemoveEdge(e.a, e.b);
    }
    std::uniform_int_distribution<int> any_block(0, spec_.communities - 1);
    const std::size_t new_nodes = Portion(r.node_add, node_count);
    for (std::size_t i = 0; i < new_nodes; ++i) {
      AddNode(dict, g, any_block(rng_), /*wire=*/true);
    }

    const std::size_t new_edges = Portion(r.edge_add, g.edge_count());
    const std::vector<NodeId> nodes = g.Nodes();
    std::size_t added = 0;
    for (std::size_t attempt = 0;
         added < new_edges && attempt < 100 * new_edges && nodes.size() > 1;
         ++attempt) {
      const NodeId a = nodes[std::uniform_int_distribution<std::size_t>(
          0, nodes.size() - 1)(rng_)];
      NodeId b;
      if (Chance(intra_share_)) {
        const auto& same = members_[block_[a]];
        b = same[std::uniform_int_distribution<std::size_t>(
            0, same.size() - 1)(rng_)];
      } else {
        b = nodes[std::uniform_int_distribution<std::size_t>(
            0, nodes.size() - 1)(rng_)];
        if (block_[b] == block_[a]) continue;
      }
      if (a == b || g.HasEdge(a, b)) continue;
      g.AddEdge(a, b, DrawWeight(block_[a] == block_[b]));
      ++added;
    }

    for (const WeightedEdge& e :
         Sample(g.Edges(), Portion(r.weight_update, g.edge_count()))) {
      g.SetWeight(e.a, e.b, DrawWeight(block_[e.a] == block_[e.b]));
    }
  }

  void Record(SynthSequence& seq, const SnapshotGraph& g) {
    seq.snapshots.push_back(g);
    std::map<NodeId, int> truth;
    for (const auto& [n, _] : g.adjacency()) truth[n] = block_.at(n);
    seq.truth.push_back(std::move(truth));
  }

  const SynthSpec& spec_;
  Rng64 rng_;
  double intra_share_ = 1;
  std::uint64_t next_name_ = 0;
  std::map<NodeId, int> block_;
  std::map<int, std::vector<NodeId>> members_;
};

}  // namespace

void SynthSpec::Validate() const {
  auto probability = [](double p) { return p >= 0 && p <= 1; };
  if (nodes < 1) Invalid("nodes must be >= 1");
  if (communities < 1 || communities > nodes) {
    Invalid("communities must lie in [1, nodes]");
  }
  if (!probability(p_in) || !probability(p_out)) {
    Invalid("p_in and p_out must lie in [0, 1]");
  }
  if (intra_weight_min < 1 || intra_weight_max < intra_weight_min ||
      inter_weight_min < 1 || inter_weight_max < inter_weight_min) {
    Invalid("weight ranges must be positive integer [min, max]");
  }
  if (snapshots < 1) Invalid("snapshots must be >= 1");
  for (double rate : {churn.node_remove, churn.edge_remove, churn.node_add,
                      churn.edge_add, churn.weight_update}) {
    if (!(rate >= 0) || !std::isfinite(rate)) {
      Invalid("churn rates must be non-negative");
    }
  }
  if (churn.node_remove > 1 || churn.edge_remove > 1) {
    Invalid("removal rates cannot exceed 1");
  }
}

SynthSpec ParseSynthSpec(const std::string& json_text) {
  const nlohmann::json doc =
      nlohmann::json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    Invalid("not a JSON object");
  }
  SynthSpec spec;
  try {
    spec.nodes = doc.value("nodes", spec.nodes);
    spec.communities = doc.value("communities", spec.communities);
    spec.p_in = doc.value("p_in", spec.p_in);
    spec.p_out = doc.value("p_out", spec.p_out);
    spec.snapshots = doc.value("snapshots", spec.snapshots);
    spec.seed = doc.value("seed", spec.seed);
    if (doc.contains("intra_weight")) {
      const auto range = doc["intra_weight"].get<std::vector<int>>();
      if (range.size() != 2) Invalid("intra_weight must be [min, max]");
      spec.intra_weight_min = range[0];
      spec.intra_weight_max = range[1];
    }
    if (doc.contains("inter_weight")) {
      const auto range = doc["inter_weight"].get<std::vector<int>>();
      if (range.size() != 2) Invalid("inter_weight must be [min, max]");
      spec.inter_weight_min = range[0];
      spec.inter_weight_max = range[1];
    }
    if (doc.contains("churn")) {
      const auto& churn = doc["churn"];
      if (churn.is_number()) {
        const double rate = churn.get<double>();
        spec.churn = {rate, rate, rate, rate, rate};
      } else if (churn.is_object()) {
        spec.churn.node_remove = churn.value("node_remove", 0.0);
        spec.churn.edge_remove = churn.value("edge_remove", 0.0);
        spec.churn.node_add = churn.value("node_add", 0.0);
        spec.churn.edge_add = churn.value("edge_add", 0.0);
        spec.churn.weight_update = churn.value("weight_update", 0.0);
      } else {
        Invalid("churn must be a number or an object");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    Invalid(e.what());
  }
  spec.Validate();
  return spec;
}

SynthSpec ReadSynthSpec(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseSynthSpec(text.str());
}

SynthSequence Synthesize(const SynthSpec& spec) {
  spec.Validate();
  return Generator(spec).Run();
}

void WriteSequence(const SynthSequence& seq, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string());
  for (std::size_t t = 0; t < seq.snapshots.size(); ++t) {
    WriteSnapshot(SnapshotPath(dir, static_cast<int>(t)), seq.snapshots[t],
                  seq.dict);
    std::vector<std::pair<std::string, int>> rows;
    for (const auto& [n, block] : seq.truth[t]) {
      rows.emplace_back(seq.dict.Name(n), block);
    }
    std::sort(rows.begin(), rows.end());
    const fs::path truth = dir / ("truth_" + std::to_string(t) + ".csv");
    std::ofstream out(truth, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + truth.string());
    for (const auto& [name, block] : rows) out << name << ',' << block << '\n';
  }
}

}  // namespace dyntrack
