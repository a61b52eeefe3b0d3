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

// Planted-partition dynamic graph generator.
//
// Snapshot 0 is a planted partition graph: nodes split into equal blocks,
// each pair linked with probability p_in inside a block and p_out across,
// with uniform integer weights. Each later snapshot applies the five churn
// classes in update order, each rate being a fraction of the current node
// or edge count:
//
//   node_remove    nodes dropped with their edges
//   edge_remove    edges dropped
//   node_add       new nodes in a random block, wired like the initial graph
//   edge_add       new edges, intra-block with the same odds as initially
//   weight_update  edges re-drawn from their weight range

#ifndef DYNTRACK_CORE_SYNTH_H_
#define DYNTRACK_CORE_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "core/graph.h"

namespace dyntrack {

struct ChurnRates {
  double node_remove = 0;
  double edge_remove = 0;
  double node_add = 0;
  double edge_add = 0;
  double weight_update = 0;
};

struct SynthSpec {
  int nodes = 100;
  int communities = 4;
  double p_in = 0.3;
  double p_out = 0.01;
  int intra_weight_min = 1;
  int intra_weight_max = 5;
  int inter_weight_min = 1;
  int inter_weight_max = 2;
  int snapshots = 5;
  ChurnRates churn;
  std::uint64_t seed = 1;

  // Throws Error(kInvalidArgument).
  void Validate() const;
};

// Reads the JSON form of a spec, e.g.
//   {"nodes":300,"communities":8,"p_in":0.3,"p_out":0.01,
//    "intra_weight":[1,5],"inter_weight":[1,2],"snapshots":10,
//    "churn":0.05,"seed":7}
// "churn" is either one rate for all five classes or an object with keys
// node_remove, edge_remove, node_add, edge_add, weight_update.
SynthSpec ParseSynthSpec(const std::string& json_text);
SynthSpec ReadSynthSpec(const std::filesystem::path& path);

struct SynthSequence {
  NodeDictionary dict;
  std::vector<SnapshotGraph> snapshots;
  // Planted block of every node present in each snapshot.
  std::vector<std::map<NodeId, int>> truth;
};

SynthSequence Synthesize(const SynthSpec& spec);

// Writes snapshot_<t>.edges and truth_<t>.csv into `dir`, creating it.
void WriteSequence(const SynthSequence& seq, const std::filesystem::path& dir);

}  // namespace dyntrack

#endif  // DYNTRACK_CORE_SYNTH_H_
