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

#include "core/metrics.h"

#include <map>

#include "core/error.h"

namespace dyntrack {

double Modularity(const SnapshotGraph& g, const Partition& p) {
  const Weight m = g.total_weight();
  if (!(m > 0)) {
    throw Error(ErrorCode::kEmptyGraph, "modularity needs a positive M");
  }
  if (p.node_count() != g.node_count()) {
    throw Error(ErrorCode::kPartitionMismatch,
                "partition does not cover the graph");
  }
  std::map<CommunityId, Weight> intra;
  std::map<CommunityId, Weight> degree;
  for (const auto& [a, nbrs] : g.adjacency()) {
    const CommunityId ca = p.CommunityOf(a);
    Weight& d = degree[ca];
    for (const auto& [b, w] : nbrs) {
      d += w;
      if (a < b && p.CommunityOf(b) == ca) intra[ca] += w;
    }
  }
  double phi = 0;
  for (const auto& [c, d] : degree) {
    const double share = d / (2 * m);
    phi += intra[c] / m - share * share;
  }
  return phi;
}

double ModularityFromCaches(const Partition& p) {
  const Weight m = p.AccountedWeight();
  if (!(m > 0)) {
    throw Error(ErrorCode::kEmptyGraph, "modularity needs a positive M");
  }
  double phi = 0;
  for (CommunityId c : p.Communities()) {
    const Weight iw = p.IntraWeight(c);
    Weight d = 2 * iw;
    for (const auto& [_, link] : p.Adjacent(c)) d += link.weight;
    const double share = d / (2 * m);
    phi += iw / m - share * share;
  }
  return phi;
}

std::string AlgorithmLabel(Algorithm a) {
  return a == Algorithm::kDyci ? "dyci" : "ga";
}

SnapshotReport MakeReport(const SnapshotGraph& g, const Partition& p,
                          double elapsed_ms, Algorithm algorithm) {
  SnapshotReport r;
  r.t = g.t();
  r.algorithm = algorithm;
  r.modularity = Modularity(g, p);
  r.community_count = p.community_count();
  r.elapsed_ms = elapsed_ms;
  return r;
}

SequenceAverages Average(std::span<const SnapshotReport> reports) {
  SequenceAverages avg;
  avg.snapshots = reports.size();
  if (reports.empty()) return avg;
  for (const SnapshotReport& r : reports) {
    avg.modularity += r.modularity;
    avg.community_count += static_cast<double>(r.community_count);
    avg.elapsed_ms += r.elapsed_ms;
  }
  const double n = static_cast<double>(reports.size());
  avg.modularity /= n;
  avg.community_count /= n;
  avg.elapsed_ms /= n;
  return avg;
}

}  // namespace dyntrack
