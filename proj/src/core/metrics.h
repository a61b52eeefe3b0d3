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

#ifndef DYNTRACK_CORE_METRICS_H_
#define DYNTRACK_CORE_METRICS_H_

#include <cstddef>
#include <span>
#include <string>

#include "core/graph.h"
#include "core/partition.h"

namespace dyntrack {

// Newman modularity of a weighted partition:
//
//   phi = 1/(2M) * sum_i sum_j (w_ij - WD_i WD_j / 2M) delta(c_i, c_j)
//
// summed over ordered pairs including i == j, M being the total edge weight.
// Evaluated per community as sum_c IW_c / M - (D_c / 2M)^2 where D_c is the
// summed weighted degree of c. Throws Error(kEmptyGraph) when M == 0 and
// Error(kPartitionMismatch) when `p` does not cover `g`.
double Modularity(const SnapshotGraph& g, const Partition& p);

// Same value from the partition's IW/INW caches only; D_c is recovered as
// 2 IW_c + sum_h INW_{c,h}.
double ModularityFromCaches(const Partition& p);

enum class Algorithm { kDyci, kGa };

std::string AlgorithmLabel(Algorithm a);

struct SnapshotReport {
  int t = 0;
  Algorithm algorithm = Algorithm::kDyci;
  double modularity = 0;
  std::size_t community_count = 0;
  double elapsed_ms = 0;
};

// Throws like Modularity.
SnapshotReport MakeReport(const SnapshotGraph& g, const Partition& p,
                          double elapsed_ms, Algorithm algorithm);

struct SequenceAverages {
  std::size_t snapshots = 0;
  double modularity = 0;
  double community_count = 0;
  double elapsed_ms = 0;
};

// Unweighted means over the given reports.
SequenceAverages Average(std::span<const SnapshotReport> reports);

}  // namespace dyntrack

#endif  // DYNTRACK_CORE_METRICS_H_
