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

#ifndef DYNTRACK_CORE_PIPELINE_H_
#define DYNTRACK_CORE_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <vector>

#include "core/ga.h"
#include "core/layout.h"
#include "core/metrics.h"

namespace dyntrack {

enum class AlgorithmChoice { kDyci, kGa, kBoth };

struct RunConfig {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  AlgorithmChoice algorithm = AlgorithmChoice::kDyci;
  LayoutMode layout_mode = LayoutMode::Anchored();
  GaConfig ga;
  std::uint64_t seed = 0;
  // Progress and the sequence averages go here when set.
  std::ostream* log = nullptr;
};

struct RunSummary {
  std::size_t snapshots = 0;
  std::vector<SnapshotReport> reports;
  SequenceAverages dyci;
  SequenceAverages ga;
};

// Processes the sequence in order: load, diff against the previous
// snapshot, run Dyci (seed at t = 0, incremental step after) and/or the GA
// from scratch, lay the snapshot out, then write
//
//   partition_<t>.csv     Dyci's partition (the GA's when only it runs)
//   ga_partition_<t>.csv  the GA's partition when both run
//   reports.csv           one row per snapshot and algorithm
//   frames.json           annotated layout frames
//
// Only the detection calls are timed. The GA at snapshot t is seeded from
// (seed, t). Throws Error on malformed input or an inconsistent sequence.
RunSummary Run(const RunConfig& cfg);

// Seed of the GA run for snapshot t.
std::uint64_t GaSeedFor(std::uint64_t seed, int t);

}  // namespace dyntrack

#endif  // DYNTRACK_CORE_PIPELINE_H_
