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

// Text formats on disk.
//
//   snapshot_<t>.edges   one edge per line `src,dst,weight` (positive
//                        integer weight), `#` comments, `id,,` for an
//                        isolated node. Both directions of a retweet pair
//                        and repeated lines add up into one undirected edge.
//   partition_<t>.csv    `nodeid,communityid`, sorted by node id.
//   reports.csv          `t,algorithm,modularity,communities,elapsed_ms`.

#ifndef DYNTRACK_CORE_SNAPSHOT_IO_H_
#define DYNTRACK_CORE_SNAPSHOT_IO_H_

#include <filesystem>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "core/graph.h"
#include "core/metrics.h"
#include "core/partition.h"

namespace dyntrack {

// Throws Error(kParse) with the line number on malformed input.
SnapshotGraph ParseSnapshot(std::istream& in, NodeDictionary& dict, int t,
                            const std::string& source = "<input>");
// Throws Error(kIo) when the file cannot be opened.
SnapshotGraph ReadSnapshot(const std::filesystem::path& path,
                           NodeDictionary& dict, int t);
void WriteSnapshot(const std::filesystem::path& path, const SnapshotGraph& g,
                   const NodeDictionary& dict);

std::filesystem::path SnapshotPath(const std::filesystem::path& dir, int t);

// Snapshot files of a sequence directory, index t at position t. Throws
// Error(kInconsistentSequence) if snapshot_0 is missing or the indices
// have a gap.
std::vector<std::filesystem::path> ListSequence(
    const std::filesystem::path& dir);

void WritePartition(const std::filesystem::path& path, const Partition& p,
                    const NodeDictionary& dict);
// Node id to community label.
std::map<std::string, std::uint32_t> ReadPartition(
    const std::filesystem::path& path);

void WriteReports(const std::filesystem::path& path,
                  std::span<const SnapshotReport> reports);

}  // namespace dyntrack

#endif  // DYNTRACK_CORE_SNAPSHOT_IO_H_
