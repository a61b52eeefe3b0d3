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

#include "core/snapshot_io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>

#include "core/error.h"

namespace dyntrack {

namespace fs = std::filesystem;

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(Trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void ParseError(const std::string& source, int line,
                             const std::string& what) {
  throw Error(ErrorCode::kParse,
              source + ":" + std::to_string(line) + ": " + what);
}

std::ofstream OpenForWrite(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
  return out;
}

}  // namespace

SnapshotGraph ParseSnapshot(std::istream& in, NodeDictionary& dict, int t,
                            const std::string& source) {
  // Accumulate first: directed retweets in both directions and repeated
  // lines fold into one undirected weight.
  std::map<Edge, Weight> weights;
  std::vector<NodeId> nodes;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = SplitCommas(line);
    if (fields.size() != 3) {
      ParseError(source, line_no, "expected `src,dst,weight`");
    }
    if (fields[0].empty()) ParseError(source, line_no, "empty source id");
    const NodeId a = dict.Intern(fields[0]);
    nodes.push_back(a);
    if (fields[1].empty() && fields[2].empty()) continue;
    if (fields[1].empty() || fields[2].empty()) {
      ParseError(source, line_no, "edge needs both a target and a weight");
    }
    long long w = 0;
    const auto* end = fields[2].data() + fields[2].size();
    auto [ptr, ec] = std::from_chars(fields[2].data(), end, w);
    if (ec != std::errc() || ptr != end || w <= 0) {
      ParseError(source, line_no,
                 "weight must be a positive integer, got `" +
                     std::string(fields[2]) + "`");
    }
    const NodeId b = dict.Intern(fields[1]);
    nodes.push_back(b);
    // A self-retweet names the node but carries no edge.
    if (a == b) continue;
    weights[Canonical(a, b)] += static_cast<Weight>(w);
  }
  SnapshotGraph g(t);
  for (NodeId n : nodes) g.AddNode(n);
  for (const auto& [e, w] : weights) g.AddEdge(e.a, e.b, w);
  return g;
}

SnapshotGraph ReadSnapshot(const fs::path& path, NodeDictionary& dict, int t) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return ParseSnapshot(in, dict, t, path.string());
}

void WriteSnapshot(const fs::path& path, const SnapshotGraph& g,
                   const NodeDictionary& dict) {
  std::ofstream out = OpenForWrite(path);
  out << "# snapshot " << g.t() << ": " << g.node_count() << " nodes, "
      << g.edge_count() << " edges\n";
  for (const WeightedEdge& e : g.Edges()) {
    out << dict.Name(e.a) << ',' << dict.Name(e.b) << ','
        << static_cast<long long>(e.w) << '\n';
  }
  for (const auto& [n, nbrs] : g.adjacency()) {
    if (nbrs.empty()) out << dict.Name(n) << ",,\n";
  }
}

fs::path SnapshotPath(const fs::path& dir, int t) {
  return dir / ("snapshot_" + std::to_string(t) + ".edges");
}

std::vector<fs::path> ListSequence(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIo, "not a directory: " + dir.string());
  }
  static const std::regex kName(R"(snapshot_(0|[1-9][0-9]*)\.edges)");
  std::map<int, fs::path> found;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (!std::regex_match(name, m, kName)) continue;
    found[std::stoi(m[1].str())] = entry.path();
  }
  if (!found.contains(0)) {
    throw Error(ErrorCode::kInconsistentSequence,
                "missing snapshot_0.edges in " + dir.string());
  }
  std::vector<fs::path> out;
  for (const auto& [t, p] : found) {
    if (t != static_cast<int>(out.size())) {
      throw Error(ErrorCode::kInconsistentSequence,
                  "snapshot indices are not contiguous: missing snapshot_" +
                      std::to_string(out.size()) + ".edges");
    }
    out.push_back(p);
  }
  return out;
}

void WritePartition(const fs::path& path, const Partition& p,
                    const NodeDictionary& dict) {
  std::vector<std::pair<std::string, std::uint32_t>> rows;
  rows.reserve(p.node_count());
  for (const auto& [n, c] : p.membership()) rows.emplace_back(dict.Name(n), c.value);
  std::sort(rows.begin(), rows.end());
  std::ofstream out = OpenForWrite(path);
  for (const auto& [name, c] : rows) out << name << ',' << c << '\n';
}

std::map<std::string, std::uint32_t> ReadPartition(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::map<std::string, std::uint32_t> out;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = SplitCommas(line);
    std::uint32_t c = 0;
    bool ok = fields.size() == 2 && !fields[0].empty();
    if (ok) {
      const char* end = fields[1].data() + fields[1].size();
      auto [ptr, ec] = std::from_chars(fields[1].data(), end, c);
      ok = ec == std::errc() && ptr == end;
    }
    if (!ok) {
      ParseError(path.string(), line_no, "expected `nodeid,communityid`");
    }
    out[std::string(fields[0])] = c;
  }
  return out;
}

void WriteReports(const fs::path& path,
                  std::span<const SnapshotReport> reports) {
  std::ofstream out = OpenForWrite(path);
  out << "t,algorithm,modularity,communities,elapsed_ms\n";
  for (const SnapshotReport& r : reports) {
    out << r.t << ',' << AlgorithmLabel(r.algorithm) << ','
        << std::setprecision(12) << r.modularity << ',' << r.community_count
        << ',' << std::fixed << std::setprecision(3) << r.elapsed_ms << '\n'
        << std::defaultfloat;
  }
}

}  // namespace dyntrack
