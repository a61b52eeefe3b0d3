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

#include "core/pipeline.h"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>

#include "core/dyci.h"
#include "core/error.h"
#include "core/snapshot_io.h"

namespace dyntrack {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

void PrintAverages(std::ostream& os, const char* label,
                   const SequenceAverages& avg) {
  os << label << " averages over " << avg.snapshots
     << " snapshots: modularity=" << std::setprecision(6) << avg.modularity
     << " communities=" << avg.community_count
     << " elapsed_ms=" << avg.elapsed_ms << '\n';
}

}  // namespace

std::uint64_t GaSeedFor(std::uint64_t seed, int t) {
  // splitmix64 finalizer over (seed, t).
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(t) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RunSummary Run(const RunConfig& cfg) {
  cfg.ga.Validate();
  cfg.layout_mode.Validate();
  const std::vector<fs::path> files = ListSequence(cfg.input_dir);
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create " + cfg.output_dir.string());
  }

  const bool run_dyci = cfg.algorithm != AlgorithmChoice::kGa;
  const bool run_ga = cfg.algorithm != AlgorithmChoice::kDyci;

  NodeDictionary dict;
  std::unique_ptr<DyciTracker> tracker;
  PresenceHistory history;
  std::vector<LayoutFrame> frames;
  Rng layout_rng(cfg.seed);
  RunSummary summary;
  std::vector<SnapshotReport> dyci_reports;
  std::vector<SnapshotReport> ga_reports;

  for (std::size_t i = 0; i < files.size(); ++i) {
    const int t = static_cast<int>(i);
    SnapshotGraph g = ReadSnapshot(files[i], dict, t);
    if (!(g.total_weight() > 0)) {
      throw Error(ErrorCode::kEmptyGraph,
                  files[i].string() + " has no weighted edge");
    }
    history.Observe(g);

    std::optional<Partition> shown;
    if (run_dyci) {
      double elapsed = 0;
      if (!tracker) {
        const auto start = Clock::now();
        tracker = std::make_unique<DyciTracker>(g);
        elapsed = MillisSince(start);
      } else {
        const UpdateSet u = DiffSnapshots(tracker->graph(), g);
        const auto start = Clock::now();
        tracker->Step(u);
        elapsed = MillisSince(start);
      }
      const SnapshotReport r = MakeReport(g, tracker->partition(), elapsed,
                                          Algorithm::kDyci);
      summary.reports.push_back(r);
      dyci_reports.push_back(r);
      WritePartition(cfg.output_dir / ("partition_" + std::to_string(t) + ".csv"),
                     tracker->partition(), dict);
      shown = tracker->partition();
    }
    if (run_ga) {
      GaConfig ga = cfg.ga;
      ga.seed = GaSeedFor(cfg.seed, t);
      const auto start = Clock::now();
      GaResult result = Evolve(g, ga);
      const double elapsed = MillisSince(start);
      const SnapshotReport r =
          MakeReport(g, result.partition, elapsed, Algorithm::kGa);
      summary.reports.push_back(r);
      ga_reports.push_back(r);
      const std::string name =
          (run_dyci ? "ga_partition_" : "partition_") + std::to_string(t) +
          ".csv";
      WritePartition(cfg.output_dir / name, result.partition, dict);
      if (!shown) shown = std::move(result.partition);
    }

    const LayoutFrame* prev = frames.empty() ? nullptr : &frames.back();
    LayoutResult laid = LayoutStep(g, prev, cfg.layout_mode, layout_rng);
    if (!laid.converged && cfg.log) {
      *cfg.log << "warning: layout of snapshot " << t
               << " hit the iteration cap\n";
    }
    frames.push_back(Annotate(std::move(laid.frame), *shown, history));

    if (cfg.log) {
      for (auto it = summary.reports.end() -
                     (run_dyci && run_ga ? 2 : 1);
           it != summary.reports.end(); ++it) {
        *cfg.log << "t=" << it->t << ' ' << AlgorithmLabel(it->algorithm)
                 << " modularity=" << std::setprecision(6) << it->modularity
                 << " communities=" << it->community_count
                 << " elapsed_ms=" << it->elapsed_ms << '\n';
      }
    }
  }

  WriteReports(cfg.output_dir / "reports.csv", summary.reports);
  {
    const fs::path path = cfg.output_dir / "frames.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    out << FramesToJson(frames, dict) << '\n';
  }

  summary.snapshots = files.size();
  summary.dyci = Average(dyci_reports);
  summary.ga = Average(ga_reports);
  if (cfg.log) {
    if (run_dyci) PrintAverages(*cfg.log, "dyci", summary.dyci);
    if (run_ga) PrintAverages(*cfg.log, "ga", summary.ga);
  }
  return summary;
}

}  // namespace dyntrack
