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

// Genetic algorithm baseline maximizing modularity on a single snapshot.
//
// Individuals use the locus-based adjacency representation: gene i holds
// either i itself or the index of one of i's neighbours, and the decoded
// communities are the connected components of the links (i, genes[i]).
// Uniform crossover and per-gene re-draws only ever pick alleles that are
// valid for the locus, so every individual stays feasible.

#ifndef DYNTRACK_CORE_GA_H_
#define DYNTRACK_CORE_GA_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "core/graph.h"
#include "core/partition.h"

namespace dyntrack {

using Rng = std::mt19937_64;

struct GaConfig {
  int population_size = 100;
  double crossover_prob = 0.9;
  double mutation_prob = 0.1;
  double elite_fraction = 0.20;
  int generations = 50;
  std::uint64_t seed = 0;

  // Throws Error(kInvalidArgument).
  void Validate() const;
};

// Compressed adjacency of a snapshot. Locus i is the i-th node of the
// snapshot in ascending NodeId order.
class GaGraph {
 public:
  explicit GaGraph(const SnapshotGraph& g);

  std::size_t size() const { return nodes_.size(); }
  NodeId node(std::size_t i) const { return nodes_[i]; }
  // Throws Error(kUnknownNode).
  std::size_t Locus(NodeId n) const;
  std::span<const std::uint32_t> Neighbors(std::size_t i) const {
    return {targets_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::span<const Weight> Weights(std::size_t i) const {
    return {weights_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  Weight Degree(std::size_t i) const { return degrees_[i]; }
  Weight total_weight() const { return total_weight_; }

 private:
  std::vector<NodeId> nodes_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> targets_;
  std::vector<Weight> weights_;
  std::vector<Weight> degrees_;
  Weight total_weight_ = 0;
};

struct Chromosome {
  std::vector<std::uint32_t> genes;

  bool operator==(const Chromosome&) const = default;
};

bool IsFeasible(const Chromosome& ch, const GaGraph& g);

// Component label per locus, numbered 0.. in order of first appearance.
// Linear in the chromosome length (union-find). Throws
// Error(kInfeasibleChromosome).
std::vector<std::uint32_t> DecodeLabels(const Chromosome& ch,
                                        const GaGraph& g);
Partition Decode(const Chromosome& ch, const SnapshotGraph& g);

// A chromosome decoding to `p`: each community becomes a BFS tree rooted at
// its smallest node. Throws Error(kInvalidArgument) when a community is not
// connected in `g`, since such a partition has no LAR encoding.
Chromosome Encode(const Partition& p, const SnapshotGraph& g);

// Modularity of the decoded partition.
double Fitness(const Chromosome& ch, const GaGraph& g);

Chromosome RandomChromosome(const GaGraph& g, Rng& rng);

// With probability `prob` each gene is drawn from p1 or p2 with even odds;
// otherwise the child is a copy of p1. Throws Error(kLengthMismatch).
Chromosome UniformCrossover(const Chromosome& p1, const Chromosome& p2,
                            double prob, Rng& rng);

// Each gene is re-drawn uniformly from {i} plus neighbours(i) with
// probability `prob`.
Chromosome Mutate(const Chromosome& ch, const GaGraph& g, double prob,
                  Rng& rng);

struct GaResult {
  Partition partition;
  double fitness = 0;
  Chromosome best;
  // Best fitness after initialization, then after each generation.
  std::vector<double> best_per_generation;
};

// Steady-state evolution: each generation runs population_size
// reproduction events (two parents drawn uniformly from the elite slice,
// crossover, mutation, child inserted, weakest dropped). Throws
// Error(kEmptyGraph) for a graph without nodes or without weight.
GaResult Evolve(const SnapshotGraph& g, const GaConfig& cfg);

}  // namespace dyntrack

#endif  // DYNTRACK_CORE_GA_H_
