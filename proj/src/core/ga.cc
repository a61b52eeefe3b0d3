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

#include "core/ga.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "core/error.h"

namespace dyntrack {

namespace {

std::uint32_t Find(std::vector<std::uint32_t>& parent, std::uint32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Number of alleles for locus i: itself plus its neighbours.
std::uint32_t DrawAllele(const GaGraph& g, std::size_t i, Rng& rng) {
  auto nbrs = g.Neighbors(i);
  std::uniform_int_distribution<std::size_t> pick(0, nbrs.size());
  std::size_t k = pick(rng);
  return k == 0 ? static_cast<std::uint32_t>(i) : nbrs[k - 1];
}

struct Individual {
  Chromosome chromosome;
  double fitness;
};

}  // namespace

void GaConfig::Validate() const {
  auto probability = [](double p) { return p >= 0 && p <= 1; };
  if (population_size < 2) {
    throw Error(ErrorCode::kInvalidArgument, "population size must be >= 2");
  }
  if (generations < 0) {
    throw Error(ErrorCode::kInvalidArgument, "generations must be >= 0");
  }
  if (!probability(crossover_prob) || !probability(mutation_prob) ||
      !probability(elite_fraction)) {
    throw Error(ErrorCode::kInvalidArgument,
                "probabilities must lie in [0, 1]");
  }
}

GaGraph::GaGraph(const SnapshotGraph& g) {
  nodes_ = g.Nodes();
  offsets_.reserve(nodes_.size() + 1);
  offsets_.push_back(0);
  degrees_.reserve(nodes_.size());
  for (NodeId n : nodes_) {
    Weight degree = 0;
    for (const auto& [m, w] : g.NeighborsOf(n)) {
      targets_.push_back(static_cast<std::uint32_t>(Locus(m)));
      weights_.push_back(w);
      degree += w;
    }
    offsets_.push_back(targets_.size());
    degrees_.push_back(degree);
  }
  total_weight_ = g.total_weight();
}

std::size_t GaGraph::Locus(NodeId n) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), n);
  if (it == nodes_.end() || *it != n) {
    throw Error(ErrorCode::kUnknownNode,
                "node #" + std::to_string(n.value) + " is not in the graph");
  }
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool IsFeasible(const Chromosome& ch, const GaGraph& g) {
  if (ch.genes.size() != g.size()) return false;
  for (std::size_t i = 0; i < ch.genes.size(); ++i) {
    const std::uint32_t allele = ch.genes[i];
    if (allele == i) continue;
    auto nbrs = g.Neighbors(i);
    if (std::find(nbrs.begin(), nbrs.end(), allele) == nbrs.end()) {
      return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> DecodeLabels(const Chromosome& ch,
                                        const GaGraph& g) {
  if (!IsFeasible(ch, g)) {
    throw Error(ErrorCode::kInfeasibleChromosome,
                "allele outside the locus neighbourhood");
  }
  const std::size_t n = ch.genes.size();
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t a = Find(parent, static_cast<std::uint32_t>(i));
    std::uint32_t b = Find(parent, ch.genes[i]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  constexpr std::uint32_t kUnset = ~0u;
  std::vector<std::uint32_t> root_label(n, kUnset);
  std::vector<std::uint32_t> labels(n);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t r = Find(parent, static_cast<std::uint32_t>(i));
    if (root_label[r] == kUnset) root_label[r] = next++;
    labels[i] = root_label[r];
  }
  return labels;
}

Partition Decode(const Chromosome& ch, const SnapshotGraph& g) {
  const GaGraph compact(g);
  const auto labels = DecodeLabels(ch, compact);
  std::map<NodeId, CommunityId> assignment;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    assignment[compact.node(i)] = CommunityId{labels[i]};
  }
  return Partition::FromAssignment(g, assignment);
}

Chromosome Encode(const Partition& p, const SnapshotGraph& g) {
  const GaGraph compact(g);
  Chromosome ch;
  ch.genes.assign(compact.size(), 0);
  std::vector<bool> seen(compact.size(), false);
  for (CommunityId c : p.Communities()) {
    const auto& members = p.Members(c);
    const std::size_t root = compact.Locus(*members.begin());
    ch.genes[root] = static_cast<std::uint32_t>(root);
    seen[root] = true;
    std::vector<std::size_t> queue{root};
    std::size_t reached = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t i = queue[head];
      for (std::uint32_t j : compact.Neighbors(i)) {
        if (seen[j] || p.CommunityOf(compact.node(j)) != c) continue;
        seen[j] = true;
        ch.genes[j] = static_cast<std::uint32_t>(i);
        queue.push_back(j);
        ++reached;
      }
    }
    if (reached != members.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "community " + std::to_string(c.value) +
                      " is not connected");
    }
  }
  return ch;
}

double Fitness(const Chromosome& ch, const GaGraph& g) {
  const Weight m = g.total_weight();
  if (!(m > 0)) {
    throw Error(ErrorCode::kEmptyGraph, "modularity needs a positive M");
  }
  const auto labels = DecodeLabels(ch, g);
  const std::uint32_t k =
      labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<Weight> intra(k, 0);
  std::vector<Weight> degree(k, 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::uint32_t li = labels[i];
    degree[li] += g.Degree(i);
    auto nbrs = g.Neighbors(i);
    auto ws = g.Weights(i);
    for (std::size_t e = 0; e < nbrs.size(); ++e) {
      if (nbrs[e] > i && labels[nbrs[e]] == li) intra[li] += ws[e];
    }
  }
  double phi = 0;
  for (std::uint32_t c = 0; c < k; ++c) {
    const double share = degree[c] / (2 * m);
    phi += intra[c] / m - share * share;
  }
  return phi;
}

Chromosome RandomChromosome(const GaGraph& g, Rng& rng) {
  Chromosome ch;
  ch.genes.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) ch.genes[i] = DrawAllele(g, i, rng);
  return ch;
}

Chromosome UniformCrossover(const Chromosome& p1, const Chromosome& p2,
                            double prob, Rng& rng) {
  if (p1.genes.size() != p2.genes.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "parents have different chromosome lengths");
  }
  std::bernoulli_distribution apply(prob);
  if (!apply(rng)) return p1;
  std::bernoulli_distribution coin(0.5);
  Chromosome child;
  child.genes.resize(p1.genes.size());
  for (std::size_t i = 0; i < p1.genes.size(); ++i) {
    child.genes[i] = coin(rng) ? p1.genes[i] : p2.genes[i];
  }
  return child;
}

Chromosome Mutate(const Chromosome& ch, const GaGraph& g, double prob,
                  Rng& rng) {
  Chromosome out = ch;
  if (prob <= 0) return out;
  std::bernoulli_distribution flip(prob);
  for (std::size_t i = 0; i < out.genes.size(); ++i) {
    if (flip(rng)) out.genes[i] = DrawAllele(g, i, rng);
  }
  return out;
}

GaResult Evolve(const SnapshotGraph& g, const GaConfig& cfg) {
  cfg.Validate();
  if (g.node_count() == 0) {
    throw Error(ErrorCode::kEmptyGraph, "cannot evolve on an empty graph");
  }
  const GaGraph compact(g);
  Rng rng(cfg.seed);

  const auto by_fitness = [](const Individual& a, const Individual& b) {
    return a.fitness > b.fitness;
  };
  std::vector<Individual> population;
  population.reserve(static_cast<std::size_t>(cfg.population_size) + 1);
  for (int i = 0; i < cfg.population_size; ++i) {
    Chromosome ch = RandomChromosome(compact, rng);
    const double f = Fitness(ch, compact);
    population.push_back({std::move(ch), f});
  }
  std::stable_sort(population.begin(), population.end(), by_fitness);

  const std::size_t elite = std::clamp<std::size_t>(
      static_cast<std::size_t>(
          std::lround(cfg.elite_fraction * cfg.population_size)),
      1, population.size());
  std::uniform_int_distribution<std::size_t> pick_parent(0, elite - 1);

  GaResult result;
  result.best_per_generation.push_back(population.front().fitness);
  for (int gen = 0; gen < cfg.generations; ++gen) {
    for (int event = 0; event < cfg.population_size; ++event) {
      const Chromosome& p1 = population[pick_parent(rng)].chromosome;
      const Chromosome& p2 = population[pick_parent(rng)].chromosome;
      Chromosome child = Mutate(
          UniformCrossover(p1, p2, cfg.crossover_prob, rng), compact,
          cfg.mutation_prob, rng);
      Individual ind{std::move(child), 0};
      ind.fitness = Fitness(ind.chromosome, compact);
      // Insert after equals so that older individuals keep their rank.
      auto at = std::upper_bound(population.begin(), population.end(), ind,
                                 by_fitness);
      population.insert(at, std::move(ind));
      population.pop_back();
    }
    result.best_per_generation.push_back(population.front().fitness);
  }

  result.best = population.front().chromosome;
  result.fitness = population.front().fitness;
  result.partition = Decode(result.best, g);
  return result;
}

}  // namespace dyntrack
