// Copyright 2026 The kgcr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KGCR_EMBED_EVALUATION_H_
#define KGCR_EMBED_EVALUATION_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "embed/model.h"
#include "embed/training.h"
#include "kg/knowledge_graph.h"

namespace kgcr {

struct EvalReport {
  double mr = 0.0;
  double mrr = 0.0;
  std::map<int, double> hits;  // k -> fraction of queries with rank <= k
  uint64_t n_queries = 0;
  uint64_t candidate_count = 0;
};

inline constexpr int kHitsAt[] = {1, 3, 10};

EvalReport AggregateRanks(std::span<const uint64_t> ranks,
                          uint64_t candidate_count);

// `n` entities sampled without replacement from the name-ordered entity list;
// all entities when n >= entity_count. Returned in ascending name order.
std::vector<EntityId> SampleCandidates(const KnowledgeGraph& kg, size_t n,
                                       uint64_t seed);

// Filtered ranks, two per test triple (subject query, then object query).
// rank = 1 + #{candidate c != true entity : corrupted triple not in `known`
// and score(corrupted) >= score(true)}. Ids are those of `known`; the model
// is re-indexed onto it when its dictionaries differ.
std::vector<uint64_t> RankQueries(const EmbeddingModel& model,
                                  std::span<const Triple> test,
                                  std::span<const EntityId> candidates,
                                  const KnowledgeGraph& known,
                                  size_t threads = 1);

EvalReport Evaluate(const EmbeddingModel& model, std::span<const Triple> test,
                    std::span<const EntityId> candidates,
                    const KnowledgeGraph& known, size_t threads = 1);

struct DataSplit {
  std::vector<Triple> train;
  std::vector<Triple> valid;
  std::vector<Triple> test;
};

// Seeded split of kg's triples; the shuffle runs over name-sorted triples so
// the result does not depend on id assignment.
DataSplit SplitTriples(const KnowledgeGraph& kg, double valid_fraction,
                       double test_fraction, uint64_t seed);

struct SearchSpace {
  std::vector<size_t> batches_count = {50, 100};
  std::vector<size_t> epochs = {50, 100};
  std::vector<size_t> dim = {50, 100, 200};
  std::vector<size_t> negatives = {5, 10, 15};
  std::vector<LossKind> loss = {LossKind::kPairwise, LossKind::kNll};
  std::vector<double> margin = {0.5, 1.0, 2.0};
  // Continuous draw from [min, max] unless an explicit list is given.
  double learning_rate_min = 1e-4;
  double learning_rate_max = 1e-2;
  std::vector<double> learning_rates;

  size_t DiscreteSize() const;
  void Validate() const;
};

struct SearchTrial {
  TrainConfig config;
  EvalReport validation;
};

struct SearchResult {
  EmbeddingModel model;
  TrainConfig config;
  EvalReport validation;
  std::vector<SearchTrial> trials;
  size_t best_trial = 0;
};

struct SearchOptions {
  size_t trials = 10;
  uint64_t seed = 0;
  size_t candidates = 1000;  // validation candidate pool
  size_t threads = 1;        // trials run concurrently
  NormKind norm = NormKind::kL1;
};

// Samples trial configs uniformly (with replacement) from the space, trains
// each on split.train and keeps the highest validation MRR; the earliest
// trial wins ties. The winner is returned as trained, without retraining.
// `kg` supplies the dictionaries and the filter set.
SearchResult RandomSearch(const KnowledgeGraph& kg, const DataSplit& split,
                          ModelKind kind, const SearchSpace& space,
                          const SearchOptions& options);

}  // namespace kgcr

#endif  // KGCR_EMBED_EVALUATION_H_
