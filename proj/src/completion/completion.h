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

#ifndef KGCR_COMPLETION_COMPLETION_H_
#define KGCR_COMPLETION_COMPLETION_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "embed/model.h"
#include "kg/knowledge_graph.h"

namespace kgcr {

enum class StrategyKind { kRandom, kMostFrequent, kLeastFrequent, kProbabilistic };

std::string_view StrategyKindName(StrategyKind kind);
StrategyKind ParseStrategyKind(std::string_view name);

// Ordered selection of n entities. Frequency strategies sort by (frequency,
// name); random draws uniformly without replacement; probabilistic draws
// without replacement with weight 1 / frequency (Efraimidis-Spirakis keys).
// Throws kOutOfRange when n exceeds the entity count.
std::vector<EntityId> SelectEntities(const KnowledgeGraph& kg,
                                     StrategyKind strategy, size_t n,
                                     uint64_t seed);

// All (s, r, o) with s, o drawn from `entities` and r from `relations`.
struct CandidateSpace {
  std::vector<EntityId> entities;
  std::vector<RelationId> relations;

  uint64_t size() const {
    return static_cast<uint64_t>(entities.size()) * entities.size() *
           relations.size();
  }
  // Enumerates queries (s, r) in order, then objects in entity order.
  void ForEach(const std::function<void(const Triple&)>& visit) const;
};

std::vector<RelationId> AllRelations(const KnowledgeGraph& kg);

// One query (s, r, ?): ranks `objects` by (score desc, object name asc) and
// returns (rank, object) for those ranked within `cutoff` that are absent
// from `kg`, best first. The model must be aligned with `kg`.
std::vector<std::pair<uint64_t, EntityId>> RankQuery(
    const EmbeddingModel& model, const KnowledgeGraph& kg, EntityId s,
    RelationId r, std::span<const EntityId> objects, uint64_t cutoff);

// For every query (s, r, ?) the candidate objects are ranked by (score desc,
// object name asc); those ranked within the cutoff and absent from `kg` are
// accepted. Returns the accepted triples for every requested cutoff, each
// sorted. One pass serves all cutoffs, so the results nest.
std::map<uint64_t, std::vector<Triple>> RankAndFilter(
    const EmbeddingModel& model, const KnowledgeGraph& kg,
    const CandidateSpace& candidates, std::span<const uint64_t> cutoffs,
    size_t threads = 1);

std::vector<Triple> RankAndFilter(const EmbeddingModel& model,
                                  const KnowledgeGraph& kg,
                                  const CandidateSpace& candidates,
                                  uint64_t cutoff, size_t threads = 1);

struct Extension {
  std::string model;
  std::string strategy;
  uint64_t cutoff = 0;
  uint64_t selection_seed = 0;
  uint64_t model_seed = 0;
  uint64_t selected_entities = 0;
  uint64_t candidate_count = 0;
  uint64_t base_triples = 0;
  std::vector<Triple> added;  // ids of the base KG
};

// base + added, fully re-indexed. Throws kContractViolation when an added
// triple is already in the base.
KnowledgeGraph Extend(const KnowledgeGraph& base, std::span<const Triple> added);

// key=value lines.
std::string FormatExtensionMeta(const Extension& extension);
void WriteExtension(const KnowledgeGraph& base, const Extension& extension,
                    const std::filesystem::path& triples_path,
                    const std::filesystem::path& meta_path);

}  // namespace kgcr

#endif  // KGCR_COMPLETION_COMPLETION_H_
