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

#include "completion/completion.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "util/error.h"
#include "util/files.h"
#include "util/parallel.h"
#include "util/random.h"
#include "util/text.h"

namespace kgcr {

std::string_view StrategyKindName(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kRandom:
      return "random";
    case StrategyKind::kMostFrequent:
      return "most_frequent";
    case StrategyKind::kLeastFrequent:
      return "least_frequent";
    case StrategyKind::kProbabilistic:
      return "probabilistic";
  }
  return "?";
}

StrategyKind ParseStrategyKind(std::string_view name) {
  const std::string lower = ToLower(Trim(name));
  if (lower == "random") return StrategyKind::kRandom;
  if (lower == "most_frequent") return StrategyKind::kMostFrequent;
  if (lower == "least_frequent") return StrategyKind::kLeastFrequent;
  if (lower == "probabilistic") return StrategyKind::kProbabilistic;
  Fail(ErrorCode::kInvalidArgument, "unknown strategy '" + std::string(name) + "'");
}

std::vector<EntityId> SelectEntities(const KnowledgeGraph& kg,
                                     StrategyKind strategy, size_t n,
                                     uint64_t seed) {
  if (n > kg.entity_count()) {
    Fail(ErrorCode::kOutOfRange,
         "cannot select " + std::to_string(n) + " of " +
             std::to_string(kg.entity_count()) + " entities");
  }
  const auto& rank = kg.EntityNameRank();
  const auto freq = kg.EntityFrequencies();
  std::vector<EntityId> order(kg.entity_count());
  for (EntityId e = 0; e < kg.entity_count(); ++e) order[rank[e]] = e;

  switch (strategy) {
    case StrategyKind::kMostFrequent:
    case StrategyKind::kLeastFrequent: {
      const bool most = strategy == StrategyKind::kMostFrequent;
      std::stable_sort(order.begin(), order.end(), [&](EntityId a, EntityId b) {
        return most ? freq[a] > freq[b] : freq[a] < freq[b];
      });
      order.resize(n);
      return order;
    }
    case StrategyKind::kRandom: {
      Rng rng(seed);
      for (size_t i = 0; i < n; ++i) {
        std::swap(order[i], order[i + rng.Below(order.size() - i)]);
      }
      order.resize(n);
      return order;
    }
    case StrategyKind::kProbabilistic: {
      // key = u^(1/w) with w = 1/freq, compared in log space: freq * log(u).
      Rng rng(seed);
      std::vector<std::pair<double, EntityId>> keyed;
      keyed.reserve(order.size());
      for (EntityId e : order) {
        double u = rng.Uniform();
        while (u == 0.0) u = rng.Uniform();
        const double f = static_cast<double>(std::max<uint64_t>(freq[e], 1));
        keyed.emplace_back(f * std::log(u), e);
      }
      std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        return a.first > b.first;
      });
      std::vector<EntityId> out;
      out.reserve(n);
      for (size_t i = 0; i < n; ++i) out.push_back(keyed[i].second);
      return out;
    }
  }
  return {};
}

void CandidateSpace::ForEach(
    const std::function<void(const Triple&)>& visit) const {
  for (EntityId s : entities) {
    for (RelationId r : relations) {
      for (EntityId o : entities) visit(Triple{s, r, o});
    }
  }
}

std::vector<RelationId> AllRelations(const KnowledgeGraph& kg) {
  std::vector<RelationId> out;
  for (RelationId r = 0; r < kg.relation_count(); ++r) {
    if (kg.RelationSize(r) > 0) out.push_back(r);
  }
  return out;
}

std::vector<std::pair<uint64_t, EntityId>> RankQuery(
    const EmbeddingModel& model, const KnowledgeGraph& kg, EntityId s,
    RelationId r, std::span<const EntityId> objects, uint64_t cutoff) {
  const auto& rank = kg.EntityNameRank();
  std::vector<std::pair<double, EntityId>> scored;
  scored.reserve(objects.size());
  for (EntityId o : objects) scored.emplace_back(model.ScoreUnchecked(s, r, o), o);
  const size_t top = std::min<size_t>(cutoff, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + top, scored.end(),
                    [&](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return rank[a.second] < rank[b.second];
                    });
  std::vector<std::pair<uint64_t, EntityId>> out;
  for (size_t i = 0; i < top; ++i) {
    if (!kg.Contains(s, r, scored[i].second)) out.emplace_back(i + 1, scored[i].second);
  }
  return out;
}

std::map<uint64_t, std::vector<Triple>> RankAndFilter(
    const EmbeddingModel& model, const KnowledgeGraph& kg,
    const CandidateSpace& candidates, std::span<const uint64_t> cutoffs,
    size_t threads) {
  std::map<uint64_t, std::vector<Triple>> accepted;
  uint64_t max_cutoff = 0;
  for (uint64_t c : cutoffs) {
    if (c == 0) Fail(ErrorCode::kInvalidArgument, "rank cutoff must be >= 1");
    accepted[c];
    max_cutoff = std::max(max_cutoff, c);
  }
  if (accepted.empty()) return accepted;

  EmbeddingModel reindexed;
  const EmbeddingModel* m = &model;
  if (!model.AlignedWith(kg)) {
    reindexed = model.Reindexed(kg);
    m = &reindexed;
  }
  const size_t n_rel = candidates.relations.size();
  const size_t n_queries = candidates.entities.size() * n_rel;

  std::vector<std::vector<std::pair<uint64_t, EntityId>>> per_query(n_queries);
  ParallelFor(n_queries, threads, [&](size_t q) {
    per_query[q] = RankQuery(*m, kg, candidates.entities[q / n_rel],
                             candidates.relations[q % n_rel],
                             candidates.entities, max_cutoff);
  });

  for (size_t q = 0; q < n_queries; ++q) {
    const EntityId s = candidates.entities[q / n_rel];
    const RelationId r = candidates.relations[q % n_rel];
    for (const auto& [position, o] : per_query[q]) {
      for (auto& [cutoff, triples] : accepted) {
        if (position <= cutoff) triples.push_back(Triple{s, r, o});
      }
    }
  }
  for (auto& [cutoff, triples] : accepted) {
    std::sort(triples.begin(), triples.end());
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  }
  return accepted;
}

std::vector<Triple> RankAndFilter(const EmbeddingModel& model,
                                  const KnowledgeGraph& kg,
                                  const CandidateSpace& candidates,
                                  uint64_t cutoff, size_t threads) {
  const uint64_t cutoffs[] = {cutoff};
  return RankAndFilter(model, kg, candidates, cutoffs, threads)[cutoff];
}

KnowledgeGraph Extend(const KnowledgeGraph& base, std::span<const Triple> added) {
  for (const Triple& t : added) {
    if (t.subject >= base.entity_count() || t.object >= base.entity_count() ||
        t.relation >= base.relation_count()) {
      Fail(ErrorCode::kNotFound, "added triple refers to an unknown id");
    }
    if (base.Contains(t)) {
      Fail(ErrorCode::kContractViolation,
           "added triple already in the base KG: " + base.EntityName(t.subject) +
               " " + base.RelationName(t.relation) + " " +
               base.EntityName(t.object));
    }
  }
  return base.WithTriples(added);
}

std::string FormatExtensionMeta(const Extension& e) {
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out.append(key).append("=").append(value).append("\n");
  };
  line("model", e.model);
  line("strategy", e.strategy);
  line("cutoff", std::to_string(e.cutoff));
  line("selection_seed", std::to_string(e.selection_seed));
  line("model_seed", std::to_string(e.model_seed));
  line("selected_entities", std::to_string(e.selected_entities));
  line("candidates", std::to_string(e.candidate_count));
  line("base_triples", std::to_string(e.base_triples));
  line("added_triples", std::to_string(e.added.size()));
  return out;
}

void WriteExtension(const KnowledgeGraph& base, const Extension& extension,
                    const std::filesystem::path& triples_path,
                    const std::filesystem::path& meta_path) {
  WriteFile(triples_path, FormatTsv(base, extension.added));
  WriteFile(meta_path, FormatExtensionMeta(extension));
}

}  // namespace kgcr
