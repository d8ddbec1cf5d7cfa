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

#include "embed/evaluation.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "util/error.h"
#include "util/parallel.h"
#include "util/random.h"

namespace kgcr {
namespace {

template <typename T>
const T& Pick(const std::vector<T>& values, Rng& rng) {
  return values[rng.Below(values.size())];
}

}  // namespace

EvalReport AggregateRanks(std::span<const uint64_t> ranks,
                          uint64_t candidate_count) {
  EvalReport report;
  report.n_queries = ranks.size();
  report.candidate_count = candidate_count;
  for (int k : kHitsAt) report.hits[k] = 0.0;
  if (ranks.empty()) return report;
  double sum = 0.0;
  double reciprocal = 0.0;
  for (uint64_t r : ranks) {
    sum += static_cast<double>(r);
    reciprocal += 1.0 / static_cast<double>(r);
    for (int k : kHitsAt) {
      if (r <= static_cast<uint64_t>(k)) report.hits[k] += 1.0;
    }
  }
  const double n = static_cast<double>(ranks.size());
  report.mr = sum / n;
  report.mrr = reciprocal / n;
  for (auto& [k, v] : report.hits) v /= n;
  return report;
}

std::vector<EntityId> SampleCandidates(const KnowledgeGraph& kg, size_t n,
                                       uint64_t seed) {
  std::vector<EntityId> by_name(kg.entity_count());
  const auto& rank = kg.EntityNameRank();
  for (EntityId e = 0; e < kg.entity_count(); ++e) by_name[rank[e]] = e;
  if (n < by_name.size()) {
    Rng rng(seed);
    for (size_t i = 0; i < n; ++i) {
      std::swap(by_name[i], by_name[i + rng.Below(by_name.size() - i)]);
    }
    by_name.resize(n);
    std::sort(by_name.begin(), by_name.end(),
              [&](EntityId a, EntityId b) { return rank[a] < rank[b]; });
  }
  return by_name;
}

std::vector<uint64_t> RankQueries(const EmbeddingModel& model,
                                  std::span<const Triple> test,
                                  std::span<const EntityId> candidates,
                                  const KnowledgeGraph& known, size_t threads) {
  if (candidates.empty()) {
    Fail(ErrorCode::kInvalidArgument, "candidate set is empty");
  }
  EmbeddingModel reindexed;
  const EmbeddingModel* m = &model;
  if (!model.AlignedWith(known)) {
    reindexed = model.Reindexed(known);
    m = &reindexed;
  }
  for (const Triple& t : test) {
    if (t.subject >= known.entity_count() || t.object >= known.entity_count() ||
        t.relation >= known.relation_count()) {
      Fail(ErrorCode::kNotFound, "test triple refers to an unknown id");
    }
  }
  for (EntityId c : candidates) {
    if (c >= known.entity_count()) {
      Fail(ErrorCode::kNotFound, "candidate refers to an unknown entity");
    }
  }

  std::vector<uint64_t> ranks(2 * test.size());
  ParallelFor(test.size(), threads, [&](size_t i) {
    const Triple& t = test[i];
    const double truth = m->ScoreUnchecked(t.subject, t.relation, t.object);
    uint64_t above_s = 0;
    uint64_t above_o = 0;
    for (EntityId c : candidates) {
      if (c != t.subject && !known.Contains(c, t.relation, t.object) &&
          m->ScoreUnchecked(c, t.relation, t.object) >= truth) {
        ++above_s;
      }
      if (c != t.object && !known.Contains(t.subject, t.relation, c) &&
          m->ScoreUnchecked(t.subject, t.relation, c) >= truth) {
        ++above_o;
      }
    }
    ranks[2 * i] = 1 + above_s;
    ranks[2 * i + 1] = 1 + above_o;
  });
  return ranks;
}

EvalReport Evaluate(const EmbeddingModel& model, std::span<const Triple> test,
                    std::span<const EntityId> candidates,
                    const KnowledgeGraph& known, size_t threads) {
  const auto ranks = RankQueries(model, test, candidates, known, threads);
  return AggregateRanks(ranks, candidates.size());
}

DataSplit SplitTriples(const KnowledgeGraph& kg, double valid_fraction,
                       double test_fraction, uint64_t seed) {
  if (!(valid_fraction >= 0.0) || !(test_fraction >= 0.0) ||
      valid_fraction + test_fraction >= 1.0) {
    Fail(ErrorCode::kInvalidArgument,
         "split fractions must be >= 0 and sum to less than 1");
  }
  const auto& rank = kg.EntityNameRank();
  std::vector<Triple> all(kg.triples().begin(), kg.triples().end());
  auto key = [&](const Triple& t) {
    return std::make_tuple(rank[t.subject], std::cref(kg.RelationName(t.relation)),
                           rank[t.object]);
  };
  std::sort(all.begin(), all.end(),
            [&](const Triple& a, const Triple& b) { return key(a) < key(b); });
  Rng rng(seed);
  rng.Shuffle(std::span<Triple>(all));
  const auto n = static_cast<double>(all.size());
  const auto n_valid = static_cast<size_t>(std::floor(n * valid_fraction));
  const auto n_test = static_cast<size_t>(std::floor(n * test_fraction));
  DataSplit split;
  split.valid.assign(all.begin(), all.begin() + n_valid);
  split.test.assign(all.begin() + n_valid, all.begin() + n_valid + n_test);
  split.train.assign(all.begin() + n_valid + n_test, all.end());
  return split;
}

size_t SearchSpace::DiscreteSize() const {
  return batches_count.size() * epochs.size() * dim.size() * negatives.size() *
         loss.size() * margin.size() *
         std::max<size_t>(1, learning_rates.size());
}

void SearchSpace::Validate() const {
  if (batches_count.empty() || epochs.empty() || dim.empty() ||
      negatives.empty() || loss.empty() || margin.empty()) {
    Fail(ErrorCode::kInvalidArgument, "every search dimension needs a value");
  }
  if (learning_rates.empty() &&
      !(learning_rate_min >= 0.0 && learning_rate_min <= learning_rate_max)) {
    Fail(ErrorCode::kInvalidArgument, "invalid learning rate range");
  }
}

SearchResult RandomSearch(const KnowledgeGraph& kg, const DataSplit& split,
                          ModelKind kind, const SearchSpace& space,
                          const SearchOptions& options) {
  if (options.trials == 0) {
    Fail(ErrorCode::kInvalidArgument, "random search needs at least one trial");
  }
  space.Validate();
  const auto candidates =
      SampleCandidates(kg, options.candidates, HashCombine(options.seed, 1));

  SearchResult result;
  if (kind == ModelKind::kRandomBaseline) {
    result.config.seed = options.seed;
    result.config.norm = options.norm;
    result.model = Train(kg, split.train, kind, result.config);
    result.validation = Evaluate(result.model, split.valid, candidates, kg);
    result.trials.push_back({result.config, result.validation});
    return result;
  }

  Rng rng(options.seed);
  std::vector<TrainConfig> configs(options.trials);
  for (size_t i = 0; i < options.trials; ++i) {
    TrainConfig& c = configs[i];
    c.batches_count = Pick(space.batches_count, rng);
    c.epochs = Pick(space.epochs, rng);
    c.dim = Pick(space.dim, rng);
    c.negatives = Pick(space.negatives, rng);
    c.loss = Pick(space.loss, rng);
    c.margin = Pick(space.margin, rng);
    c.learning_rate =
        space.learning_rates.empty()
            ? rng.Uniform(space.learning_rate_min, space.learning_rate_max)
            : Pick(space.learning_rates, rng);
    c.seed = HashCombine(options.seed, i + 2);
    c.norm = options.norm;
  }

  std::vector<EmbeddingModel> models(options.trials);
  std::vector<EvalReport> reports(options.trials);
  ParallelFor(options.trials, options.threads, [&](size_t i) {
    models[i] = Train(kg, split.train, kind, configs[i]);
    reports[i] = Evaluate(models[i], split.valid, candidates, kg);
  });

  for (size_t i = 0; i < options.trials; ++i) {
    result.trials.push_back({configs[i], reports[i]});
    if (reports[i].mrr > reports[result.best_trial].mrr) result.best_trial = i;
  }
  result.model = std::move(models[result.best_trial]);
  result.config = configs[result.best_trial];
  result.validation = reports[result.best_trial];
  return result;
}

}  // namespace kgcr
