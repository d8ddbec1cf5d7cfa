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

#ifndef KGCR_EMBED_TRAINING_H_
#define KGCR_EMBED_TRAINING_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "embed/model.h"
#include "kg/knowledge_graph.h"

namespace kgcr {

enum class LossKind { kPairwise, kNll };

std::string_view LossKindName(LossKind kind);
LossKind ParseLossKind(std::string_view name);

struct TrainConfig {
  size_t batches_count = 50;
  size_t epochs = 50;
  size_t dim = 100;
  size_t negatives = 5;  // per positive
  LossKind loss = LossKind::kPairwise;
  double margin = 1.0;  // pairwise only
  double learning_rate = 1e-3;
  uint64_t seed = 0;
  NormKind norm = NormKind::kL1;  // TransE only
  bool normalize_entities = true;  // TransE only

  void Validate() const;
};

// Gradient restricted to the rows a batch touches.
class SparseGradient {
 public:
  void Reset(const EmbeddingModel& model);
  std::span<double> Entity(EntityId e);
  std::span<double> Relation(RelationId r);
  const std::vector<EntityId>& touched_entities() const { return entities_; }
  const std::vector<RelationId>& touched_relations() const { return relations_; }
  std::span<const double> EntityAt(size_t i) const;
  std::span<const double> RelationAt(size_t i) const;

  // Dense copies in the layout of model.entity_params()/relation_params().
  std::vector<double> DenseEntities() const;
  std::vector<double> DenseRelations() const;

 private:
  size_t width_ = 0;
  std::vector<int64_t> entity_slot_;
  std::vector<int64_t> relation_slot_;
  std::vector<EntityId> entities_;
  std::vector<RelationId> relations_;
  std::vector<double> entity_values_;
  std::vector<double> relation_values_;
};

// Adds coeff * d score(t) / d params to `grad`.
void AccumulateScoreGradient(const EmbeddingModel& model, const Triple& t,
                             double coeff, SparseGradient& grad);

// Loss of one batch and its gradient. negatives[i * k .. (i+1) * k) are the
// corruptions of positives[i], k = negatives.size() / positives.size().
//   pairwise: sum_i sum_j max(0, margin - f(p_i) + f(n_ij))
//   nll:      sum_i softplus(-f(p_i)) + sum_ij softplus(f(n_ij))
double BatchLossAndGradient(const EmbeddingModel& model,
                            std::span<const Triple> positives,
                            std::span<const Triple> negatives, LossKind loss,
                            double margin, SparseGradient* grad);

// Uniform init in [-6/sqrt(dim), 6/sqrt(dim)]; TransE entity rows are then
// scaled to unit L2 norm when normalisation is enabled.
EmbeddingModel InitializeModel(const KnowledgeGraph& kg, ModelKind kind,
                               const TrainConfig& config);

// Plain SGD. Each epoch shuffles `training` into batches_count batches; every
// positive gets `negatives` corruptions (subject or object by fair coin,
// replaced with a uniformly drawn entity of `kg`). TransE renormalises the
// touched entity rows after every step. The model covers every entity and
// relation of `kg`, which must contain `training`. Fully deterministic for a
// fixed seed. RandomBaseline returns immediately with the configured seed.
// When `epoch_losses` is given it receives the summed loss of every epoch.
EmbeddingModel Train(const KnowledgeGraph& kg, std::span<const Triple> training,
                     ModelKind kind, const TrainConfig& config,
                     std::vector<double>* epoch_losses = nullptr);

inline EmbeddingModel Train(const KnowledgeGraph& kg, ModelKind kind,
                            const TrainConfig& config,
                            std::vector<double>* epoch_losses = nullptr) {
  return Train(kg, kg.triples(), kind, config, epoch_losses);
}

}  // namespace kgcr

#endif  // KGCR_EMBED_TRAINING_H_
