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

#include "embed/training.h"

#include <algorithm>
#include <cmath>

#include "util/error.h"
#include "util/random.h"
#include "util/text.h"

namespace kgcr {
namespace {

double Softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double Sign(double x) { return (x > 0) - (x < 0); }

void NormalizeRow(std::span<double> row) {
  double sq = 0.0;
  for (double v : row) sq += v * v;
  if (sq <= 0.0) return;
  const double inv = 1.0 / std::sqrt(sq);
  for (double& v : row) v *= inv;
}

}  // namespace

std::string_view LossKindName(LossKind kind) {
  return kind == LossKind::kPairwise ? "pairwise" : "nll";
}

LossKind ParseLossKind(std::string_view name) {
  const std::string lower = ToLower(Trim(name));
  if (lower == "pairwise") return LossKind::kPairwise;
  if (lower == "nll" || lower == "negative_log_likelihood") return LossKind::kNll;
  Fail(ErrorCode::kInvalidArgument, "unknown loss '" + std::string(name) + "'");
}

void TrainConfig::Validate() const {
  if (batches_count == 0 || epochs == 0 || dim == 0 || negatives == 0) {
    Fail(ErrorCode::kInvalidArgument,
         "batches_count, epochs, dim and negatives must be positive");
  }
  if (loss == LossKind::kPairwise && !(margin > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "pairwise margin must be positive");
  }
  if (!std::isfinite(learning_rate) || learning_rate < 0.0) {
    Fail(ErrorCode::kInvalidArgument, "learning rate must be finite and >= 0");
  }
}

void SparseGradient::Reset(const EmbeddingModel& model) {
  width_ = model.width();
  if (entity_slot_.size() != model.entity_count()) {
    entity_slot_.assign(model.entity_count(), -1);
  } else {
    for (EntityId e : entities_) entity_slot_[e] = -1;
  }
  if (relation_slot_.size() != model.relation_count()) {
    relation_slot_.assign(model.relation_count(), -1);
  } else {
    for (RelationId r : relations_) relation_slot_[r] = -1;
  }
  entities_.clear();
  relations_.clear();
  entity_values_.clear();
  relation_values_.clear();
}

std::span<double> SparseGradient::Entity(EntityId e) {
  if (entity_slot_[e] < 0) {
    entity_slot_[e] = static_cast<int64_t>(entities_.size());
    entities_.push_back(e);
    entity_values_.resize(entity_values_.size() + width_, 0.0);
  }
  return std::span<double>(entity_values_)
      .subspan(static_cast<size_t>(entity_slot_[e]) * width_, width_);
}

std::span<double> SparseGradient::Relation(RelationId r) {
  if (relation_slot_[r] < 0) {
    relation_slot_[r] = static_cast<int64_t>(relations_.size());
    relations_.push_back(r);
    relation_values_.resize(relation_values_.size() + width_, 0.0);
  }
  return std::span<double>(relation_values_)
      .subspan(static_cast<size_t>(relation_slot_[r]) * width_, width_);
}

std::span<const double> SparseGradient::EntityAt(size_t i) const {
  return std::span<const double>(entity_values_).subspan(i * width_, width_);
}

std::span<const double> SparseGradient::RelationAt(size_t i) const {
  return std::span<const double>(relation_values_).subspan(i * width_, width_);
}

std::vector<double> SparseGradient::DenseEntities() const {
  std::vector<double> dense(entity_slot_.size() * width_, 0.0);
  for (size_t i = 0; i < entities_.size(); ++i) {
    auto row = EntityAt(i);
    std::copy(row.begin(), row.end(), dense.begin() + entities_[i] * width_);
  }
  return dense;
}

std::vector<double> SparseGradient::DenseRelations() const {
  std::vector<double> dense(relation_slot_.size() * width_, 0.0);
  for (size_t i = 0; i < relations_.size(); ++i) {
    auto row = RelationAt(i);
    std::copy(row.begin(), row.end(), dense.begin() + relations_[i] * width_);
  }
  return dense;
}

void AccumulateScoreGradient(const EmbeddingModel& model, const Triple& t,
                             double coeff, SparseGradient& grad) {
  const size_t n = model.dim();
  auto s = model.EntityRow(t.subject);
  auto r = model.RelationRow(t.relation);
  auto o = model.EntityRow(t.object);
  // Spans into the gradient buffer may be invalidated by the next insertion,
  // so all three rows are materialised before taking any of them.
  grad.Entity(t.subject);
  grad.Relation(t.relation);
  grad.Entity(t.object);
  auto gs = grad.Entity(t.subject);
  auto gr = grad.Relation(t.relation);
  auto go = grad.Entity(t.object);

  switch (model.kind()) {
    case ModelKind::kTransE: {
      double norm = 0.0;
      if (model.norm() == NormKind::kL2) {
        for (size_t i = 0; i < n; ++i) {
          const double d = s[i] + r[i] - o[i];
          norm += d * d;
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) return;
      }
      for (size_t i = 0; i < n; ++i) {
        const double d = s[i] + r[i] - o[i];
        const double dd = model.norm() == NormKind::kL1 ? -Sign(d) : -d / norm;
        gs[i] += coeff * dd;
        gr[i] += coeff * dd;
        go[i] -= coeff * dd;
      }
      return;
    }
    case ModelKind::kDistMult:
      for (size_t i = 0; i < n; ++i) {
        gs[i] += coeff * r[i] * o[i];
        gr[i] += coeff * s[i] * o[i];
        go[i] += coeff * s[i] * r[i];
      }
      return;
    case ModelKind::kComplEx:
      for (size_t i = 0; i < n; ++i) {
        const double a = s[i], b = s[n + i];
        const double c = r[i], d = r[n + i];
        const double e = o[i], g = o[n + i];
        gs[i] += coeff * (c * e + d * g);
        gs[n + i] += coeff * (c * g - d * e);
        gr[i] += coeff * (a * e + b * g);
        gr[n + i] += coeff * (a * g - b * e);
        go[i] += coeff * (a * c - b * d);
        go[n + i] += coeff * (a * d + b * c);
      }
      return;
    case ModelKind::kRandomBaseline:
      return;
  }
}

double BatchLossAndGradient(const EmbeddingModel& model,
                            std::span<const Triple> positives,
                            std::span<const Triple> negatives, LossKind loss,
                            double margin, SparseGradient* grad) {
  if (positives.empty()) return 0.0;
  if (negatives.size() % positives.size() != 0) {
    Fail(ErrorCode::kInvalidArgument,
         "negatives must be a whole multiple of positives");
  }
  const size_t k = negatives.size() / positives.size();
  if (grad) grad->Reset(model);
  double total = 0.0;
  for (size_t i = 0; i < positives.size(); ++i) {
    const Triple& p = positives[i];
    const double fp = model.ScoreUnchecked(p.subject, p.relation, p.object);
    if (loss == LossKind::kNll) {
      total += Softplus(-fp);
      if (grad) AccumulateScoreGradient(model, p, -Sigmoid(-fp), *grad);
    }
    for (size_t j = 0; j < k; ++j) {
      const Triple& q = negatives[i * k + j];
      const double fn = model.ScoreUnchecked(q.subject, q.relation, q.object);
      if (loss == LossKind::kNll) {
        total += Softplus(fn);
        if (grad) AccumulateScoreGradient(model, q, Sigmoid(fn), *grad);
        continue;
      }
      const double hinge = margin - fp + fn;
      if (hinge <= 0.0) continue;
      total += hinge;
      if (grad) {
        AccumulateScoreGradient(model, p, -1.0, *grad);
        AccumulateScoreGradient(model, q, 1.0, *grad);
      }
    }
  }
  return total;
}

EmbeddingModel InitializeModel(const KnowledgeGraph& kg, ModelKind kind,
                               const TrainConfig& config) {
  EmbeddingModel model =
      EmbeddingModel::ForGraph(kg, kind, config.dim, config.norm, config.seed);
  if (kind == ModelKind::kRandomBaseline) return model;
  Rng rng(HashCombine(config.seed, 0x696e6974));  // "init"
  const double bound = 6.0 / std::sqrt(static_cast<double>(config.dim));
  for (double& v : model.entity_params()) v = rng.Uniform(-bound, bound);
  for (double& v : model.relation_params()) v = rng.Uniform(-bound, bound);
  if (kind == ModelKind::kTransE && config.normalize_entities) {
    for (EntityId e = 0; e < model.entity_count(); ++e) {
      NormalizeRow(model.EntityRow(e));
    }
  }
  return model;
}

EmbeddingModel Train(const KnowledgeGraph& kg, std::span<const Triple> training,
                     ModelKind kind, const TrainConfig& config,
                     std::vector<double>* epoch_losses) {
  if (epoch_losses) epoch_losses->clear();
  if (kind == ModelKind::kRandomBaseline) {
    return EmbeddingModel::ForGraph(kg, kind, 0, config.norm, config.seed);
  }
  config.Validate();
  if (training.empty()) {
    Fail(ErrorCode::kInvalidArgument, "cannot train on an empty triple set");
  }
  EmbeddingModel model = InitializeModel(kg, kind, config);
  const bool renormalize =
      kind == ModelKind::kTransE && config.normalize_entities;
  const size_t width = model.width();
  const uint64_t num_entities = kg.entity_count();

  Rng rng(HashCombine(config.seed, 0x747261696e));  // "train"
  std::vector<Triple> order(training.begin(), training.end());
  std::vector<Triple> negatives;
  SparseGradient grad;

  for (size_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.Shuffle(std::span<Triple>(order));
    double epoch_loss = 0.0;
    for (size_t b = 0; b < config.batches_count; ++b) {
      const size_t begin = b * order.size() / config.batches_count;
      const size_t end = (b + 1) * order.size() / config.batches_count;
      if (begin == end) continue;
      const std::span<const Triple> batch(order.data() + begin, end - begin);

      negatives.clear();
      for (const Triple& p : batch) {
        for (size_t j = 0; j < config.negatives; ++j) {
          Triple q = p;
          const bool corrupt_subject = rng.Coin();
          const auto e = static_cast<EntityId>(rng.Below(num_entities));
          (corrupt_subject ? q.subject : q.object) = e;
          negatives.push_back(q);
        }
      }
      epoch_loss += BatchLossAndGradient(model, batch, negatives, config.loss,
                                         config.margin, &grad);

      const double lr = config.learning_rate;
      for (size_t i = 0; i < grad.touched_entities().size(); ++i) {
        auto row = model.EntityRow(grad.touched_entities()[i]);
        auto g = grad.EntityAt(i);
        for (size_t d = 0; d < width; ++d) row[d] -= lr * g[d];
        if (renormalize) NormalizeRow(row);
      }
      for (size_t i = 0; i < grad.touched_relations().size(); ++i) {
        auto row = model.RelationRow(grad.touched_relations()[i]);
        auto g = grad.RelationAt(i);
        for (size_t d = 0; d < width; ++d) row[d] -= lr * g[d];
      }
    }
    if (epoch_losses) epoch_losses->push_back(epoch_loss);
  }
  return model;
}

}  // namespace kgcr
