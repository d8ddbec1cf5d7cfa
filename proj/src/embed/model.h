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

#ifndef KGCR_EMBED_MODEL_H_
#define KGCR_EMBED_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kg/knowledge_graph.h"

namespace kgcr {

enum class ModelKind { kTransE, kDistMult, kComplEx, kRandomBaseline };
enum class NormKind { kL1, kL2 };

std::string_view ModelKindName(ModelKind kind);
ModelKind ParseModelKind(std::string_view name);  // case-insensitive
std::string_view NormKindName(NormKind kind);
NormKind ParseNormKind(std::string_view name);

// Dense per-entity and per-relation parameters.
//
// Rows are stored row-major; a row holds `dim` reals, or for ComplEx the
// `dim` real parts followed by the `dim` imaginary parts. Row i belongs to
// the i-th name of the model's own dictionaries, which are copied from the
// KG the model was created for. A RandomBaseline model has no parameters.
//
// Every model scores "higher = more plausible".
class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  EmbeddingModel(ModelKind kind, size_t dim, NormKind norm, uint64_t seed,
                 std::vector<std::string> entity_names,
                 std::vector<std::string> relation_names);

  // Allocates zeroed parameters for every entity/relation of `kg`.
  static EmbeddingModel ForGraph(const KnowledgeGraph& kg, ModelKind kind,
                                 size_t dim, NormKind norm, uint64_t seed);

  ModelKind kind() const { return kind_; }
  size_t dim() const { return dim_; }
  NormKind norm() const { return norm_; }
  uint64_t seed() const { return seed_; }
  size_t width() const { return kind_ == ModelKind::kComplEx ? 2 * dim_ : dim_; }
  size_t entity_count() const { return entity_names_.size(); }
  size_t relation_count() const { return relation_names_.size(); }
  const std::vector<std::string>& entity_names() const { return entity_names_; }
  const std::vector<std::string>& relation_names() const {
    return relation_names_;
  }

  std::span<double> EntityRow(EntityId e);
  std::span<const double> EntityRow(EntityId e) const;
  std::span<double> RelationRow(RelationId r);
  std::span<const double> RelationRow(RelationId r) const;
  std::vector<double>& entity_params() { return entity_params_; }
  std::vector<double>& relation_params() { return relation_params_; }
  const std::vector<double>& entity_params() const { return entity_params_; }
  const std::vector<double>& relation_params() const { return relation_params_; }

  // Ids index the model's own dictionaries. Throws kNotFound when out of range.
  double Score(EntityId s, RelationId r, EntityId o) const;
  double Score(const Triple& t) const {
    return Score(t.subject, t.relation, t.object);
  }
  // Unchecked variant for hot loops.
  double ScoreUnchecked(EntityId s, RelationId r, EntityId o) const;
  double ScoreNamed(std::string_view s, std::string_view r,
                    std::string_view o) const;

  // True when the model's dictionaries coincide with the KG's, id for id.
  bool AlignedWith(const KnowledgeGraph& kg) const;
  // A copy re-indexed onto the KG's dictionaries. Throws kNotFound when the
  // KG has an entity or relation the model has no row for.
  EmbeddingModel Reindexed(const KnowledgeGraph& kg) const;

  friend bool operator==(const EmbeddingModel& a, const EmbeddingModel& b);

 private:
  void RebuildNameHashes();
  double RandomScore(EntityId s, RelationId r, EntityId o) const;

  ModelKind kind_ = ModelKind::kTransE;
  size_t dim_ = 0;
  NormKind norm_ = NormKind::kL1;
  uint64_t seed_ = 0;
  std::vector<std::string> entity_names_;
  std::vector<std::string> relation_names_;
  std::vector<double> entity_params_;
  std::vector<double> relation_params_;
  // RandomBaseline scores hash names, not ids, so Reindexed preserves them.
  std::vector<uint64_t> entity_hash_;
  std::vector<uint64_t> relation_hash_;
};

// Binary model file:
//   "KGCRMDL1" | u8 kind | u8 norm | u64 dim | u64 seed
//   | u64 n_entities | n x (u32 length, bytes) | u64 n_relations | ...
//   | entity params (f64) | relation params (f64)
// All integers and doubles little-endian; round-trips bit-exactly.
void SaveModel(const EmbeddingModel& model, const std::filesystem::path& path);
EmbeddingModel LoadModel(const std::filesystem::path& path);
std::string SerializeModel(const EmbeddingModel& model);
EmbeddingModel DeserializeModel(std::string_view bytes);

}  // namespace kgcr

#endif  // KGCR_EMBED_MODEL_H_
