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

#include "embed/model.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <unordered_map>

#include "util/error.h"
#include "util/files.h"
#include "util/random.h"
#include "util/text.h"

namespace kgcr {

static_assert(std::endian::native == std::endian::little,
              "model files are written in host byte order");

namespace {

constexpr std::string_view kMagic = "KGCRMDL1";

}  // namespace

std::string_view ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kTransE:
      return "TransE";
    case ModelKind::kDistMult:
      return "DistMult";
    case ModelKind::kComplEx:
      return "ComplEx";
    case ModelKind::kRandomBaseline:
      return "RandomBaseline";
  }
  return "?";
}

ModelKind ParseModelKind(std::string_view name) {
  const std::string lower = ToLower(Trim(name));
  if (lower == "transe") return ModelKind::kTransE;
  if (lower == "distmult") return ModelKind::kDistMult;
  if (lower == "complex") return ModelKind::kComplEx;
  if (lower == "randombaseline" || lower == "random") {
    return ModelKind::kRandomBaseline;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown model kind '" + std::string(name) + "'");
}

std::string_view NormKindName(NormKind kind) {
  return kind == NormKind::kL1 ? "L1" : "L2";
}

NormKind ParseNormKind(std::string_view name) {
  const std::string lower = ToLower(Trim(name));
  if (lower == "l1" || lower == "1") return NormKind::kL1;
  if (lower == "l2" || lower == "2") return NormKind::kL2;
  Fail(ErrorCode::kInvalidArgument, "unknown norm '" + std::string(name) + "'");
}

EmbeddingModel::EmbeddingModel(ModelKind kind, size_t dim, NormKind norm,
                               uint64_t seed,
                               std::vector<std::string> entity_names,
                               std::vector<std::string> relation_names)
    : kind_(kind),
      dim_(kind == ModelKind::kRandomBaseline ? 0 : dim),
      norm_(norm),
      seed_(seed),
      entity_names_(std::move(entity_names)),
      relation_names_(std::move(relation_names)) {
  if (kind_ != ModelKind::kRandomBaseline && dim_ == 0) {
    Fail(ErrorCode::kInvalidArgument, "embedding dimension must be positive");
  }
  entity_params_.assign(entity_names_.size() * width(), 0.0);
  relation_params_.assign(relation_names_.size() * width(), 0.0);
  RebuildNameHashes();
}

EmbeddingModel EmbeddingModel::ForGraph(const KnowledgeGraph& kg, ModelKind kind,
                                        size_t dim, NormKind norm,
                                        uint64_t seed) {
  return EmbeddingModel(kind, dim, norm, seed, kg.entities().names(),
                        kg.relations().names());
}

void EmbeddingModel::RebuildNameHashes() {
  entity_hash_.clear();
  relation_hash_.clear();
  for (const auto& n : entity_names_) entity_hash_.push_back(HashString(n));
  for (const auto& n : relation_names_) relation_hash_.push_back(HashString(n));
}

std::span<double> EmbeddingModel::EntityRow(EntityId e) {
  return std::span<double>(entity_params_).subspan(e * width(), width());
}
std::span<const double> EmbeddingModel::EntityRow(EntityId e) const {
  return std::span<const double>(entity_params_).subspan(e * width(), width());
}
std::span<double> EmbeddingModel::RelationRow(RelationId r) {
  return std::span<double>(relation_params_).subspan(r * width(), width());
}
std::span<const double> EmbeddingModel::RelationRow(RelationId r) const {
  return std::span<const double>(relation_params_).subspan(r * width(), width());
}

double EmbeddingModel::RandomScore(EntityId s, RelationId r, EntityId o) const {
  uint64_t h = HashCombine(seed_, entity_hash_[s]);
  h = HashCombine(h, relation_hash_[r]);
  h = HashCombine(h, entity_hash_[o]);
  return UnitInterval(Mix64(h));
}

double EmbeddingModel::Score(EntityId s, RelationId r, EntityId o) const {
  if (s >= entity_count() || o >= entity_count()) {
    Fail(ErrorCode::kNotFound, "entity id outside the model");
  }
  if (r >= relation_count()) {
    Fail(ErrorCode::kNotFound, "relation id outside the model");
  }
  return ScoreUnchecked(s, r, o);
}

double EmbeddingModel::ScoreUnchecked(EntityId s, RelationId r,
                                      EntityId o) const {
  if (kind_ == ModelKind::kRandomBaseline) return RandomScore(s, r, o);
  const double* es = entity_params_.data() + s * width();
  const double* eo = entity_params_.data() + o * width();
  const double* rr = relation_params_.data() + r * width();
  double acc = 0.0;
  switch (kind_) {
    case ModelKind::kTransE:
      if (norm_ == NormKind::kL1) {
        for (size_t i = 0; i < dim_; ++i) acc += std::abs(es[i] + rr[i] - eo[i]);
        return -acc;
      }
      for (size_t i = 0; i < dim_; ++i) {
        const double d = es[i] + rr[i] - eo[i];
        acc += d * d;
      }
      return -std::sqrt(acc);
    case ModelKind::kDistMult:
      // r * (s * o) keeps the result bit-identical under s <-> o.
      for (size_t i = 0; i < dim_; ++i) acc += rr[i] * (es[i] * eo[i]);
      return acc;
    case ModelKind::kComplEx: {
      // Re(<s, r, conj(o)>) with s = a + ib, r = c + id, o = e + ig.
      const size_t n = dim_;
      for (size_t i = 0; i < n; ++i) {
        const double a = es[i], b = es[n + i];
        const double c = rr[i], d = rr[n + i];
        const double e = eo[i], g = eo[n + i];
        acc += (a * c - b * d) * e + (a * d + b * c) * g;
      }
      return acc;
    }
    case ModelKind::kRandomBaseline:
      break;
  }
  return acc;
}

double EmbeddingModel::ScoreNamed(std::string_view s, std::string_view r,
                                  std::string_view o) const {
  auto find = [](const std::vector<std::string>& names, std::string_view key,
                 const char* what) {
    for (size_t i = 0; i < names.size(); ++i) {
      if (names[i] == key) return static_cast<uint32_t>(i);
    }
    Fail(ErrorCode::kNotFound,
         std::string("unknown ") + what + " '" + std::string(key) + "'");
  };
  return ScoreUnchecked(find(entity_names_, s, "entity"),
                        find(relation_names_, r, "relation"),
                        find(entity_names_, o, "entity"));
}

bool EmbeddingModel::AlignedWith(const KnowledgeGraph& kg) const {
  return entity_names_ == kg.entities().names() &&
         relation_names_ == kg.relations().names();
}

EmbeddingModel EmbeddingModel::Reindexed(const KnowledgeGraph& kg) const {
  if (AlignedWith(kg)) return *this;
  auto index_of = [](const std::vector<std::string>& names) {
    std::unordered_map<std::string_view, uint32_t> index;
    for (size_t i = 0; i < names.size(); ++i) {
      index.emplace(names[i], static_cast<uint32_t>(i));
    }
    return index;
  };
  const auto entity_index = index_of(entity_names_);
  const auto relation_index = index_of(relation_names_);
  EmbeddingModel out(kind_, dim_, norm_, seed_, kg.entities().names(),
                     kg.relations().names());
  for (EntityId e = 0; e < kg.entity_count(); ++e) {
    auto it = entity_index.find(kg.EntityName(e));
    if (it == entity_index.end()) {
      Fail(ErrorCode::kNotFound,
           "model has no vector for entity '" + kg.EntityName(e) + "'");
    }
    if (width() > 0) {
      auto src = EntityRow(it->second);
      std::copy(src.begin(), src.end(), out.EntityRow(e).begin());
    }
  }
  for (RelationId r = 0; r < kg.relation_count(); ++r) {
    auto it = relation_index.find(kg.RelationName(r));
    if (it == relation_index.end()) {
      Fail(ErrorCode::kNotFound,
           "model has no vector for relation '" + kg.RelationName(r) + "'");
    }
    if (width() > 0) {
      auto src = RelationRow(it->second);
      std::copy(src.begin(), src.end(), out.RelationRow(r).begin());
    }
  }
  return out;
}

bool operator==(const EmbeddingModel& a, const EmbeddingModel& b) {
  auto same_bits = [](const std::vector<double>& x, const std::vector<double>& y) {
    return x.size() == y.size() &&
           (x.empty() ||
            std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0);
  };
  return a.kind_ == b.kind_ && a.dim_ == b.dim_ && a.norm_ == b.norm_ &&
         a.seed_ == b.seed_ && a.entity_names_ == b.entity_names_ &&
         a.relation_names_ == b.relation_names_ &&
         same_bits(a.entity_params_, b.entity_params_) &&
         same_bits(a.relation_params_, b.relation_params_);
}

std::string SerializeModel(const EmbeddingModel& model) {
  std::string out(kMagic);
  auto put = [&out](const auto& value) {
    const char* p = reinterpret_cast<const char*>(&value);
    out.append(p, sizeof(value));
  };
  auto put_names = [&](const std::vector<std::string>& names) {
    put(static_cast<uint64_t>(names.size()));
    for (const auto& n : names) {
      put(static_cast<uint32_t>(n.size()));
      out += n;
    }
  };
  put(static_cast<uint8_t>(model.kind()));
  put(static_cast<uint8_t>(model.norm()));
  put(static_cast<uint64_t>(model.dim()));
  put(static_cast<uint64_t>(model.seed()));
  put_names(model.entity_names());
  put_names(model.relation_names());
  for (double v : model.entity_params()) put(v);
  for (double v : model.relation_params()) put(v);
  return out;
}

EmbeddingModel DeserializeModel(std::string_view bytes) {
  size_t pos = 0;
  auto need = [&](size_t n) {
    if (bytes.size() - pos < n) Fail(ErrorCode::kParse, "truncated model file");
  };
  auto get = [&](auto& value) {
    need(sizeof(value));
    std::memcpy(&value, bytes.data() + pos, sizeof(value));
    pos += sizeof(value);
  };
  auto get_names = [&] {
    uint64_t count = 0;
    get(count);
    std::vector<std::string> names;
    for (uint64_t i = 0; i < count; ++i) {
      uint32_t length = 0;
      get(length);
      need(length);
      names.emplace_back(bytes.substr(pos, length));
      pos += length;
    }
    return names;
  };

  need(kMagic.size());
  if (bytes.substr(0, kMagic.size()) != kMagic) {
    Fail(ErrorCode::kParse, "not a kgcr model file");
  }
  pos = kMagic.size();
  uint8_t kind = 0, norm = 0;
  uint64_t dim = 0, seed = 0;
  get(kind);
  get(norm);
  get(dim);
  get(seed);
  if (kind > static_cast<uint8_t>(ModelKind::kRandomBaseline) || norm > 1) {
    Fail(ErrorCode::kParse, "corrupt model header");
  }
  auto entities = get_names();
  auto relations = get_names();
  EmbeddingModel model(static_cast<ModelKind>(kind), dim,
                       static_cast<NormKind>(norm), seed, std::move(entities),
                       std::move(relations));
  for (double& v : model.entity_params()) get(v);
  for (double& v : model.relation_params()) get(v);
  if (pos != bytes.size()) Fail(ErrorCode::kParse, "trailing bytes in model file");
  return model;
}

void SaveModel(const EmbeddingModel& model, const std::filesystem::path& path) {
  WriteFile(path, SerializeModel(model));
}

EmbeddingModel LoadModel(const std::filesystem::path& path) {
  return DeserializeModel(ReadFile(path));
}

}  // namespace kgcr
