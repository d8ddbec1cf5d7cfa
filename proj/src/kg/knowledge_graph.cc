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

#include "kg/knowledge_graph.h"

#include <algorithm>
#include <numeric>

#include "util/error.h"
#include "util/files.h"
#include "util/text.h"

namespace kgcr {

uint32_t Dictionary::Intern(std::string_view name) {
  auto it = ids_.find(name);
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<uint32_t>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<uint32_t> Dictionary::Find(std::string_view name) const {
  auto it = ids_.find(name);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& Dictionary::Name(uint32_t id) const {
  if (id >= names_.size()) {
    Fail(ErrorCode::kNotFound, "unknown id " + std::to_string(id));
  }
  return names_[id];
}

Adjacency::Adjacency(const std::vector<std::pair<uint32_t, uint32_t>>& pairs) {
  values_.reserve(pairs.size());
  for (const auto& [key, value] : pairs) {
    if (keys_.empty() || keys_.back() != key) {
      keys_.push_back(key);
      offsets_.push_back(static_cast<uint32_t>(values_.size()));
    }
    values_.push_back(value);
  }
  offsets_.push_back(static_cast<uint32_t>(values_.size()));
}

std::span<const uint32_t> Adjacency::ValuesAt(size_t key_index) const {
  return std::span<const uint32_t>(values_).subspan(
      offsets_[key_index], offsets_[key_index + 1] - offsets_[key_index]);
}

std::span<const uint32_t> Adjacency::Find(uint32_t key) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return {};
  return ValuesAt(static_cast<size_t>(it - keys_.begin()));
}

bool Adjacency::Contains(uint32_t key, uint32_t value) const {
  auto values = Find(key);
  return std::binary_search(values.begin(), values.end(), value);
}

KnowledgeGraph::KnowledgeGraph(Dictionary entities, Dictionary relations,
                               std::vector<Triple> triples)
    : entities_(std::move(entities)),
      relations_(std::move(relations)),
      triples_(std::move(triples)) {
  for (const Triple& t : triples_) {
    CheckEntity(t.subject);
    CheckEntity(t.object);
    CheckRelation(t.relation);
  }
  std::sort(triples_.begin(), triples_.end(), RelationMajorLess{});
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());

  const size_t num_relations = relations_.size();
  relation_begin_.assign(num_relations + 1, 0);
  for (const Triple& t : triples_) ++relation_begin_[t.relation + 1];
  std::partial_sum(relation_begin_.begin(), relation_begin_.end(),
                   relation_begin_.begin());

  by_subject_.resize(num_relations);
  by_object_.resize(num_relations);
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  for (RelationId r = 0; r < num_relations; ++r) {
    auto slice = RelationTriples(r);
    pairs.clear();
    for (const Triple& t : slice) pairs.emplace_back(t.subject, t.object);
    by_subject_[r] = Adjacency(pairs);  // already sorted by (s, o)
    for (auto& p : pairs) std::swap(p.first, p.second);
    std::sort(pairs.begin(), pairs.end());
    by_object_[r] = Adjacency(pairs);
  }

  std::vector<uint32_t> order(entities_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [this](uint32_t a, uint32_t b) {
    return entities_.Name(a) < entities_.Name(b);
  });
  name_rank_.assign(order.size(), 0);
  for (uint32_t pos = 0; pos < order.size(); ++pos) name_rank_[order[pos]] = pos;
}

void KnowledgeGraph::CheckEntity(EntityId e) const {
  if (e >= entities_.size()) {
    Fail(ErrorCode::kNotFound, "unknown entity id " + std::to_string(e));
  }
}

void KnowledgeGraph::CheckRelation(RelationId r) const {
  if (r >= relations_.size()) {
    Fail(ErrorCode::kNotFound, "unknown relation id " + std::to_string(r));
  }
}

bool KnowledgeGraph::Contains(const Triple& t) const {
  if (t.relation >= by_subject_.size()) return false;
  return by_subject_[t.relation].Contains(t.subject, t.object);
}

std::span<const Triple> KnowledgeGraph::RelationTriples(RelationId r) const {
  if (r >= relations_.size()) return {};
  return std::span<const Triple>(triples_).subspan(
      relation_begin_[r], relation_begin_[r + 1] - relation_begin_[r]);
}

std::span<const EntityId> KnowledgeGraph::ObjectsOf(RelationId r,
                                                    EntityId s) const {
  if (r >= by_subject_.size()) return {};
  return by_subject_[r].Find(s);
}

std::span<const EntityId> KnowledgeGraph::SubjectsOf(RelationId r,
                                                     EntityId o) const {
  if (r >= by_object_.size()) return {};
  return by_object_[r].Find(o);
}

std::span<const EntityId> KnowledgeGraph::SubjectsWith(RelationId r) const {
  if (r >= by_subject_.size()) return {};
  return by_subject_[r].keys();
}

std::span<const EntityId> KnowledgeGraph::ObjectsWith(RelationId r) const {
  if (r >= by_object_.size()) return {};
  return by_object_[r].keys();
}

std::vector<Triple> KnowledgeGraph::Lookup(const TriplePattern& pattern) const {
  if (pattern.subject) CheckEntity(*pattern.subject);
  if (pattern.object) CheckEntity(*pattern.object);
  if (pattern.relation) CheckRelation(*pattern.relation);

  std::vector<Triple> out;
  auto scan_relation = [&](RelationId r) {
    if (pattern.subject && pattern.object) {
      if (Contains(*pattern.subject, r, *pattern.object)) {
        out.push_back({*pattern.subject, r, *pattern.object});
      }
    } else if (pattern.subject) {
      for (EntityId o : ObjectsOf(r, *pattern.subject)) {
        out.push_back({*pattern.subject, r, o});
      }
    } else if (pattern.object) {
      for (EntityId s : SubjectsOf(r, *pattern.object)) {
        out.push_back({s, r, *pattern.object});
      }
    } else {
      auto slice = RelationTriples(r);
      out.insert(out.end(), slice.begin(), slice.end());
    }
  };
  if (pattern.relation) {
    scan_relation(*pattern.relation);
  } else {
    for (RelationId r = 0; r < relations_.size(); ++r) scan_relation(r);
  }
  return out;
}

RelationStats KnowledgeGraph::Stats(RelationId r) const {
  CheckRelation(r);
  RelationStats stats;
  stats.relation = r;
  stats.size = RelationSize(r);
  if (stats.size == 0) {
    Fail(ErrorCode::kEmptyRelation,
         "relation '" + relations_.Name(r) + "' has no triples");
  }
  stats.distinct_subjects = by_subject_[r].keys().size();
  stats.distinct_objects = by_object_[r].keys().size();
  stats.fun = static_cast<double>(stats.distinct_subjects) /
              static_cast<double>(stats.size);
  stats.inv_fun = static_cast<double>(stats.distinct_objects) /
                  static_cast<double>(stats.size);
  return stats;
}

std::vector<uint64_t> KnowledgeGraph::EntityFrequencies() const {
  std::vector<uint64_t> freq(entities_.size(), 0);
  for (const Triple& t : triples_) {
    ++freq[t.subject];
    ++freq[t.object];
  }
  return freq;
}

EntityId KnowledgeGraph::EntityIdOf(std::string_view name) const {
  auto id = entities_.Find(name);
  if (!id) Fail(ErrorCode::kNotFound, "unknown entity '" + std::string(name) + "'");
  return *id;
}

RelationId KnowledgeGraph::RelationIdOf(std::string_view name) const {
  auto id = relations_.Find(name);
  if (!id) {
    Fail(ErrorCode::kNotFound, "unknown relation '" + std::string(name) + "'");
  }
  return *id;
}

KnowledgeGraph KnowledgeGraph::WithTriples(std::span<const Triple> extra) const {
  std::vector<Triple> all(triples_.begin(), triples_.end());
  all.insert(all.end(), extra.begin(), extra.end());
  return KnowledgeGraph(entities_, relations_, std::move(all));
}

KnowledgeGraphBuilder::KnowledgeGraphBuilder(std::set<std::string> relation_filter)
    : filter_(std::move(relation_filter)) {}

bool KnowledgeGraphBuilder::Add(std::string_view subject,
                                std::string_view relation,
                                std::string_view object, Triple* added) {
  if (filter_ && filter_->find(std::string(relation)) == filter_->end()) {
    return false;
  }
  Triple t{entities_.Intern(subject), relations_.Intern(relation),
           entities_.Intern(object)};
  triples_.push_back(t);
  if (added) *added = t;
  return true;
}

std::vector<Triple> KnowledgeGraphBuilder::AddTsvText(
    std::string_view text, std::string_view source_name) {
  std::vector<Triple> added;
  size_t line_number = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty()) continue;
    auto fields = Split(line, '\t');
    if (fields.size() != 3) {
      Fail(ErrorCode::kParse,
           std::string(source_name) + ":" + std::to_string(line_number) +
               ": expected 3 tab-separated fields, found " +
               std::to_string(fields.size()));
    }
    Triple t;
    if (Add(fields[0], fields[1], fields[2], &t)) added.push_back(t);
  }
  return added;
}

std::vector<Triple> KnowledgeGraphBuilder::AddTsvFile(
    const std::filesystem::path& path) {
  const std::string text = ReadFile(path);
  return AddTsvText(text, path.string());
}

KnowledgeGraph KnowledgeGraphBuilder::Build() const {
  return KnowledgeGraph(entities_, relations_, triples_);
}

KnowledgeGraph LoadTsv(const std::filesystem::path& path,
                       const std::optional<std::set<std::string>>& relation_filter) {
  KnowledgeGraphBuilder builder = relation_filter
                                      ? KnowledgeGraphBuilder(*relation_filter)
                                      : KnowledgeGraphBuilder();
  builder.AddTsvFile(path);
  return builder.Build();
}

std::string FormatTsv(const KnowledgeGraph& kg, std::span<const Triple> triples) {
  std::vector<const Triple*> order;
  order.reserve(triples.size());
  for (const Triple& t : triples) order.push_back(&t);
  const auto& rank = kg.EntityNameRank();
  std::sort(order.begin(), order.end(), [&](const Triple* a, const Triple* b) {
    if (a->subject != b->subject) return rank[a->subject] < rank[b->subject];
    if (a->relation != b->relation) {
      return kg.RelationName(a->relation) < kg.RelationName(b->relation);
    }
    return rank[a->object] < rank[b->object];
  });
  std::string out;
  for (const Triple* t : order) {
    out += kg.EntityName(t->subject);
    out += '\t';
    out += kg.RelationName(t->relation);
    out += '\t';
    out += kg.EntityName(t->object);
    out += '\n';
  }
  return out;
}

void WriteTsv(const KnowledgeGraph& kg, std::span<const Triple> triples,
              const std::filesystem::path& path) {
  WriteFile(path, FormatTsv(kg, triples));
}

void WriteTsv(const KnowledgeGraph& kg, const std::filesystem::path& path) {
  WriteTsv(kg, kg.triples(), path);
}

}  // namespace kgcr
