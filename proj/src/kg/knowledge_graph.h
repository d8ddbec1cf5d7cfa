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

// Dictionary-encoded, immutable in-memory triple store.
//
// Triples are kept sorted by (relation, subject, object). For every relation
// two compressed adjacency lists are built: subject -> objects and
// object -> subjects. Together with the per-relation slice of the sorted
// triple array these give the three index views used by the rule miner and
// the ranking code. Once built, a KnowledgeGraph is never mutated and may be
// shared freely across threads.

#ifndef KGCR_KG_KNOWLEDGE_GRAPH_H_
#define KGCR_KG_KNOWLEDGE_GRAPH_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kgcr {

using EntityId = uint32_t;
using RelationId = uint32_t;

struct Triple {
  EntityId subject = 0;
  RelationId relation = 0;
  EntityId object = 0;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Ordering used for storage: (relation, subject, object).
struct RelationMajorLess {
  bool operator()(const Triple& a, const Triple& b) const {
    if (a.relation != b.relation) return a.relation < b.relation;
    if (a.subject != b.subject) return a.subject < b.subject;
    return a.object < b.object;
  }
};

// String <-> dense id bijection; ids are handed out in first-seen order.
class Dictionary {
 public:
  uint32_t Intern(std::string_view name);
  std::optional<uint32_t> Find(std::string_view name) const;
  const std::string& Name(uint32_t id) const;
  size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  struct StringHash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::vector<std::string> names_;
  std::unordered_map<std::string, uint32_t, StringHash, std::equal_to<>> ids_;
};

// Compressed sparse adjacency: sorted distinct keys, each with a sorted run
// of values.
class Adjacency {
 public:
  Adjacency() = default;
  // `pairs` must be sorted by (key, value) and free of duplicates.
  explicit Adjacency(const std::vector<std::pair<uint32_t, uint32_t>>& pairs);

  std::span<const uint32_t> Find(uint32_t key) const;
  bool Contains(uint32_t key, uint32_t value) const;
  std::span<const uint32_t> keys() const { return keys_; }
  std::span<const uint32_t> ValuesAt(size_t key_index) const;
  size_t value_count() const { return values_.size(); }

 private:
  std::vector<uint32_t> keys_;
  std::vector<uint32_t> offsets_;  // keys_.size() + 1 entries
  std::vector<uint32_t> values_;
};

struct RelationStats {
  RelationId relation = 0;
  uint64_t size = 0;
  uint64_t distinct_subjects = 0;
  uint64_t distinct_objects = 0;
  double fun = 0.0;      // distinct_subjects / size
  double inv_fun = 0.0;  // distinct_objects / size

  // fun(r) >= fun(r^-), evaluated exactly on the integer counts.
  bool SubjectFunctional() const {
    return distinct_subjects >= distinct_objects;
  }
};

// Triple pattern; an empty optional is a wildcard.
struct TriplePattern {
  std::optional<EntityId> subject;
  std::optional<RelationId> relation;
  std::optional<EntityId> object;
};

class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  // Deduplicates `triples` and builds all indices. Every id must be valid in
  // the corresponding dictionary.
  KnowledgeGraph(Dictionary entities, Dictionary relations,
                 std::vector<Triple> triples);

  const Dictionary& entities() const { return entities_; }
  const Dictionary& relations() const { return relations_; }
  size_t entity_count() const { return entities_.size(); }
  size_t relation_count() const { return relations_.size(); }

  // All triples, sorted by (relation, subject, object).
  std::span<const Triple> triples() const { return triples_; }
  size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }

  bool Contains(const Triple& t) const;
  bool Contains(EntityId s, RelationId r, EntityId o) const {
    return Contains(Triple{s, r, o});
  }

  std::span<const Triple> RelationTriples(RelationId r) const;
  size_t RelationSize(RelationId r) const { return RelationTriples(r).size(); }
  std::span<const EntityId> ObjectsOf(RelationId r, EntityId s) const;
  std::span<const EntityId> SubjectsOf(RelationId r, EntityId o) const;
  // Distinct subjects (objects) that occur with relation r.
  std::span<const EntityId> SubjectsWith(RelationId r) const;
  std::span<const EntityId> ObjectsWith(RelationId r) const;
  const Adjacency& SubjectIndex(RelationId r) const { return by_subject_[r]; }
  const Adjacency& ObjectIndex(RelationId r) const { return by_object_[r]; }

  // Throws kNotFound for ids outside the dictionaries.
  std::vector<Triple> Lookup(const TriplePattern& pattern) const;

  // Throws kNotFound for an unknown id, kEmptyRelation when r has no triples.
  RelationStats Stats(RelationId r) const;

  // Subject-slot plus object-slot occurrences, indexed by entity id.
  std::vector<uint64_t> EntityFrequencies() const;

  EntityId EntityIdOf(std::string_view name) const;
  RelationId RelationIdOf(std::string_view name) const;
  const std::string& EntityName(EntityId e) const { return entities_.Name(e); }
  const std::string& RelationName(RelationId r) const {
    return relations_.Name(r);
  }

  // Position of each entity in ascending name order; used wherever output
  // must not depend on id assignment.
  const std::vector<uint32_t>& EntityNameRank() const { return name_rank_; }

  // A copy with `extra` added; dictionaries are extended, never reordered.
  KnowledgeGraph WithTriples(std::span<const Triple> extra) const;

 private:
  void CheckEntity(EntityId e) const;
  void CheckRelation(RelationId r) const;

  Dictionary entities_;
  Dictionary relations_;
  std::vector<Triple> triples_;
  std::vector<size_t> relation_begin_;  // relation_count() + 1 offsets
  std::vector<Adjacency> by_subject_;
  std::vector<Adjacency> by_object_;
  std::vector<uint32_t> name_rank_;
};

// Accumulates triples from one or more TSV sources into shared dictionaries.
class KnowledgeGraphBuilder {
 public:
  KnowledgeGraphBuilder() = default;
  explicit KnowledgeGraphBuilder(std::set<std::string> relation_filter);

  // Returns false (and adds nothing) when the relation is filtered out.
  bool Add(std::string_view subject, std::string_view relation,
           std::string_view object, Triple* added = nullptr);

  // Parses a TSV file and returns the (possibly repeated) triples it
  // contributed, in file order. Throws kIo / kParse.
  std::vector<Triple> AddTsvFile(const std::filesystem::path& path);
  std::vector<Triple> AddTsvText(std::string_view text,
                                 std::string_view source_name);

  KnowledgeGraph Build() const;

 private:
  std::optional<std::set<std::string>> filter_;
  Dictionary entities_;
  Dictionary relations_;
  std::vector<Triple> triples_;
};

KnowledgeGraph LoadTsv(
    const std::filesystem::path& path,
    const std::optional<std::set<std::string>>& relation_filter = std::nullopt);

// One triple per line, sorted by decoded (subject, relation, object).
std::string FormatTsv(const KnowledgeGraph& kg, std::span<const Triple> triples);
void WriteTsv(const KnowledgeGraph& kg, std::span<const Triple> triples,
              const std::filesystem::path& path);
void WriteTsv(const KnowledgeGraph& kg, const std::filesystem::path& path);

}  // namespace kgcr

#endif  // KGCR_KG_KNOWLEDGE_GRAPH_H_
