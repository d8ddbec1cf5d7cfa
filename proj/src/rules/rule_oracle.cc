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

// Deliberately naive: no adjacency indices, no early exits. Everything is
// recomputed from kg.triples() so that it can check RuleEvaluator and Mine.

#include "rules/rule_oracle.h"

#include <array>
#include <optional>
#include <set>
#include <utility>

#include "util/error.h"

namespace kgcr {
namespace {

using Assignment = std::array<std::optional<EntityId>, 3>;

// Binds atom variables to the triple's arguments; false on conflict.
bool Unify(const Atom& atom, const Triple& t, Assignment& a) {
  if (t.relation != atom.relation) return false;
  auto bind = [&](Variable v, EntityId e) {
    if (a[v] && *a[v] != e) return false;
    a[v] = e;
    return true;
  };
  return bind(atom.subject, t.subject) && bind(atom.object, t.object);
}

std::set<std::pair<EntityId, EntityId>> HeadPairs(const Rule& rule,
                                                  std::span<const Triple> all) {
  std::set<std::pair<EntityId, EntityId>> pairs;
  if (rule.body.size() == 1) {
    for (const Triple& t1 : all) {
      Assignment a;
      if (Unify(rule.body[0], t1, a)) pairs.emplace(*a[kVarX], *a[kVarY]);
    }
  } else {
    for (const Triple& t1 : all) {
      Assignment a1;
      if (!Unify(rule.body[0], t1, a1)) continue;
      for (const Triple& t2 : all) {
        Assignment a2 = a1;
        if (Unify(rule.body[1], t2, a2)) pairs.emplace(*a2[kVarX], *a2[kVarY]);
      }
    }
  }
  return pairs;
}

// All atoms over the given variables with two distinct arguments.
std::vector<Atom> AllAtoms(const std::vector<RelationId>& relations,
                           Variable variable_count) {
  std::vector<Atom> atoms;
  for (RelationId r : relations) {
    for (Variable u = 0; u < variable_count; ++u) {
      for (Variable v = 0; v < variable_count; ++v) {
        if (u != v) atoms.push_back({r, u, v});
      }
    }
  }
  return atoms;
}

}  // namespace

std::vector<ScoredRule> OracleMine(const KnowledgeGraph& kg, size_t max_atoms) {
  if (max_atoms < 2 || max_atoms > 3) {
    Fail(ErrorCode::kInvalidArgument, "oracle supports max_atoms 2 or 3");
  }
  if (kg.entity_count() > kOracleMaxEntities ||
      kg.relation_count() > kOracleMaxRelations) {
    Fail(ErrorCode::kSizeLimit, "KG too large for exhaustive rule enumeration");
  }
  std::vector<ScoredRule> out;
  const std::span<const Triple> all = kg.triples();
  if (all.empty()) return out;

  std::set<RelationId> present;
  for (const Triple& t : all) present.insert(t.relation);
  const std::vector<RelationId> relations(present.begin(), present.end());

  std::set<Rule> rules;
  for (RelationId h : relations) {
    const Atom head{h, kVarX, kVarY};
    for (const Atom& b : AllAtoms(relations, 2)) {
      Rule rule{{b}, head};
      if (b != head && rule.IsClosed()) {
        rules.insert(Canonicalize(rule, kg.relations()));
      }
    }
    if (max_atoms < 3) continue;
    const std::vector<Atom> atoms = AllAtoms(relations, 3);
    for (size_t i = 0; i < atoms.size(); ++i) {
      for (size_t j = i + 1; j < atoms.size(); ++j) {
        Rule rule{{atoms[i], atoms[j]}, head};
        if (atoms[i] == head || atoms[j] == head || !rule.IsClosed()) continue;
        rules.insert(Canonicalize(rule, kg.relations()));
      }
    }
  }

  const std::set<Triple> facts(all.begin(), all.end());
  for (const Rule& rule : rules) {
    const RelationId h = rule.head.relation;
    std::set<EntityId> subjects;
    std::set<EntityId> objects;
    uint64_t head_size = 0;
    for (const Triple& t : all) {
      if (t.relation != h) continue;
      ++head_size;
      subjects.insert(t.subject);
      objects.insert(t.object);
    }
    const bool subject_side = subjects.size() >= objects.size();

    const auto predictions = HeadPairs(rule, all);
    uint64_t support = 0;
    uint64_t denominator = 0;
    for (const auto& [x, y] : predictions) {
      if (facts.count(Triple{x, h, y})) ++support;
      if (subject_side ? subjects.count(x) > 0 : objects.count(y) > 0) {
        ++denominator;
      }
    }
    ScoredRule scored;
    scored.rule = rule;
    scored.text = RenderRule(rule, kg.relations());
    scored.support = support;
    scored.head_coverage =
        static_cast<double>(support) / static_cast<double>(head_size);
    scored.pca_body_size = denominator;
    scored.pca_confidence = denominator == 0
                                ? 0.0
                                : static_cast<double>(support) /
                                      static_cast<double>(denominator);
    out.push_back(std::move(scored));
  }
  SortRules(out);
  return out;
}

std::vector<ScoredRule> OracleMineFiltered(const KnowledgeGraph& kg,
                                           const MiningConfig& config) {
  config.Validate();
  std::vector<ScoredRule> out;
  for (ScoredRule& r : OracleMine(kg, config.max_atoms)) {
    if (r.support >= config.min_support &&
        r.head_coverage >= config.min_head_coverage &&
        r.pca_confidence >= config.min_pca_confidence) {
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace kgcr
