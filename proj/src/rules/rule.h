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

// Closed Horn rules over binary relations.
//
// Variables are small integers. The head is always r(x, y) with x = 0 and
// y = 1; body atoms may introduce further variables (z = 2, w = 3, ...).
// Atoms never repeat a variable, and no rule contains the same atom twice.

#ifndef KGCR_RULES_RULE_H_
#define KGCR_RULES_RULE_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kg/knowledge_graph.h"

namespace kgcr {

using Variable = uint8_t;

inline constexpr Variable kVarX = 0;
inline constexpr Variable kVarY = 1;
inline constexpr size_t kMaxVariables = 8;

struct Atom {
  RelationId relation = 0;
  Variable subject = 0;
  Variable object = 0;

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

struct Rule {
  std::vector<Atom> body;
  Atom head;

  size_t atom_count() const { return body.size() + 1; }
  size_t variable_count() const;
  // Occurrences of each variable across head and body.
  std::vector<int> VariableOccurrences() const;
  // Every variable occurs in at least two atoms.
  bool IsClosed() const;
  bool Contains(const Atom& atom) const;

  friend auto operator<=>(const Rule&, const Rule&) = default;
};

// Canonical form: head variables stay (x, y); the remaining variables are
// relabelled so that the body, sorted by (relation name, subject, object), is
// lexicographically smallest. Two rules are equal iff their canonical forms
// are equal. Names rather than ids drive the ordering so the result does not
// depend on dictionary assignment order.
Rule Canonicalize(const Rule& rule, const Dictionary& relations);

// "b1(x,z) & b2(z,y) => h(x,y)"; the input is canonicalised first.
std::string RenderRule(const Rule& rule, const Dictionary& relations);

std::string VariableName(Variable v);

// Rule text with relation names instead of ids, as read from a rule file.
struct SymbolicAtom {
  std::string relation;
  Variable subject = 0;
  Variable object = 0;
};

struct SymbolicRule {
  std::vector<SymbolicAtom> body;
  SymbolicAtom head;
};

// Parses RenderRule output (body atoms joined by " & ", then " => ", then the
// head). Variables are numbered by first occurrence, head first. Throws
// kParse on malformed text or on rules outside the supported language.
SymbolicRule ParseRule(std::string_view text);

// Canonical rendering of rule text without reference to a KG.
std::string CanonicalRuleText(std::string_view text);

// Resolves relation names against `kg`; nullopt when some relation is absent.
std::optional<Rule> BindRule(const SymbolicRule& rule, const KnowledgeGraph& kg);

}  // namespace kgcr

#endif  // KGCR_RULES_RULE_H_
