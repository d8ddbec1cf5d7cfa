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

#include "rules/rule.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "util/error.h"
#include "util/text.h"

namespace kgcr {
namespace {

constexpr std::string_view kVariableNames = "xyzwvuts";

struct NamedAtomLess {
  const Dictionary& relations;
  bool operator()(const Atom& a, const Atom& b) const {
    if (a.relation != b.relation) {
      return relations.Name(a.relation) < relations.Name(b.relation);
    }
    if (a.subject != b.subject) return a.subject < b.subject;
    return a.object < b.object;
  }
};

bool BodyLess(const std::vector<Atom>& a, const std::vector<Atom>& b,
              const NamedAtomLess& less) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      less);
}

}  // namespace

size_t Rule::variable_count() const {
  Variable max_var = std::max(head.subject, head.object);
  for (const Atom& a : body) max_var = std::max({max_var, a.subject, a.object});
  return static_cast<size_t>(max_var) + 1;
}

std::vector<int> Rule::VariableOccurrences() const {
  std::vector<int> counts(variable_count(), 0);
  ++counts[head.subject];
  ++counts[head.object];
  for (const Atom& a : body) {
    ++counts[a.subject];
    ++counts[a.object];
  }
  return counts;
}

bool Rule::IsClosed() const {
  for (int c : VariableOccurrences()) {
    if (c == 1) return false;
  }
  return true;
}

bool Rule::Contains(const Atom& atom) const {
  if (atom == head) return true;
  return std::find(body.begin(), body.end(), atom) != body.end();
}

Rule Canonicalize(const Rule& rule, const Dictionary& relations) {
  // Compact variable ids to 0..k-1 keeping x and y in place.
  std::vector<int> remap(kMaxVariables, -1);
  remap[rule.head.subject] = kVarX;
  remap[rule.head.object] = kVarY;
  int next = 2;
  for (const Atom& a : rule.body) {
    for (Variable v : {a.subject, a.object}) {
      if (remap[v] < 0) remap[v] = next++;
    }
  }
  const int fresh = next - 2;

  NamedAtomLess less{relations};
  std::vector<int> perm(fresh);
  std::iota(perm.begin(), perm.end(), 2);
  Rule best;
  bool have_best = false;
  do {
    Rule candidate;
    candidate.head = {rule.head.relation, kVarX, kVarY};
    auto label = [&](Variable v) {
      const int compact = remap[v];
      return static_cast<Variable>(compact < 2 ? compact : perm[compact - 2]);
    };
    for (const Atom& a : rule.body) {
      candidate.body.push_back({a.relation, label(a.subject), label(a.object)});
    }
    std::sort(candidate.body.begin(), candidate.body.end(), less);
    if (!have_best || BodyLess(candidate.body, best.body, less)) {
      best = std::move(candidate);
      have_best = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::string VariableName(Variable v) {
  if (v < kVariableNames.size()) return std::string(1, kVariableNames[v]);
  return "v" + std::to_string(v);
}

std::string RenderRule(const Rule& rule, const Dictionary& relations) {
  const Rule canonical = Canonicalize(rule, relations);
  auto atom_text = [&](const Atom& a) {
    return relations.Name(a.relation) + "(" + VariableName(a.subject) + "," +
           VariableName(a.object) + ")";
  };
  std::string out;
  for (size_t i = 0; i < canonical.body.size(); ++i) {
    if (i > 0) out += " & ";
    out += atom_text(canonical.body[i]);
  }
  out += " => ";
  out += atom_text(canonical.head);
  return out;
}

SymbolicRule ParseRule(std::string_view text) {
  const std::string original(text);
  auto fail = [&](const std::string& why) {
    Fail(ErrorCode::kParse, "cannot parse rule '" + original + "': " + why);
  };
  const size_t arrow = text.rfind("=>");
  if (arrow == std::string_view::npos) fail("missing '=>'");

  struct RawAtom {
    std::string relation;
    std::string subject;
    std::string object;
  };
  auto parse_atom = [&](std::string_view atom) {
    atom = Trim(atom);
    if (atom.empty() || atom.back() != ')') fail("atom must end with ')'");
    const size_t open = atom.rfind('(');
    if (open == std::string_view::npos || open == 0) fail("malformed atom");
    auto args = Split(atom.substr(open + 1, atom.size() - open - 2), ',');
    if (args.size() != 2) fail("atoms must have two arguments");
    RawAtom raw{std::string(Trim(atom.substr(0, open))),
                std::string(Trim(args[0])), std::string(Trim(args[1]))};
    if (raw.relation.empty() || raw.subject.empty() || raw.object.empty()) {
      fail("empty atom component");
    }
    if (raw.subject == raw.object) fail("atoms may not repeat a variable");
    return raw;
  };

  const RawAtom head = parse_atom(text.substr(arrow + 2));
  std::vector<RawAtom> body;
  std::string_view body_text = Trim(text.substr(0, arrow));
  if (body_text.empty()) fail("empty body");
  size_t start = 0;
  while (true) {
    const size_t amp = body_text.find(" & ", start);
    body.push_back(parse_atom(body_text.substr(
        start, amp == std::string_view::npos ? std::string_view::npos
                                             : amp - start)));
    if (amp == std::string_view::npos) break;
    start = amp + 3;
  }

  std::map<std::string, Variable> vars;
  auto var_of = [&](const std::string& name) {
    auto it = vars.find(name);
    if (it != vars.end()) return it->second;
    if (vars.size() >= kMaxVariables) fail("too many variables");
    const auto v = static_cast<Variable>(vars.size());
    vars.emplace(name, v);
    return v;
  };
  SymbolicRule rule;
  rule.head = {head.relation, var_of(head.subject), var_of(head.object)};
  for (const RawAtom& a : body) {
    rule.body.push_back({a.relation, var_of(a.subject), var_of(a.object)});
  }
  return rule;
}

std::string CanonicalRuleText(std::string_view text) {
  const SymbolicRule parsed = ParseRule(text);
  Dictionary names;
  Rule rule;
  rule.head = {names.Intern(parsed.head.relation), parsed.head.subject,
               parsed.head.object};
  for (const SymbolicAtom& a : parsed.body) {
    rule.body.push_back({names.Intern(a.relation), a.subject, a.object});
  }
  return RenderRule(rule, names);
}

std::optional<Rule> BindRule(const SymbolicRule& rule, const KnowledgeGraph& kg) {
  auto bind = [&](const SymbolicAtom& a) -> std::optional<Atom> {
    auto id = kg.relations().Find(a.relation);
    if (!id) return std::nullopt;
    return Atom{*id, a.subject, a.object};
  };
  auto head = bind(rule.head);
  if (!head) return std::nullopt;
  Rule bound;
  bound.head = *head;
  for (const SymbolicAtom& a : rule.body) {
    auto atom = bind(a);
    if (!atom) return std::nullopt;
    bound.body.push_back(*atom);
  }
  return Canonicalize(bound, kg.relations());
}

}  // namespace kgcr
