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

#include "rules/rule_miner.h"

#include <algorithm>
#include <array>
#include <set>
#include <unordered_map>

#include "util/error.h"
#include "util/files.h"
#include "util/parallel.h"
#include "util/text.h"

namespace kgcr {
namespace {

constexpr EntityId kUnbound = UINT32_MAX;

bool BodyUses(std::span<const Atom> body, Variable v) {
  for (const Atom& a : body) {
    if (a.subject == v || a.object == v) return true;
  }
  return false;
}

// Rules obtained from `rule` by adding one body atom that shares at least one
// variable with it. Candidates that could no longer be closed within the
// atom budget are skipped.
std::vector<Rule> Refinements(const Rule& rule, const KnowledgeGraph& kg,
                              size_t max_atoms) {
  std::vector<Rule> out;
  const size_t var_count = rule.variable_count();
  const auto fresh = static_cast<Variable>(var_count);
  const size_t new_size = rule.atom_count() + 1;
  const size_t remaining = max_atoms - new_size;
  const std::vector<int> occurrences = rule.VariableOccurrences();

  for (RelationId b = 0; b < kg.relation_count(); ++b) {
    if (kg.RelationSize(b) == 0) continue;
    for (Variable u = 0; u <= fresh; ++u) {
      for (Variable v = 0; v <= fresh; ++v) {
        if (u == v) continue;
        if (fresh >= kMaxVariables && (u == fresh || v == fresh)) continue;
        const Atom atom{b, u, v};
        if (rule.Contains(atom)) continue;
        size_t open = 0;
        for (Variable w = 0; w < var_count; ++w) {
          const int count = occurrences[w] + (w == u) + (w == v);
          if (count == 1) ++open;
        }
        if (u == fresh || v == fresh) ++open;
        if (open > 2 * remaining) continue;
        Rule refined = rule;
        refined.body.push_back(atom);
        out.push_back(std::move(refined));
      }
    }
  }
  return out;
}

}  // namespace

void MiningConfig::Validate() const {
  if (max_atoms < 2 || max_atoms > 6) {
    Fail(ErrorCode::kInvalidArgument, "max_atoms must be in [2, 6]");
  }
  if (!(min_head_coverage >= 0.0) || !(min_pca_confidence >= 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "mining thresholds must be non-negative");
  }
}

bool RuleEvaluator::Enumerate(std::span<const Atom> body, uint32_t done_mask,
                              Bindings& bindings, const Visitor& visit) const {
  const uint32_t full = (1u << body.size()) - 1;
  if (done_mask == full) return visit(bindings);

  // Most constrained atom first; ties go to the smaller relation.
  size_t pick = body.size();
  int best_bound = -1;
  size_t best_size = 0;
  for (size_t i = 0; i < body.size(); ++i) {
    if (done_mask & (1u << i)) continue;
    const int bound = (bindings[body[i].subject] != kUnbound) +
                      (bindings[body[i].object] != kUnbound);
    const size_t size = kg_.RelationSize(body[i].relation);
    if (bound > best_bound || (bound == best_bound && size < best_size)) {
      pick = i;
      best_bound = bound;
      best_size = size;
    }
  }
  const Atom& atom = body[pick];
  const uint32_t next_mask = done_mask | (1u << pick);
  EntityId& s = bindings[atom.subject];
  EntityId& o = bindings[atom.object];

  if (s != kUnbound && o != kUnbound) {
    if (!kg_.Contains(s, atom.relation, o)) return true;
    return Enumerate(body, next_mask, bindings, visit);
  }
  if (s != kUnbound) {
    for (EntityId value : kg_.ObjectsOf(atom.relation, s)) {
      o = value;
      const bool go_on = Enumerate(body, next_mask, bindings, visit);
      if (!go_on) {
        o = kUnbound;
        return false;
      }
    }
    o = kUnbound;
    return true;
  }
  if (o != kUnbound) {
    for (EntityId value : kg_.SubjectsOf(atom.relation, o)) {
      s = value;
      const bool go_on = Enumerate(body, next_mask, bindings, visit);
      if (!go_on) {
        s = kUnbound;
        return false;
      }
    }
    s = kUnbound;
    return true;
  }
  for (const Triple& t : kg_.RelationTriples(atom.relation)) {
    s = t.subject;
    o = t.object;
    const bool go_on = Enumerate(body, next_mask, bindings, visit);
    if (!go_on) {
      s = o = kUnbound;
      return false;
    }
  }
  s = o = kUnbound;
  return true;
}

bool RuleEvaluator::Satisfiable(std::span<const Atom> body,
                                Bindings& bindings) const {
  return !Enumerate(body, 0, bindings,
                    [](const Bindings&) { return false; });
}

uint64_t RuleEvaluator::Support(const Rule& rule) const {
  const auto head_triples = kg_.RelationTriples(rule.head.relation);
  if (rule.body.empty()) return head_triples.size();

  const bool uses_x = BodyUses(rule.body, kVarX);
  const bool uses_y = BodyUses(rule.body, kVarY);
  Bindings bindings;
  bindings.fill(kUnbound);
  uint64_t support = 0;

  if (uses_x && uses_y) {
    for (const Triple& t : head_triples) {
      bindings[kVarX] = t.subject;
      bindings[kVarY] = t.object;
      if (Satisfiable(rule.body, bindings)) ++support;
    }
    return support;
  }
  if (!uses_x && !uses_y) {
    return Satisfiable(rule.body, bindings) ? head_triples.size() : 0;
  }
  // Only one head variable is constrained by the body: decide once per value.
  const bool by_subject = uses_x;
  const Variable var = by_subject ? kVarX : kVarY;
  const Adjacency& index = by_subject ? kg_.SubjectIndex(rule.head.relation)
                                      : kg_.ObjectIndex(rule.head.relation);
  for (size_t k = 0; k < index.keys().size(); ++k) {
    bindings[kVarX] = bindings[kVarY] = kUnbound;
    bindings[var] = index.keys()[k];
    if (Satisfiable(rule.body, bindings)) support += index.ValuesAt(k).size();
  }
  return support;
}

uint64_t RuleEvaluator::PcaBodySize(const Rule& rule) const {
  const RelationId r = rule.head.relation;
  if (kg_.RelationSize(r) == 0) return 0;
  if (!BodyUses(rule.body, kVarX) || !BodyUses(rule.body, kVarY)) {
    Fail(ErrorCode::kInvalidArgument,
         "PCA confidence needs both head variables in the body");
  }
  const bool subject_side = kg_.Stats(r).SubjectFunctional();
  const Variable anchor = subject_side ? kVarX : kVarY;
  const Variable other = subject_side ? kVarY : kVarX;
  const auto witnesses = subject_side ? kg_.SubjectsWith(r) : kg_.ObjectsWith(r);

  Bindings bindings;
  bindings.fill(kUnbound);
  std::vector<EntityId> partners;
  uint64_t total = 0;
  for (EntityId w : witnesses) {
    bindings[anchor] = w;
    partners.clear();
    Enumerate(rule.body, 0, bindings, [&](const Bindings& b) {
      partners.push_back(b[other]);
      return true;
    });
    std::sort(partners.begin(), partners.end());
    total += static_cast<uint64_t>(
        std::unique(partners.begin(), partners.end()) - partners.begin());
  }
  return total;
}

std::vector<Triple> RuleEvaluator::Predictions(const Rule& rule) const {
  if (!BodyUses(rule.body, kVarX) || !BodyUses(rule.body, kVarY)) {
    Fail(ErrorCode::kInvalidArgument,
         "predictions need both head variables in the body");
  }
  Bindings bindings;
  bindings.fill(kUnbound);
  std::vector<Triple> out;
  Enumerate(rule.body, 0, bindings, [&](const Bindings& b) {
    out.push_back({b[kVarX], rule.head.relation, b[kVarY]});
    return true;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ScoredRule RuleEvaluator::Score(const Rule& rule) const {
  ScoredRule scored;
  scored.rule = Canonicalize(rule, kg_.relations());
  scored.text = RenderRule(scored.rule, kg_.relations());
  scored.support = Support(scored.rule);
  const size_t head_size = kg_.RelationSize(rule.head.relation);
  scored.head_coverage =
      head_size == 0 ? 0.0
                     : static_cast<double>(scored.support) /
                           static_cast<double>(head_size);
  scored.pca_body_size = PcaBodySize(scored.rule);
  scored.pca_confidence =
      scored.pca_body_size == 0
          ? 0.0
          : static_cast<double>(scored.support) /
                static_cast<double>(scored.pca_body_size);
  return scored;
}

void SortRules(std::vector<ScoredRule>& rules) {
  std::sort(rules.begin(), rules.end(),
            [](const ScoredRule& a, const ScoredRule& b) {
              if (a.pca_confidence != b.pca_confidence) {
                return a.pca_confidence > b.pca_confidence;
              }
              if (a.head_coverage != b.head_coverage) {
                return a.head_coverage > b.head_coverage;
              }
              return a.text < b.text;
            });
}

std::vector<ScoredRule> Mine(const KnowledgeGraph& kg,
                             const MiningConfig& config) {
  config.Validate();
  std::vector<ScoredRule> out;
  if (kg.empty()) return out;

  RuleEvaluator evaluator(kg);
  auto passes = [&](uint64_t support, size_t head_size) {
    const double hc =
        static_cast<double>(support) / static_cast<double>(head_size);
    return support >= config.min_support && hc >= config.min_head_coverage;
  };

  std::vector<Rule> frontier;
  for (RelationId r = 0; r < kg.relation_count(); ++r) {
    const size_t size = kg.RelationSize(r);
    if (size == 0 || !passes(size, size)) continue;
    frontier.push_back(Rule{{}, Atom{r, kVarX, kVarY}});
  }

  std::set<Rule> seen;
  for (size_t atoms = 2; atoms <= config.max_atoms && !frontier.empty();
       ++atoms) {
    std::vector<Rule> candidates;
    for (const Rule& rule : frontier) {
      for (Rule& refined : Refinements(rule, kg, config.max_atoms)) {
        Rule canonical = Canonicalize(refined, kg.relations());
        if (seen.insert(canonical).second) {
          candidates.push_back(std::move(canonical));
        }
      }
    }

    struct Outcome {
      bool keep = false;
      bool emit = false;
      ScoredRule scored;
    };
    std::vector<Outcome> outcomes(candidates.size());
    ParallelFor(candidates.size(), config.threads, [&](size_t i) {
      const Rule& rule = candidates[i];
      const uint64_t support = evaluator.Support(rule);
      Outcome& outcome = outcomes[i];
      outcome.keep = passes(support, kg.RelationSize(rule.head.relation));
      if (!outcome.keep || !rule.IsClosed()) return;
      outcome.scored = evaluator.Score(rule);
      outcome.emit =
          outcome.scored.pca_confidence >= config.min_pca_confidence;
    });

    frontier.clear();
    for (size_t i = 0; i < candidates.size(); ++i) {
      if (!outcomes[i].keep) continue;
      if (atoms < config.max_atoms) frontier.push_back(candidates[i]);
      if (outcomes[i].emit) out.push_back(std::move(outcomes[i].scored));
    }
  }
  SortRules(out);
  return out;
}

std::string FormatRuleFile(std::span<const ScoredRule> rules) {
  std::string out = "rule\tsupport\thead_coverage\tpca_confidence\tpca_body_size\n";
  for (const ScoredRule& r : rules) {
    out += r.text;
    out += '\t';
    out += std::to_string(r.support);
    out += '\t';
    out += FormatDouble(r.head_coverage);
    out += '\t';
    out += FormatDouble(r.pca_confidence);
    out += '\t';
    out += std::to_string(r.pca_body_size);
    out += '\n';
  }
  return out;
}

void WriteRuleFile(std::span<const ScoredRule> rules,
                   const std::filesystem::path& path) {
  WriteFile(path, FormatRuleFile(rules));
}

std::vector<ScoredRule> ParseRuleFile(std::string_view text,
                                      std::string_view source_name) {
  std::vector<ScoredRule> rules;
  size_t line_number = 0;
  size_t start = 0;
  bool header_seen = false;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    if (Trim(line).empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line.substr(0, 5) == "rule\t") continue;
    }
    auto fields = Split(line, '\t');
    if (fields.size() != 5) {
      Fail(ErrorCode::kParse, std::string(source_name) + ":" +
                                  std::to_string(line_number) +
                                  ": expected 5 tab-separated fields");
    }
    ScoredRule r;
    r.text = CanonicalRuleText(fields[0]);
    r.support = ParseUint(fields[1], "support");
    r.head_coverage = ParseDouble(fields[2], "head_coverage");
    r.pca_confidence = ParseDouble(fields[3], "pca_confidence");
    r.pca_body_size = ParseUint(fields[4], "pca_body_size");
    rules.push_back(std::move(r));
  }
  return rules;
}

std::vector<ScoredRule> ReadRuleFile(const std::filesystem::path& path) {
  return ParseRuleFile(ReadFile(path), path.string());
}

}  // namespace kgcr
