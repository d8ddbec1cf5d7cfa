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

#ifndef KGCR_RULES_RULE_MINER_H_
#define KGCR_RULES_RULE_MINER_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kg/knowledge_graph.h"
#include "rules/rule.h"

namespace kgcr {

struct ScoredRule {
  Rule rule;
  std::string text;  // canonical rendering; the identity used across KGs
  uint64_t support = 0;
  double head_coverage = 0.0;
  double pca_confidence = 0.0;
  uint64_t pca_body_size = 0;

  friend bool operator==(const ScoredRule&, const ScoredRule&) = default;
};

struct MiningConfig {
  size_t max_atoms = 3;
  uint64_t min_support = 10;
  double min_head_coverage = 0.01;
  double min_pca_confidence = 0.0;
  size_t threads = 1;

  void Validate() const;
};

// Index-join evaluation of rule quality measures over one KG.
class RuleEvaluator {
 public:
  explicit RuleEvaluator(const KnowledgeGraph& kg) : kg_(kg) {}

  // Distinct head pairs (x, y) with r(x, y) in the KG whose body is
  // satisfiable. Defined for open rules too (anti-monotone refinement bound).
  uint64_t Support(const Rule& rule) const;

  // PCA denominator: distinct (x, y) with a body grounding and a PCA witness
  // on the functional side of the head relation. Requires y to occur in the
  // body (true for closed rules).
  uint64_t PcaBodySize(const Rule& rule) const;

  // sigma(H) for every grounding sigma of the body, deduplicated and sorted.
  std::vector<Triple> Predictions(const Rule& rule) const;

  ScoredRule Score(const Rule& rule) const;

 private:
  using Bindings = std::array<EntityId, kMaxVariables>;
  using Visitor = std::function<bool(const Bindings&)>;

  // Calls visit for every grounding extending `bindings`; stops early when
  // visit returns false. Returns false iff stopped early.
  bool Enumerate(std::span<const Atom> body, uint32_t done_mask,
                 Bindings& bindings, const Visitor& visit) const;
  bool Satisfiable(std::span<const Atom> body, Bindings& bindings) const;

  const KnowledgeGraph& kg_;
};

// Breadth-first refinement search for closed rules (see MiningConfig).
// Output order: PCA confidence desc, head coverage desc, rule text asc.
std::vector<ScoredRule> Mine(const KnowledgeGraph& kg, const MiningConfig& config);

void SortRules(std::vector<ScoredRule>& rules);

// Rule file: TSV with header
// rule  support  head_coverage  pca_confidence  pca_body_size
std::string FormatRuleFile(std::span<const ScoredRule> rules);
void WriteRuleFile(std::span<const ScoredRule> rules,
                   const std::filesystem::path& path);

// Rules read back from a file carry text and scores; `rule` is left empty
// because it can only be resolved against a concrete KG (see BindRule).
std::vector<ScoredRule> ReadRuleFile(const std::filesystem::path& path);
std::vector<ScoredRule> ParseRuleFile(std::string_view text,
                                      std::string_view source_name);

}  // namespace kgcr

#endif  // KGCR_RULES_RULE_MINER_H_
