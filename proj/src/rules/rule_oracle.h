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

#ifndef KGCR_RULES_RULE_ORACLE_H_
#define KGCR_RULES_RULE_ORACLE_H_

#include <vector>

#include "kg/knowledge_graph.h"
#include "rules/rule_miner.h"

namespace kgcr {

inline constexpr size_t kOracleMaxEntities = 50;
inline constexpr size_t kOracleMaxRelations = 6;

// Exhaustive reference miner for small KGs. Enumerates every canonical closed
// rule with at most `max_atoms` (<= 3) atoms and scores it by materialising
// all body groundings from the raw triple list. No thresholds are applied.
// Throws kSizeLimit when the KG exceeds kOracleMaxEntities or
// kOracleMaxRelations, kInvalidArgument for max_atoms outside [2, 3].
std::vector<ScoredRule> OracleMine(const KnowledgeGraph& kg, size_t max_atoms);

// OracleMine followed by the reporting thresholds of `config`; the result is
// directly comparable with Mine(kg, config).
std::vector<ScoredRule> OracleMineFiltered(const KnowledgeGraph& kg,
                                           const MiningConfig& config);

}  // namespace kgcr

#endif  // KGCR_RULES_RULE_ORACLE_H_
