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

// Rule-set comparison and summary statistics. Rules are identified by their
// canonical text throughout, so sets mined from different KGs compare
// directly.

#ifndef KGCR_ANALYSIS_ANALYSIS_H_
#define KGCR_ANALYSIS_ANALYSIS_H_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "kg/knowledge_graph.h"
#include "rules/rule_miner.h"

namespace kgcr {

using RuleSet = std::set<std::string>;

RuleSet RuleTexts(std::span<const ScoredRule> rules);

struct RuleDiff {
  std::vector<std::string> kept;    // in both
  std::vector<std::string> added;   // extension only ("new")
  std::vector<std::string> missed;  // original only
  // Rounded half-up to whole percent. kept and added are relative to the
  // rules mined from the extension, missed to the original rules.
  int kept_percent = 0;
  int added_percent = 0;
  int missed_percent = 0;
};

RuleDiff DiffRules(const RuleSet& original, const RuleSet& extended);

// round(100 * part / whole) with halves rounded up; 0 when whole is 0.
int PercentHalfUp(uint64_t part, uint64_t whole);

// Recomputes the measures of each rule on `kg`. Rules mentioning a relation
// the KG lacks get zero support and confidence. Order is preserved.
std::vector<ScoredRule> RescoreRules(std::span<const ScoredRule> rules,
                                     const KnowledgeGraph& kg);

// Number of sets that contain the canonical form of `rule_text`.
size_t RuleFrequency(const std::string& rule_text,
                     std::span<const RuleSet> extensions);

struct Correlation {
  double rho = 0.0;
  double p_value = 1.0;
  size_t n = 0;
};

// Pearson correlation of average ranks, two-sided p-value from Student's t
// with n - 2 degrees of freedom. Throws kInvalidArgument for mismatched or
// short (< 3) inputs, kUndefined when either input is constant.
Correlation Spearman(std::span<const double> x, std::span<const double> y);

struct OverlapRegion {
  unsigned mask = 0;   // bit i set: inside set i
  std::string label;   // member names joined by '&'
  uint64_t count = 0;  // rules in exactly these sets
};

struct OverlapReport {
  std::vector<std::string> names;
  std::vector<OverlapRegion> regions;  // all 2^k - 1, ascending mask
  uint64_t union_size = 0;
};

// Exact Venn regions over 2 to 4 named sets (kInvalidArgument otherwise).
OverlapReport Overlap(const std::map<std::string, RuleSet>& sets);

struct DistributionSummary {
  size_t n = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double whisker_low = 0.0;   // smallest value >= q1 - 1.5 IQR
  double whisker_high = 0.0;  // largest value <= q3 + 1.5 IQR
  std::vector<double> outliers;
};

// Quartiles by linear interpolation between order statistics. Throws
// kInvalidArgument on empty input.
DistributionSummary Distribution(std::span<const double> values);

// Report files. Every writer emits a header row; fields containing commas or
// quotes are quoted.
struct DiffRow {
  std::string extension;
  RuleDiff diff;
};
std::string FormatDiffCsv(std::span<const DiffRow> rows);

std::string FormatOverlapCsv(const OverlapReport& report);

struct DistributionRow {
  std::string group;
  DistributionSummary summary;
};
std::string FormatDistributionCsv(std::span<const DistributionRow> rows);

struct FrequencyRow {
  std::string rule;
  size_t frequency = 0;
  double pca_on_original = 0.0;
};
std::string FormatFrequencyCsv(std::span<const FrequencyRow> rows);

std::string FormatCorrelationCsv(const Correlation& c);

std::string CsvField(std::string_view text);

}  // namespace kgcr

#endif  // KGCR_ANALYSIS_ANALYSIS_H_
