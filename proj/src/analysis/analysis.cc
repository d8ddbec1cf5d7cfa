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

#include "analysis/analysis.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "rules/rule.h"
#include "util/error.h"
#include "util/text.h"

namespace kgcr {
namespace {

std::vector<double> AverageRanks(std::span<const double> v) {
  std::vector<size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double Quantile(const std::vector<double>& sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<size_t>(std::floor(h));
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

RuleSet RuleTexts(std::span<const ScoredRule> rules) {
  RuleSet out;
  for (const ScoredRule& r : rules) out.insert(r.text);
  return out;
}

int PercentHalfUp(uint64_t part, uint64_t whole) {
  if (whole == 0) return 0;
  return static_cast<int>((200 * part + whole) / (2 * whole));
}

RuleDiff DiffRules(const RuleSet& original, const RuleSet& extended) {
  RuleDiff d;
  std::set_intersection(original.begin(), original.end(), extended.begin(),
                        extended.end(), std::back_inserter(d.kept));
  std::set_difference(extended.begin(), extended.end(), original.begin(),
                      original.end(), std::back_inserter(d.added));
  std::set_difference(original.begin(), original.end(), extended.begin(),
                      extended.end(), std::back_inserter(d.missed));
  d.kept_percent = PercentHalfUp(d.kept.size(), extended.size());
  d.added_percent = PercentHalfUp(d.added.size(), extended.size());
  d.missed_percent = PercentHalfUp(d.missed.size(), original.size());
  return d;
}

std::vector<ScoredRule> RescoreRules(std::span<const ScoredRule> rules,
                                     const KnowledgeGraph& kg) {
  RuleEvaluator eval(kg);
  std::vector<ScoredRule> out;
  out.reserve(rules.size());
  for (const ScoredRule& in : rules) {
    const std::string text = CanonicalRuleText(in.text);
    const auto bound = BindRule(ParseRule(text), kg);
    if (!bound) {
      ScoredRule zero;
      zero.text = text;
      out.push_back(std::move(zero));
      continue;
    }
    out.push_back(eval.Score(*bound));
  }
  return out;
}

size_t RuleFrequency(const std::string& rule_text,
                     std::span<const RuleSet> extensions) {
  const std::string canonical = CanonicalRuleText(rule_text);
  return static_cast<size_t>(std::count_if(
      extensions.begin(), extensions.end(),
      [&](const RuleSet& s) { return s.count(canonical) > 0; }));
}

Correlation Spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    Fail(ErrorCode::kInvalidArgument, "spearman inputs differ in length");
  }
  if (x.size() < 3) {
    Fail(ErrorCode::kInvalidArgument, "spearman needs at least three pairs");
  }
  const auto rx = AverageRanks(x);
  const auto ry = AverageRanks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    Fail(ErrorCode::kUndefined, "spearman is undefined for constant input");
  }
  Correlation c;
  c.n = x.size();
  c.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  if (std::abs(c.rho) == 1.0) {
    c.p_value = 0.0;
  } else {
    const double df = n - 2.0;
    const double t = c.rho * std::sqrt(df / (1.0 - c.rho * c.rho));
    boost::math::students_t dist(df);
    c.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  }
  return c;
}

OverlapReport Overlap(const std::map<std::string, RuleSet>& sets) {
  if (sets.size() < 2 || sets.size() > 4) {
    Fail(ErrorCode::kInvalidArgument, "overlap needs between 2 and 4 sets");
  }
  OverlapReport report;
  std::vector<const RuleSet*> members;
  RuleSet all;
  for (const auto& [name, set] : sets) {
    report.names.push_back(name);
    members.push_back(&set);
    all.insert(set.begin(), set.end());
  }
  const unsigned k = static_cast<unsigned>(members.size());
  std::vector<uint64_t> counts(1u << k, 0);
  for (const std::string& rule : all) {
    unsigned mask = 0;
    for (unsigned i = 0; i < k; ++i) {
      if (members[i]->count(rule)) mask |= 1u << i;
    }
    ++counts[mask];
  }
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    OverlapRegion region;
    region.mask = mask;
    for (unsigned i = 0; i < k; ++i) {
      if (!(mask & (1u << i))) continue;
      if (!region.label.empty()) region.label += "&";
      region.label += report.names[i];
    }
    region.count = counts[mask];
    report.regions.push_back(std::move(region));
  }
  report.union_size = all.size();
  return report;
}

DistributionSummary Distribution(std::span<const double> values) {
  if (values.empty()) {
    Fail(ErrorCode::kInvalidArgument, "distribution of an empty list");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  DistributionSummary d;
  d.n = sorted.size();
  d.min = sorted.front();
  d.max = sorted.back();
  d.q1 = Quantile(sorted, 0.25);
  d.median = Quantile(sorted, 0.5);
  d.q3 = Quantile(sorted, 0.75);
  d.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
           static_cast<double>(sorted.size());
  const double iqr = d.q3 - d.q1;
  const double lo = d.q1 - 1.5 * iqr;
  const double hi = d.q3 + 1.5 * iqr;
  d.whisker_low = d.max;
  d.whisker_high = d.min;
  for (double v : sorted) {
    if (v < lo || v > hi) {
      d.outliers.push_back(v);
    } else {
      d.whisker_low = std::min(d.whisker_low, v);
      d.whisker_high = std::max(d.whisker_high, v);
    }
  }
  return d;
}

std::string CsvField(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string FormatDiffCsv(std::span<const DiffRow> rows) {
  std::string out =
      "extension,kept,new,missed,kept_percent,new_percent,missed_percent\n";
  for (const DiffRow& row : rows) {
    const RuleDiff& d = row.diff;
    out += CsvField(row.extension) + "," + std::to_string(d.kept.size()) + "," +
           std::to_string(d.added.size()) + "," + std::to_string(d.missed.size()) +
           "," + std::to_string(d.kept_percent) + "," +
           std::to_string(d.added_percent) + "," +
           std::to_string(d.missed_percent) + "\n";
  }
  return out;
}

std::string FormatOverlapCsv(const OverlapReport& report) {
  std::string out = "region,count\n";
  for (const OverlapRegion& r : report.regions) {
    out += CsvField(r.label) + "," + std::to_string(r.count) + "\n";
  }
  return out;
}

std::string FormatDistributionCsv(std::span<const DistributionRow> rows) {
  std::string out =
      "group,n,min,q1,median,q3,max,mean,whisker_low,whisker_high,outliers\n";
  for (const DistributionRow& row : rows) {
    const DistributionSummary& d = row.summary;
    out += CsvField(row.group) + "," + std::to_string(d.n) + "," +
           FormatDouble(d.min) + "," + FormatDouble(d.q1) + "," +
           FormatDouble(d.median) + "," + FormatDouble(d.q3) + "," +
           FormatDouble(d.max) + "," + FormatDouble(d.mean) + "," +
           FormatDouble(d.whisker_low) + "," + FormatDouble(d.whisker_high) + "," +
           std::to_string(d.outliers.size()) + "\n";
  }
  return out;
}

std::string FormatFrequencyCsv(std::span<const FrequencyRow> rows) {
  std::string out = "rule,frequency,pca_on_original\n";
  for (const FrequencyRow& row : rows) {
    out += CsvField(row.rule) + "," + std::to_string(row.frequency) + "," +
           FormatDouble(row.pca_on_original) + "\n";
  }
  return out;
}

std::string FormatCorrelationCsv(const Correlation& c) {
  return "rho,p_value,n\n" + FormatDouble(c.rho) + "," + FormatDouble(c.p_value) +
         "," + std::to_string(c.n) + "\n";
}

}  // namespace kgcr
