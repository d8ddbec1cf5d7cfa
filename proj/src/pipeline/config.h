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

#ifndef KGCR_PIPELINE_CONFIG_H_
#define KGCR_PIPELINE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "completion/completion.h"
#include "embed/evaluation.h"
#include "embed/model.h"
#include "rules/rule_miner.h"

namespace kgcr {

struct PipelineConfig {
  std::vector<std::string> dataset;    // TSV files, concatenated
  std::vector<std::string> relations;  // load filter; empty keeps all
  std::vector<ModelKind> models = {ModelKind::kTransE, ModelKind::kDistMult,
                                   ModelKind::kComplEx,
                                   ModelKind::kRandomBaseline};
  std::vector<StrategyKind> strategies = {
      StrategyKind::kRandom, StrategyKind::kMostFrequent,
      StrategyKind::kLeastFrequent, StrategyKind::kProbabilistic};
  std::vector<uint64_t> cutoffs = {1, 4, 7};
  size_t entities = 1000;

  MiningConfig mining;

  SearchSpace space;
  size_t trials = 10;
  size_t eval_candidates = 1000;
  double valid_fraction = 0.05;
  double test_fraction = 0.05;
  NormKind norm = NormKind::kL1;

  uint64_t seed = 0;
  std::filesystem::path out = "kgcr_out";
  size_t threads = 1;

  void Validate() const;
};

// Sets one key. Keys match the config-file keys and the CLI flag names;
// list values are comma-separated. Throws kInvalidArgument for unknown keys
// and kParse for malformed values.
void ApplyConfigValue(PipelineConfig& config, std::string_view key,
                      std::string_view value);

// "key = value" lines; blank lines and lines starting with '#' are skipped.
void ApplyConfigText(PipelineConfig& config, std::string_view text,
                     std::string_view source_name);
void ApplyConfigFile(PipelineConfig& config, const std::filesystem::path& path);

// Every recognised key, in the order the config file documents them.
const std::vector<std::string>& ConfigKeys();

// The effective configuration as config-file text.
std::string FormatConfig(const PipelineConfig& config);

}  // namespace kgcr

#endif  // KGCR_PIPELINE_CONFIG_H_
