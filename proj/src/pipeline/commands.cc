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

#include "pipeline/commands.h"

#include <algorithm>
#include <map>
#include <optional>

#include "embed/model.h"
#include "pipeline/config.h"
#include "pipeline/pipeline.h"
#include "util/error.h"
#include "util/text.h"

namespace kgcr {
namespace {

struct ParsedOptions {
  PipelineConfig config;
  std::map<std::string, std::string> extra;
};

ParsedOptions Parse(std::string_view command, const CommandOptions& options) {
  static const std::map<std::string, std::vector<std::string>> kExtraKeys = {
      {"mine", {"rules"}},
      {"evaluate", {"model_file"}},
      {"analyze", {"original", "extended"}},
  };
  std::vector<std::string> allowed;
  if (auto it = kExtraKeys.find(std::string(command)); it != kExtraKeys.end()) {
    allowed = it->second;
  }

  ParsedOptions parsed;
  for (const auto& [key, value] : options) {
    if (key == "config") ApplyConfigFile(parsed.config, value);
  }
  for (const auto& [key, value] : options) {
    if (key == "config") continue;
    if (std::find(allowed.begin(), allowed.end(), key) != allowed.end()) {
      parsed.extra[key] = value;
      continue;
    }
    ApplyConfigValue(parsed.config, key, value);
  }
  return parsed;
}

std::string ReportLine(std::string_view model, const EvalReport& r) {
  std::string line = std::string(model) + "\t" + FormatDouble(r.mr) + "\t" +
                     FormatDouble(r.mrr);
  for (int k : kHitsAt) {
    auto it = r.hits.find(k);
    line += "\t" + FormatDouble(it == r.hits.end() ? 0.0 : it->second);
  }
  return line + "\t" + std::to_string(r.n_queries) + "\t" +
         std::to_string(r.candidate_count) + "\n";
}

constexpr std::string_view kReportHeader =
    "model\tmr\tmrr\thits@1\thits@3\thits@10\tqueries\tcandidates\n";

void Mine(const ParsedOptions& p, std::string& output) {
  const KnowledgeGraph kg = LoadDataset(p.config);
  auto it = p.extra.find("rules");
  if (it == p.extra.end()) {
    const auto rules = StageMine(kg, p.config);
    output += std::to_string(rules.size()) + " rules -> " +
              layout::OriginalRules(p.config.out).string() + "\n";
    return;
  }
  MiningConfig mining = p.config.mining;
  mining.threads = p.config.threads;
  const auto rules = kgcr::Mine(kg, mining);
  WriteRuleFile(rules, it->second);
  output += std::to_string(rules.size()) + " rules -> " + it->second + "\n";
}

void Train(const ParsedOptions& p, std::string& output) {
  const KnowledgeGraph kg = LoadDataset(p.config);
  output += kReportHeader;
  for (ModelKind kind : p.config.models) {
    const TrainOutcome t = StageTrain(kg, kind, p.config);
    output += ReportLine(ModelKindName(kind), t.test);
  }
}

void Evaluate(const ParsedOptions& p, std::string& output) {
  const KnowledgeGraph kg = LoadDataset(p.config);
  output += kReportHeader;
  auto it = p.extra.find("model_file");
  if (it != p.extra.end()) {
    const EmbeddingModel model = LoadModel(it->second);
    output += ReportLine(ModelKindName(model.kind()),
                         EvaluateOnTestSplit(kg, model, p.config));
    return;
  }
  for (ModelKind kind : p.config.models) {
    const EmbeddingModel model = LoadModel(layout::ModelFile(p.config.out, kind));
    output += ReportLine(ModelKindName(kind), EvaluateOnTestSplit(kg, model, p.config));
  }
}

void Extend(const ParsedOptions& p, std::string& output) {
  const KnowledgeGraph kg = LoadDataset(p.config);
  StageExtendAll(kg, p.config);
  output += "extensions -> " + (p.config.out / "extensions").string() + "\n";
}

void Analyze(const ParsedOptions& p, std::string& output) {
  const bool has_original = p.extra.contains("original");
  const bool has_extended = p.extra.contains("extended");
  if (has_original != has_extended) {
    Fail(ErrorCode::kInvalidArgument,
         "--original and --extended must be given together");
  }
  if (has_original) {
    AnalyzeRuleFiles(p.extra.at("original"), p.extra.at("extended"), p.config.out);
  } else {
    const KnowledgeGraph kg = LoadDataset(p.config);
    StageAnalyze(kg, p.config);
    WriteManifest(p.config.out);
  }
  output += "analysis -> " + layout::Analysis(p.config.out).string() + "\n";
}

void Pipeline(const ParsedOptions& p, std::string& output) {
  RunPipeline(p.config);
  output += "pipeline complete -> " + p.config.out.string() + "\n";
}

}  // namespace

const std::vector<std::string>& CommandNames() {
  static const std::vector<std::string> names = {"mine",   "train",   "evaluate",
                                                 "extend", "analyze", "pipeline"};
  return names;
}

void RunCommand(std::string_view command, const CommandOptions& options,
                std::string& output) {
  const ParsedOptions parsed = Parse(command, options);
  if (command == "mine") return Mine(parsed, output);
  if (command == "train") return Train(parsed, output);
  if (command == "evaluate") return Evaluate(parsed, output);
  if (command == "extend") return Extend(parsed, output);
  if (command == "analyze") return Analyze(parsed, output);
  if (command == "pipeline") return Pipeline(parsed, output);
  Fail(ErrorCode::kInvalidArgument, "unknown command '" + std::string(command) + "'");
}

}  // namespace kgcr
