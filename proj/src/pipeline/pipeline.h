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

// The four pipeline steps as separately callable stages. Each stage reads
// its inputs from and writes its outputs to a fixed layout under the output
// directory, so running the stages one by one (the CLI subcommands) produces
// the same tree as RunPipeline:
//
//   original_rules.tsv
//   models/<Model>.model, models/<Model>.metrics.tsv
//   extensions/<Model>__<strategy>__c<cutoff>/{added.tsv,meta.txt,rules.tsv}
//   analysis/{diff,overlap,pca_dist,frequency,correlation}.csv
//   manifest.tsv

#ifndef KGCR_PIPELINE_PIPELINE_H_
#define KGCR_PIPELINE_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "completion/completion.h"
#include "embed/evaluation.h"
#include "embed/model.h"
#include "kg/knowledge_graph.h"
#include "pipeline/config.h"
#include "rules/rule_miner.h"
#include "util/error.h"

namespace kgcr {

namespace layout {
std::filesystem::path OriginalRules(const std::filesystem::path& out);
std::filesystem::path ModelFile(const std::filesystem::path& out, ModelKind kind);
std::filesystem::path Metrics(const std::filesystem::path& out, ModelKind kind);
std::string CellName(ModelKind kind, StrategyKind strategy, uint64_t cutoff);
std::filesystem::path CellDir(const std::filesystem::path& out, ModelKind kind,
                              StrategyKind strategy, uint64_t cutoff);
std::filesystem::path Analysis(const std::filesystem::path& out);
std::filesystem::path Manifest(const std::filesystem::path& out);
std::filesystem::path Incomplete(const std::filesystem::path& out);
}  // namespace layout

// Every seed is a hash of the master seed and a fixed key.
uint64_t SplitSeed(uint64_t master);
uint64_t TestCandidateSeed(uint64_t master);
uint64_t ModelSeed(uint64_t master, ModelKind kind);
// Shared by all cutoffs of a (model, strategy) pair, so that the extensions
// of one pair differ only in the cutoff.
uint64_t SelectionSeed(uint64_t master, ModelKind kind, StrategyKind strategy);

// A failure inside a stage, tagged with the stage name and the cell key
// ("-" when the stage is not per cell).
class StageError : public Error {
 public:
  StageError(std::string stage, std::string cell, ErrorCode code,
             const std::string& message);
  const std::string& stage() const { return stage_; }
  const std::string& cell() const { return cell_; }

 private:
  std::string stage_;
  std::string cell_;
};

KnowledgeGraph LoadDataset(const PipelineConfig& config);

// Step 1: rules of the original KG.
std::vector<ScoredRule> StageMine(const KnowledgeGraph& kg,
                                  const PipelineConfig& config);

struct TrainOutcome {
  EmbeddingModel model;
  SearchResult search;
  EvalReport test;
};

// Hyper-parameter search for one model kind, followed by a test-split
// evaluation of the winner. Writes the model file and its metrics.
TrainOutcome StageTrain(const KnowledgeGraph& kg, ModelKind kind,
                        const PipelineConfig& config);

// Test-split evaluation of a saved model.
EvalReport EvaluateOnTestSplit(const KnowledgeGraph& kg,
                               const EmbeddingModel& model,
                               const PipelineConfig& config);

// Steps 2 and 3 for every cutoff of one (model, strategy) pair: entity
// selection, ranking, extension files and the rules mined from each
// extension. `threads` bounds the work inside the pair.
void StageExtend(const KnowledgeGraph& kg, const EmbeddingModel& model,
                 StrategyKind strategy, const PipelineConfig& config,
                 size_t threads);

// StageExtend for every (model, strategy) pair of `config`, loading each
// model from its file. Pairs run on a pool of config.threads workers.
void StageExtendAll(const KnowledgeGraph& kg, const PipelineConfig& config);

// Step 4 over the cells of `config`, reading the files of the earlier steps.
void StageAnalyze(const KnowledgeGraph& kg, const PipelineConfig& config);

// Diff of two rule files as analysis/diff.csv under `out`.
void AnalyzeRuleFiles(const std::filesystem::path& original,
                      const std::filesystem::path& extended,
                      const std::filesystem::path& out);

// Every regular file under `out` except the manifest itself and the
// incomplete marker: "<relative path>\t<sha256>", sorted by path.
std::string FormatManifest(const std::filesystem::path& out);
void WriteManifest(const std::filesystem::path& out);

// Runs every stage. On failure writes `out`/INCOMPLETE naming the stage,
// cell and error, then rethrows the StageError.
void RunPipeline(const PipelineConfig& config);

}  // namespace kgcr

#endif  // KGCR_PIPELINE_PIPELINE_H_
