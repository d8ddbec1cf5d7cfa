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

#include "pipeline/pipeline.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "analysis/analysis.h"
#include "embed/training.h"
#include "util/files.h"
#include "util/parallel.h"
#include "util/random.h"
#include "util/text.h"

namespace kgcr {

namespace fs = std::filesystem;

namespace layout {

fs::path OriginalRules(const fs::path& out) { return out / "original_rules.tsv"; }

fs::path ModelFile(const fs::path& out, ModelKind kind) {
  return out / "models" / (std::string(ModelKindName(kind)) + ".model");
}

fs::path Metrics(const fs::path& out, ModelKind kind) {
  return out / "models" / (std::string(ModelKindName(kind)) + ".metrics.tsv");
}

std::string CellName(ModelKind kind, StrategyKind strategy, uint64_t cutoff) {
  return std::string(ModelKindName(kind)) + "__" +
         std::string(StrategyKindName(strategy)) + "__c" + std::to_string(cutoff);
}

fs::path CellDir(const fs::path& out, ModelKind kind, StrategyKind strategy,
                 uint64_t cutoff) {
  return out / "extensions" / CellName(kind, strategy, cutoff);
}

fs::path Analysis(const fs::path& out) { return out / "analysis"; }
fs::path Manifest(const fs::path& out) { return out / "manifest.tsv"; }
fs::path Incomplete(const fs::path& out) { return out / "INCOMPLETE"; }

}  // namespace layout

uint64_t SplitSeed(uint64_t master) {
  return HashCombine(master, HashString("split"));
}

uint64_t TestCandidateSeed(uint64_t master) {
  return HashCombine(master, HashString("test-candidates"));
}

uint64_t ModelSeed(uint64_t master, ModelKind kind) {
  return HashCombine(master, HashString("model:" + std::string(ModelKindName(kind))));
}

uint64_t SelectionSeed(uint64_t master, ModelKind kind, StrategyKind strategy) {
  return HashCombine(master, HashString("select:" + std::string(ModelKindName(kind)) +
                                        ":" + std::string(StrategyKindName(strategy))));
}

StageError::StageError(std::string stage, std::string cell, ErrorCode code,
                       const std::string& message)
    : Error(code, stage + " [" + cell + "]: " + message),
      stage_(std::move(stage)),
      cell_(std::move(cell)) {}

namespace {

template <typename F>
auto InStage(const std::string& stage, const std::string& cell, F&& body) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(stage, cell, e.code(), e.what());
  } catch (const std::exception& e) {
    throw StageError(stage, cell, ErrorCode::kInternal, e.what());
  }
}

std::string PairName(ModelKind kind, StrategyKind strategy) {
  return std::string(ModelKindName(kind)) + "__" +
         std::string(StrategyKindName(strategy));
}

std::string FormatMetrics(const TrainOutcome& t) {
  const TrainConfig& c = t.search.config;
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out.append(key).append("\t").append(value).append("\n");
  };
  line("model", std::string(ModelKindName(t.model.kind())));
  line("seed", std::to_string(c.seed));
  line("trials", std::to_string(t.search.trials.size()));
  line("best_trial", std::to_string(t.search.best_trial));
  line("batches_count", std::to_string(c.batches_count));
  line("epochs", std::to_string(c.epochs));
  line("dim", std::to_string(c.dim));
  line("negatives", std::to_string(c.negatives));
  line("loss", std::string(LossKindName(c.loss)));
  line("margin", FormatDouble(c.margin));
  line("learning_rate", FormatDouble(c.learning_rate));
  line("norm", std::string(NormKindName(c.norm)));
  line("valid_mrr", FormatDouble(t.search.validation.mrr));
  line("test_queries", std::to_string(t.test.n_queries));
  line("test_candidates", std::to_string(t.test.candidate_count));
  line("test_mr", FormatDouble(t.test.mr));
  line("test_mrr", FormatDouble(t.test.mrr));
  for (const auto& [k, v] : t.test.hits) {
    line("test_hits@" + std::to_string(k), FormatDouble(v));
  }
  return out;
}

std::vector<uint64_t> SortedCutoffs(const PipelineConfig& config) {
  std::set<uint64_t> unique(config.cutoffs.begin(), config.cutoffs.end());
  return {unique.begin(), unique.end()};
}

struct CellKey {
  ModelKind model;
  StrategyKind strategy;
  uint64_t cutoff;
};

std::vector<CellKey> Cells(const PipelineConfig& config) {
  std::vector<CellKey> cells;
  for (ModelKind m : config.models) {
    for (StrategyKind s : config.strategies) {
      for (uint64_t c : SortedCutoffs(config)) cells.push_back({m, s, c});
    }
  }
  return cells;
}

std::vector<double> PcaValues(std::span<const ScoredRule> rules) {
  std::vector<double> out;
  out.reserve(rules.size());
  for (const ScoredRule& r : rules) out.push_back(r.pca_confidence);
  return out;
}

void WriteAnalysisFile(const fs::path& out, const std::string& name,
                       const std::string& contents) {
  WriteFile(layout::Analysis(out) / name, contents);
}

}  // namespace

KnowledgeGraph LoadDataset(const PipelineConfig& config) {
  return InStage("load", "-", [&] {
    if (config.dataset.empty()) {
      Fail(ErrorCode::kInvalidArgument, "no dataset given");
    }
    KnowledgeGraphBuilder builder =
        config.relations.empty()
            ? KnowledgeGraphBuilder()
            : KnowledgeGraphBuilder(std::set<std::string>(
                  config.relations.begin(), config.relations.end()));
    for (const std::string& path : config.dataset) builder.AddTsvFile(path);
    KnowledgeGraph kg = builder.Build();
    if (kg.empty()) Fail(ErrorCode::kInvalidArgument, "the dataset has no triples");
    return kg;
  });
}

std::vector<ScoredRule> StageMine(const KnowledgeGraph& kg,
                                  const PipelineConfig& config) {
  return InStage("mine", "-", [&] {
    MiningConfig mining = config.mining;
    mining.threads = config.threads;
    std::vector<ScoredRule> rules = Mine(kg, mining);
    WriteRuleFile(rules, layout::OriginalRules(config.out));
    return rules;
  });
}

EvalReport EvaluateOnTestSplit(const KnowledgeGraph& kg,
                               const EmbeddingModel& model,
                               const PipelineConfig& config) {
  const DataSplit split = SplitTriples(kg, config.valid_fraction,
                                       config.test_fraction, SplitSeed(config.seed));
  const std::vector<EntityId> candidates =
      SampleCandidates(kg, config.eval_candidates, TestCandidateSeed(config.seed));
  return Evaluate(model, split.test, candidates, kg, config.threads);
}

TrainOutcome StageTrain(const KnowledgeGraph& kg, ModelKind kind,
                        const PipelineConfig& config) {
  return InStage("train", std::string(ModelKindName(kind)), [&] {
    const DataSplit split = SplitTriples(kg, config.valid_fraction,
                                         config.test_fraction, SplitSeed(config.seed));
    SearchOptions options;
    options.trials = config.trials;
    options.seed = ModelSeed(config.seed, kind);
    options.candidates = config.eval_candidates;
    options.threads = config.threads;
    options.norm = config.norm;

    TrainOutcome outcome;
    outcome.search = RandomSearch(kg, split, kind, config.space, options);
    outcome.model = outcome.search.model;
    outcome.test = EvaluateOnTestSplit(kg, outcome.model, config);
    SaveModel(outcome.model, layout::ModelFile(config.out, kind));
    WriteFile(layout::Metrics(config.out, kind), FormatMetrics(outcome));
    return outcome;
  });
}

void StageExtend(const KnowledgeGraph& kg, const EmbeddingModel& model,
                 StrategyKind strategy, const PipelineConfig& config,
                 size_t threads) {
  const ModelKind kind = model.kind();
  const uint64_t seed = SelectionSeed(config.seed, kind, strategy);
  const std::vector<uint64_t> cutoffs = SortedCutoffs(config);

  const auto accepted = InStage("extend", PairName(kind, strategy), [&] {
    const size_t n = std::min(config.entities, kg.entity_count());
    CandidateSpace space{SelectEntities(kg, strategy, n, seed), AllRelations(kg)};
    const EmbeddingModel aligned =
        model.AlignedWith(kg) ? model : model.Reindexed(kg);
    auto result = RankAndFilter(aligned, kg, space, cutoffs, threads);
    return std::make_pair(space, std::move(result));
  });

  for (uint64_t cutoff : cutoffs) {
    InStage("extend", layout::CellName(kind, strategy, cutoff), [&] {
      const fs::path dir = layout::CellDir(config.out, kind, strategy, cutoff);
      Extension ext;
      ext.model = std::string(ModelKindName(kind));
      ext.strategy = std::string(StrategyKindName(strategy));
      ext.cutoff = cutoff;
      ext.selection_seed = seed;
      ext.model_seed = model.seed();
      ext.selected_entities = accepted.first.entities.size();
      ext.candidate_count = accepted.first.size();
      ext.base_triples = kg.size();
      ext.added = accepted.second.at(cutoff);
      WriteExtension(kg, ext, dir / "added.tsv", dir / "meta.txt");

      MiningConfig mining = config.mining;
      mining.threads = threads;
      WriteRuleFile(Mine(Extend(kg, ext.added), mining), dir / "rules.tsv");
    });
  }
}

void StageExtendAll(const KnowledgeGraph& kg, const PipelineConfig& config) {
  std::vector<EmbeddingModel> models;
  for (ModelKind kind : config.models) {
    models.push_back(InStage("extend", std::string(ModelKindName(kind)), [&] {
      return LoadModel(layout::ModelFile(config.out, kind));
    }));
  }
  const size_t jobs = models.size() * config.strategies.size();
  const size_t workers = std::max<size_t>(1, std::min(config.threads, jobs));
  const size_t inner = std::max<size_t>(1, config.threads / workers);
  ParallelFor(jobs, workers, [&](size_t i) {
    const size_t m = i / config.strategies.size();
    const size_t s = i % config.strategies.size();
    StageExtend(kg, models[m], config.strategies[s], config, inner);
  });
}

void StageAnalyze(const KnowledgeGraph& kg, const PipelineConfig& config) {
  InStage("analyze", "-", [&] {
    const fs::path& out = config.out;
    const std::vector<ScoredRule> original = ReadRuleFile(layout::OriginalRules(out));
    const RuleSet original_set = RuleTexts(original);

    const std::vector<CellKey> cells = Cells(config);
    std::vector<std::vector<ScoredRule>> cell_rules;
    std::vector<RuleSet> cell_sets;
    for (const CellKey& c : cells) {
      cell_rules.push_back(
          ReadRuleFile(layout::CellDir(out, c.model, c.strategy, c.cutoff) / "rules.tsv"));
      cell_sets.push_back(RuleTexts(cell_rules.back()));
    }

    // Groups of cells sharing one parameter value, plus the whole grid.
    std::vector<std::pair<std::string, std::vector<size_t>>> groups;
    auto add_group = [&](const std::string& label, auto&& member) {
      std::vector<size_t> idx;
      for (size_t i = 0; i < cells.size(); ++i) {
        if (member(cells[i])) idx.push_back(i);
      }
      groups.emplace_back(label, std::move(idx));
    };
    for (ModelKind m : config.models) {
      add_group("model=" + std::string(ModelKindName(m)),
                [&](const CellKey& c) { return c.model == m; });
    }
    for (StrategyKind s : config.strategies) {
      add_group("strategy=" + std::string(StrategyKindName(s)),
                [&](const CellKey& c) { return c.strategy == s; });
    }
    for (uint64_t cutoff : SortedCutoffs(config)) {
      add_group("cutoff=" + std::to_string(cutoff),
                [&](const CellKey& c) { return c.cutoff == cutoff; });
    }
    add_group("all", [](const CellKey&) { return true; });

    auto group_union = [&](const std::vector<size_t>& idx) {
      RuleSet u;
      for (size_t i : idx) u.insert(cell_sets[i].begin(), cell_sets[i].end());
      return u;
    };

    std::vector<DiffRow> diff_rows;
    for (size_t i = 0; i < cells.size(); ++i) {
      const CellKey& c = cells[i];
      diff_rows.push_back({layout::CellName(c.model, c.strategy, c.cutoff),
                           DiffRules(original_set, cell_sets[i])});
    }
    for (const auto& [label, idx] : groups) {
      diff_rows.push_back({label, DiffRules(original_set, group_union(idx))});
    }
    WriteAnalysisFile(out, "diff.csv", FormatDiffCsv(diff_rows));

    // Rules with their PCA confidence on the original KG, each rescored once.
    RuleSet all_rules = original_set;
    for (const RuleSet& s : cell_sets) all_rules.insert(s.begin(), s.end());
    std::vector<ScoredRule> to_rescore;
    for (const std::string& text : all_rules) {
      ScoredRule r;
      r.text = text;
      to_rescore.push_back(std::move(r));
    }
    std::map<std::string, double> pca_on_original;
    for (const ScoredRule& r : RescoreRules(to_rescore, kg)) {
      pca_on_original[r.text] = r.pca_confidence;
    }

    if (config.models.size() >= 2 && config.models.size() <= 4) {
      std::map<std::string, RuleSet> per_model;
      for (size_t g = 0; g < config.models.size(); ++g) {
        per_model[std::string(ModelKindName(config.models[g]))] =
            group_union(groups[g].second);
      }
      WriteAnalysisFile(out, "overlap.csv", FormatOverlapCsv(Overlap(per_model)));
    }

    std::vector<DistributionRow> dist_rows;
    if (!original.empty()) {
      const std::vector<double> values = PcaValues(original);
      dist_rows.push_back({"original", Distribution(values)});
    }
    for (const auto& [label, idx] : groups) {
      std::vector<double> on_original;
      for (const std::string& text : group_union(idx)) {
        on_original.push_back(pca_on_original.at(text));
      }
      std::vector<double> on_extension;
      for (size_t i : idx) {
        for (const ScoredRule& r : cell_rules[i]) on_extension.push_back(r.pca_confidence);
      }
      if (!on_original.empty()) {
        dist_rows.push_back({label + "/on_original", Distribution(on_original)});
      }
      if (!on_extension.empty()) {
        dist_rows.push_back({label + "/on_extension", Distribution(on_extension)});
      }
    }
    WriteAnalysisFile(out, "pca_dist.csv", FormatDistributionCsv(dist_rows));

    std::vector<FrequencyRow> freq_rows;
    for (const std::string& text : all_rules) {
      freq_rows.push_back(
          {text, RuleFrequency(text, cell_sets), pca_on_original.at(text)});
    }
    std::stable_sort(freq_rows.begin(), freq_rows.end(),
                     [](const FrequencyRow& a, const FrequencyRow& b) {
                       return a.frequency > b.frequency;
                     });
    WriteAnalysisFile(out, "frequency.csv", FormatFrequencyCsv(freq_rows));

    std::vector<double> freq, pca;
    for (const ScoredRule& r : original) {
      freq.push_back(static_cast<double>(RuleFrequency(r.text, cell_sets)));
      pca.push_back(r.pca_confidence);
    }
    Correlation corr;
    try {
      corr = Spearman(freq, pca);
    } catch (const Error&) {
      corr = {std::nan(""), std::nan(""), original.size()};
    }
    WriteAnalysisFile(out, "correlation.csv", FormatCorrelationCsv(corr));
  });
}

void AnalyzeRuleFiles(const fs::path& original, const fs::path& extended,
                      const fs::path& out) {
  InStage("analyze", "-", [&] {
    const RuleSet a = RuleTexts(ReadRuleFile(original));
    const RuleSet b = RuleTexts(ReadRuleFile(extended));
    const DiffRow row{extended.string(), DiffRules(a, b)};
    WriteAnalysisFile(out, "diff.csv", FormatDiffCsv(std::span<const DiffRow>(&row, 1)));
  });
}

std::string FormatManifest(const fs::path& out) {
  std::vector<std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(out)) {
    if (!entry.is_regular_file()) continue;
    const std::string rel = fs::relative(entry.path(), out).generic_string();
    if (rel == "manifest.tsv" || rel == "INCOMPLETE") continue;
    files.push_back(rel);
  }
  std::sort(files.begin(), files.end());
  std::string text;
  for (const std::string& rel : files) {
    text += rel + "\t" + Sha256File(out / rel) + "\n";
  }
  return text;
}

void WriteManifest(const fs::path& out) {
  InStage("manifest", "-",
          [&] { WriteFile(layout::Manifest(out), FormatManifest(out)); });
}

void RunPipeline(const PipelineConfig& config) {
  try {
    InStage("config", "-", [&] { config.Validate(); });
    std::error_code ignored;
    fs::remove(layout::Incomplete(config.out), ignored);
    fs::remove(layout::Manifest(config.out), ignored);

    const KnowledgeGraph kg = LoadDataset(config);
    StageMine(kg, config);
    for (ModelKind kind : config.models) StageTrain(kg, kind, config);
    StageExtendAll(kg, config);
    StageAnalyze(kg, config);
    WriteManifest(config.out);
  } catch (const StageError& e) {
    std::string marker = "stage=" + e.stage() + "\ncell=" + e.cell() + "\nerror=";
    for (char ch : std::string_view(e.what())) marker += ch == '\n' ? ' ' : ch;
    marker += "\n";
    try {
      WriteFile(layout::Incomplete(config.out), marker);
    } catch (const Error&) {
    }
    throw;
  }
}

}  // namespace kgcr
