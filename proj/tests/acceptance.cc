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

// Acceptance checks. Run with criterion numbers as arguments (default: all);
// prints one PASS/FAIL line per criterion. Exit status is 0 when everything
// passed, 77 when the only failures are missing external datasets, 1
// otherwise.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "analysis/analysis.h"
#include "embed/evaluation.h"
#include "embed/model.h"
#include "embed/training.h"
#include "pipeline/config.h"
#include "pipeline/pipeline.h"
#include "rules/rule.h"
#include "rules/rule_miner.h"
#include "rules/rule_oracle.h"
#include "test_support.h"
#include "util/error.h"
#include "util/files.h"
#include "util/random.h"
#include "util/text.h"

namespace kgcr {
namespace {

namespace fs = std::filesystem;

enum class Status { kPass, kFail, kUnavailable };

struct Outcome {
  Status status;
  std::string detail;
};

Outcome Verdict(bool ok, std::string detail) {
  return {ok ? Status::kPass : Status::kFail, std::move(detail)};
}

std::string Fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string Scientific(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

size_t HardwareThreads() {
  return std::max<unsigned>(1, std::thread::hardware_concurrency());
}

Outcome OracleEquivalence() {
  const auto start = std::chrono::steady_clock::now();
  size_t mismatches = 0;
  size_t rules = 0;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(HashCombine(seed, 0xacce));
    const size_t entities = 5 + rng.Below(26);   // 5..30
    const size_t triples = 20 + rng.Below(101);  // 20..120 draws
    const KnowledgeGraph kg = testing::RandomKg(seed, entities, 4, triples);
    MiningConfig config;
    config.max_atoms = 2 + seed % 2;
    config.min_support = 1 + seed % 3;
    config.min_head_coverage = 0.05 * static_cast<double>(seed % 3);
    config.min_pca_confidence = seed % 5 == 0 ? 0.2 : 0.0;
    const auto mined = Mine(kg, config);
    rules += mined.size();
    if (mined != OracleMineFiltered(kg, config)) ++mismatches;
  }
  const double elapsed = Seconds(start);
  return Verdict(mismatches == 0 && elapsed < 120.0,
                 std::to_string(200 - mismatches) + "/200 graphs identical, " +
                     std::to_string(rules) + " rules, " + Fixed(elapsed, 1) + "s");
}

fs::path FindWn18rr() {
  if (const char* env = std::getenv("KGCR_WN18RR_DIR")) return env;
  return fs::path(KGCR_SOURCE_DIR) / "data" / "WN18RR";
}

Outcome Wn18rrRules() {
  const fs::path dir = FindWn18rr();
  const std::vector<std::string> files = {"train.txt", "valid.txt", "test.txt"};
  for (const std::string& f : files) {
    if (!fs::exists(dir / f)) {
      return {Status::kUnavailable,
              "WN18RR not found (set KGCR_WN18RR_DIR or place it in data/WN18RR)"};
    }
  }
  const auto start = std::chrono::steady_clock::now();
  KnowledgeGraphBuilder builder(std::set<std::string>{
      "_hypernym", "_derivationally_related_form", "_member_meronym", "_has_part",
      "_synset_domain_topic_of", "_instance_hypernym"});
  for (const std::string& f : files) builder.AddTsvFile(dir / f);
  const KnowledgeGraph kg = builder.Build();

  MiningConfig config;
  config.threads = HardwareThreads();
  std::map<std::string, double> mined;
  for (const ScoredRule& r : Mine(kg, config)) mined[r.text] = r.pca_confidence;

  const std::pair<const char*, double> expected[] = {
      {"_derivationally_related_form(y,x) => _derivationally_related_form(x,y)", 1.000000},
      {"_instance_hypernym(x,z) & _synset_domain_topic_of(z,y) => _synset_domain_topic_of(x,y)", 0.886525},
      {"_hypernym(x,z) & _synset_domain_topic_of(z,y) => _synset_domain_topic_of(x,y)", 0.828871},
      {"_has_part(x,z) & _synset_domain_topic_of(z,y) => _synset_domain_topic_of(x,y)", 0.809524},
      {"_has_part(z,x) & _synset_domain_topic_of(z,y) => _synset_domain_topic_of(x,y)", 0.771739},
      {"_hypernym(z,x) & _synset_domain_topic_of(z,y) => _synset_domain_topic_of(x,y)", 0.726667},
      {"_has_part(x,z) & _instance_hypernym(y,z) => _has_part(x,y)", 0.532544},
      {"_derivationally_related_form(x,z) & _synset_domain_topic_of(z,y) => _synset_domain_topic_of(x,y)", 0.492857},
      {"_derivationally_related_form(z,x) & _synset_domain_topic_of(z,y) => _synset_domain_topic_of(x,y)", 0.492857},
      {"_has_part(x,z) & _hypernym(y,z) => _has_part(x,y)", 0.104016},
  };
  size_t matched = 0;
  std::string misses;
  for (const auto& [text, pca] : expected) {
    auto it = mined.find(CanonicalRuleText(text));
    if (it != mined.end() && std::abs(it->second - pca) <= 1e-3) {
      ++matched;
    } else {
      misses += std::string("; ") + text +
                (it == mined.end() ? " missing" : " pca " + Fixed(it->second, 6));
    }
  }
  const double elapsed = Seconds(start);
  return Verdict(matched == 10 && elapsed < 900.0,
                 std::to_string(kg.size()) + " triples, " + std::to_string(matched) +
                     "/10 rules within 1e-3, " + std::to_string(mined.size()) +
                     " rules mined, " + Fixed(elapsed, 1) + "s" + misses);
}

// Five families of four; spouse and sibling link disjoint pairs, relative
// links every pair. All three relations are symmetric.
KnowledgeGraph SymmetricFamilies() {
  std::vector<testing::NamedTriple> t;
  for (int f = 0; f < 5; ++f) {
    std::string p[4];
    for (int i = 0; i < 4; ++i) {
      p[i] = "f" + std::to_string(f) + "p" + std::to_string(i);
    }
    auto both = [&](int a, int b, const char* r) {
      t.push_back({p[a], r, p[b]});
      t.push_back({p[b], r, p[a]});
    };
    both(0, 1, "spouse");
    both(2, 3, "sibling");
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) both(a, b, "relative");
    }
  }
  return testing::MakeKg(t);
}

double RowNorm(std::span<const double> row) {
  double sq = 0.0;
  for (double v : row) sq += v * v;
  return std::sqrt(sq);
}

Outcome TransECollapse() {
  const auto start = std::chrono::steady_clock::now();
  const KnowledgeGraph kg = SymmetricFamilies();
  size_t collapsed = 0;
  double worst = 0.0;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    TrainConfig c;
    c.dim = 50;
    c.epochs = 100;
    c.batches_count = 10;
    c.negatives = 5;
    c.loss = LossKind::kNll;
    c.norm = NormKind::kL2;
    c.learning_rate = 0.02;
    c.normalize_entities = false;
    c.seed = seed;
    const EmbeddingModel m = Train(kg, ModelKind::kTransE, c);
    double mean_entity = 0.0;
    for (EntityId e = 0; e < m.entity_count(); ++e) mean_entity += RowNorm(m.EntityRow(e));
    mean_entity /= static_cast<double>(m.entity_count());
    double max_relation = 0.0;
    for (RelationId r = 0; r < m.relation_count(); ++r) {
      max_relation = std::max(max_relation, RowNorm(m.RelationRow(r)));
    }
    const double ratio = max_relation / mean_entity;
    worst = std::max(worst, ratio);
    if (ratio < 0.05) ++collapsed;
  }
  const double elapsed = Seconds(start);
  return Verdict(collapsed == 5 && elapsed < 60.0,
                 std::to_string(collapsed) + "/5 seeds, worst relation/entity norm ratio " +
                     Fixed(worst) + ", " + Fixed(elapsed, 1) + "s");
}

void Randomize(EmbeddingModel& m, Rng& rng) {
  for (double& v : m.entity_params()) v = rng.Uniform(-2.0, 2.0);
  for (double& v : m.relation_params()) v = rng.Uniform(-2.0, 2.0);
}

Outcome DistMultSymmetry() {
  size_t asymmetric = 0;
  double worst_complex = 0.0;
  for (uint64_t trial = 0; trial < 1000; ++trial) {
    Rng rng(HashCombine(trial, 0x5e11));
    const size_t entities = 2 + rng.Below(20);
    const size_t relations = 1 + rng.Below(5);
    const size_t dim = 1 + rng.Below(64);
    std::vector<std::string> en, rn;
    for (size_t i = 0; i < entities; ++i) en.push_back("e" + std::to_string(i));
    for (size_t i = 0; i < relations; ++i) rn.push_back("r" + std::to_string(i));
    EmbeddingModel dm(ModelKind::kDistMult, dim, NormKind::kL1, trial, en, rn);
    Randomize(dm, rng);
    const auto s = static_cast<EntityId>(rng.Below(entities));
    const auto r = static_cast<RelationId>(rng.Below(relations));
    const auto o = static_cast<EntityId>(rng.Below(entities));
    if (dm.Score(s, r, o) != dm.Score(o, r, s)) ++asymmetric;

    EmbeddingModel cx(ModelKind::kComplEx, dim, NormKind::kL1, trial, en, rn);
    for (EntityId e = 0; e < entities; ++e) {
      auto src = dm.EntityRow(e);
      std::copy(src.begin(), src.end(), cx.EntityRow(e).begin());
    }
    for (RelationId q = 0; q < relations; ++q) {
      auto src = dm.RelationRow(q);
      std::copy(src.begin(), src.end(), cx.RelationRow(q).begin());
    }
    worst_complex = std::max(worst_complex,
                             std::abs(cx.Score(s, r, o) - dm.Score(s, r, o)));
  }
  return Verdict(asymmetric == 0 && worst_complex <= 1e-12,
                 std::to_string(1000 - asymmetric) +
                     "/1000 exactly symmetric, max |ComplEx - DistMult| " +
                     Scientific(worst_complex));
}

Outcome RandomBaselineRanks() {
  const KnowledgeGraph kg = testing::RandomKg(2024, 3000, 4, 20000);
  const DataSplit split = SplitTriples(kg, 0.05, 0.05, 1);
  double mr = 0.0, mrr = 0.0, hits10 = 0.0;
  std::string per_seed;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    TrainConfig c;
    c.seed = seed;
    const EmbeddingModel m = Train(kg, ModelKind::kRandomBaseline, c);
    const auto candidates = SampleCandidates(kg, 1000, HashCombine(seed, 0xca));
    const EvalReport r = Evaluate(m, split.test, candidates, kg, HardwareThreads());
    mr += r.mr / 5.0;
    mrr += r.mrr / 5.0;
    hits10 += r.hits.at(10) / 5.0;
    per_seed += (seed ? " " : "") + Fixed(r.mr, 2);
  }
  return Verdict(mr >= 475.0 && mr <= 525.0 && mrr < 0.02 && hits10 <= 0.02,
                 "MR " + Fixed(mr, 2) + " (" + per_seed + "), MRR " + Fixed(mrr) +
                     ", Hits@10 " + Fixed(hits10) + ", " +
                     std::to_string(split.test.size() * 2) + " queries per seed");
}

double GradientError(ModelKind kind, NormKind norm, LossKind loss, uint64_t seed) {
  const KnowledgeGraph kg =
      testing::MakeKg({{"a", "r", "b"}, {"b", "s", "c"}, {"c", "r", "a"}});
  TrainConfig config;
  config.dim = 5;
  config.seed = seed;
  config.norm = norm;
  EmbeddingModel m = InitializeModel(kg, kind, config);
  Rng rng(HashCombine(seed, 0x67));
  Randomize(m, rng);

  const std::vector<Triple> pos(kg.triples().begin(), kg.triples().end());
  std::vector<Triple> neg;
  for (const Triple& p : pos) {
    for (int j = 0; j < 3; ++j) {
      Triple q = p;
      (rng.Coin() ? q.subject : q.object) =
          static_cast<EntityId>(rng.Below(kg.entity_count()));
      neg.push_back(q);
    }
  }
  // A margin this wide keeps every hinge term active, so the loss is smooth
  // at the evaluation point.
  const double margin = 100.0;
  SparseGradient grad;
  BatchLossAndGradient(m, pos, neg, loss, margin, &grad);
  std::vector<double> analytic = grad.DenseEntities();
  const std::vector<double> rel = grad.DenseRelations();
  analytic.insert(analytic.end(), rel.begin(), rel.end());

  const double h = 1e-5;
  std::vector<double> numeric;
  for (std::vector<double>* params : {&m.entity_params(), &m.relation_params()}) {
    for (double& v : *params) {
      const double saved = v;
      v = saved + h;
      const double up = BatchLossAndGradient(m, pos, neg, loss, margin, nullptr);
      v = saved - h;
      const double down = BatchLossAndGradient(m, pos, neg, loss, margin, nullptr);
      v = saved;
      numeric.push_back((up - down) / (2.0 * h));
    }
  }
  double diff = 0.0, na = 0.0, nn = 0.0;
  for (size_t i = 0; i < analytic.size(); ++i) {
    diff += (analytic[i] - numeric[i]) * (analytic[i] - numeric[i]);
    na += analytic[i] * analytic[i];
    nn += numeric[i] * numeric[i];
  }
  return std::sqrt(diff) / std::max(std::sqrt(std::max(na, nn)), 1e-300);
}

Outcome GradientCorrectness() {
  struct Case {
    ModelKind kind;
    NormKind norm;
  };
  const Case cases[] = {{ModelKind::kTransE, NormKind::kL1},
                        {ModelKind::kTransE, NormKind::kL2},
                        {ModelKind::kDistMult, NormKind::kL1},
                        {ModelKind::kComplEx, NormKind::kL1}};
  double worst = 0.0;
  size_t checks = 0;
  for (const Case& c : cases) {
    for (LossKind loss : {LossKind::kPairwise, LossKind::kNll}) {
      for (uint64_t seed = 0; seed < 5; ++seed) {
        worst = std::max(worst, GradientError(c.kind, c.norm, loss, seed));
        ++checks;
      }
    }
  }
  return Verdict(worst <= 1e-4, std::to_string(checks) +
                                    " model/loss/seed checks, worst relative error " +
                                    Scientific(worst));
}

fs::path WriteTriples(const fs::path& path,
                      const std::vector<testing::NamedTriple>& triples) {
  std::string text;
  for (const auto& [s, r, o] : triples) text += s + "\t" + r + "\t" + o + "\n";
  WriteFile(path, text);
  return path;
}

std::map<std::string, std::string> ReadTree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) {
      files[fs::relative(entry.path(), root).generic_string()] = ReadFile(entry.path());
    }
  }
  return files;
}

std::set<std::string> LineSet(const std::string& text) {
  std::set<std::string> out;
  for (std::string_view line : Split(text, '\n')) {
    if (!line.empty()) out.emplace(line);
  }
  return out;
}

Outcome PipelineDeterminism() {
  const fs::path dir = testing::TempDir("acceptance_pipeline");
  const fs::path data =
      WriteTriples(dir / "family.tsv", testing::FamilyTriples(17, 8, 4));
  auto run = [&](const std::string& name, size_t threads) {
    PipelineConfig c;
    ApplyConfigText(c,
                    "dataset = " + data.string() + "\n"
                    "models = TransE, DistMult\n"
                    "strategies = random, probabilistic\n"
                    "cutoffs = 1, 4\n"
                    "entities = 20\n"
                    "min_support = 3\n"
                    "trials = 2\n"
                    "batches_count = 4\n"
                    "epochs = 10\n"
                    "dim = 16\n"
                    "negatives = 3\n"
                    "eval_candidates = 40\n"
                    "seed = 42\n",
                    "acceptance");
    c.out = dir / name;
    c.threads = threads;
    RunPipeline(c);
    return c;
  };
  const PipelineConfig a = run("first", 1);
  run("second", HardwareThreads());
  const auto first = ReadTree(dir / "first");
  const auto second = ReadTree(dir / "second");

  size_t nested = 0;
  size_t pairs = 0;
  for (ModelKind m : a.models) {
    for (StrategyKind s : a.strategies) {
      ++pairs;
      const auto c1 = LineSet(ReadFile(layout::CellDir(a.out, m, s, 1) / "added.tsv"));
      const auto c4 = LineSet(ReadFile(layout::CellDir(a.out, m, s, 4) / "added.tsv"));
      if (std::includes(c4.begin(), c4.end(), c1.begin(), c1.end())) ++nested;
    }
  }
  const bool identical = first == second;
  return Verdict(identical && nested == pairs,
                 std::to_string(first.size()) + " files, trees " +
                     (identical ? "byte-identical" : "differ") + ", " +
                     std::to_string(nested) + "/" + std::to_string(pairs) +
                     " cutoff-1 extensions inside cutoff-4");
}

// Families with two parents and two to four children: about 500 triples.
std::vector<testing::NamedTriple> FamilyKg500(uint64_t seed) {
  std::vector<testing::NamedTriple> triples;
  for (size_t families = 1; triples.size() < 500; ++families) {
    triples = testing::FamilyTriples(seed, families, 4);
  }
  triples.resize(500);
  return triples;
}

// At cutoff 1 every (entity, relation) query adds at most one triple. 1000
// entities over six relations against 250k triples adds about 2.4% of the
// graph; three entities over four relations is the same share of 500.
constexpr size_t kNeutralityEntities = 3;

Outcome RandomBaselineNeutrality() {
  const fs::path dir = testing::TempDir("acceptance_neutrality");
  size_t neutral = 0;
  std::string counts;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const fs::path data =
        WriteTriples(dir / ("family" + std::to_string(seed) + ".tsv"), FamilyKg500(seed));
    PipelineConfig c;
    ApplyConfigText(c,
                    "dataset = " + data.string() + "\n"
                    "models = RandomBaseline\n"
                    "strategies = random\n"
                    "cutoffs = 1\n"
                    "entities = " + std::to_string(kNeutralityEntities) + "\n"
                    "trials = 1\n",
                    "acceptance");
    c.seed = seed;
    c.out = dir / ("run" + std::to_string(seed));
    c.threads = HardwareThreads();
    RunPipeline(c);

    const RuleSet original = RuleTexts(ReadRuleFile(layout::OriginalRules(c.out)));
    const RuleSet extended = RuleTexts(ReadRuleFile(
        layout::CellDir(c.out, ModelKind::kRandomBaseline, StrategyKind::kRandom, 1) /
        "rules.tsv"));
    const size_t added = DiffRules(original, extended).added.size();
    if (added == 0) ++neutral;
    counts += (seed ? " " : "") + std::to_string(added);
  }
  return Verdict(neutral >= 4, std::to_string(neutral) +
                                   "/5 runs with no new rules (new per run: " + counts +
                                   ")");
}

RuleSet RandomRuleSet(Rng& rng, size_t universe) {
  RuleSet s;
  const size_t n = rng.Below(universe + 1);
  for (size_t i = 0; i < n; ++i) s.insert("r" + std::to_string(rng.Below(universe)));
  return s;
}

Outcome AnalysisMath() {
  std::vector<std::string> failures;
  const std::vector<double> mono_x = {0.1, 0.25, 0.5, 0.9, 0.95};
  const std::vector<double> mono_y = {1, 4, 9, 16, 48};
  const double perfect = Spearman(mono_x, mono_y).rho;
  if (perfect != 1.0) failures.push_back("monotone rho " + std::to_string(perfect));
  const std::vector<double> x = {1, 2, 3, 4};
  const std::vector<double> y = {1, 3, 2, 4};
  const double rho = Spearman(x, y).rho;
  if (std::abs(rho - 0.8) > 1e-12) failures.push_back("[1,3,2,4] rho " + std::to_string(rho));

  size_t violations = 0;
  for (uint64_t trial = 0; trial < 1000; ++trial) {
    Rng rng(HashCombine(trial, 0xd1ff));
    const size_t universe = 1 + rng.Below(40);
    const RuleSet a = RandomRuleSet(rng, universe);
    const RuleSet b = RandomRuleSet(rng, universe);
    const RuleDiff d = DiffRules(a, b);
    RuleSet kept(d.kept.begin(), d.kept.end());
    RuleSet added(d.added.begin(), d.added.end());
    RuleSet missed(d.missed.begin(), d.missed.end());
    RuleSet both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::inserter(both, both.end()));
    RuleSet kept_or_missed = kept, kept_or_added = kept;
    kept_or_missed.insert(missed.begin(), missed.end());
    kept_or_added.insert(added.begin(), added.end());
    bool ok = kept == both && kept_or_missed == a && kept_or_added == b &&
              kept.size() + missed.size() == a.size() &&
              kept.size() + added.size() == b.size();
    if (!b.empty()) {
      const int sum = d.kept_percent + d.added_percent;
      ok = ok && sum >= 99 && sum <= 101;
    }

    const size_t k = 2 + rng.Below(3);
    std::map<std::string, RuleSet> sets;
    std::vector<RuleSet> ordered;
    for (size_t i = 0; i < k; ++i) {
      sets["m" + std::to_string(i)] = RandomRuleSet(rng, universe);
      ordered.push_back(sets["m" + std::to_string(i)]);
    }
    const OverlapReport report = Overlap(sets);
    RuleSet all;
    for (const RuleSet& s : ordered) all.insert(s.begin(), s.end());
    std::map<unsigned, uint64_t> direct;
    for (const std::string& rule : all) {
      unsigned mask = 0;
      for (size_t i = 0; i < k; ++i) mask |= ordered[i].contains(rule) ? 1u << i : 0u;
      ++direct[mask];
    }
    uint64_t total = 0;
    ok = ok && report.regions.size() == (1u << k) - 1 && report.union_size == all.size();
    for (const OverlapRegion& region : report.regions) {
      total += region.count;
      ok = ok && region.count == direct[region.mask];
    }
    for (size_t i = 0; i < k; ++i) {
      uint64_t inside = 0;
      for (const OverlapRegion& region : report.regions) {
        if (region.mask & (1u << i)) inside += region.count;
      }
      ok = ok && inside == ordered[i].size();
    }
    ok = ok && total == all.size();
    if (!ok) ++violations;
  }
  if (violations) failures.push_back(std::to_string(violations) + " set-algebra violations");
  std::string detail = "monotone rho " + Fixed(perfect, 12) + ", [1,3,2,4] rho " +
                       Fixed(rho, 12) + ", " + std::to_string(1000 - violations) +
                       "/1000 randomized diff/overlap fixtures consistent";
  for (const std::string& f : failures) detail += "; " + f;
  return Verdict(failures.empty(), detail);
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& Criteria() {
  static const std::vector<Criterion> criteria = {
      {1, "PCA oracle equivalence", OracleEquivalence},
      {2, "WN18RR rule reproduction", Wn18rrRules},
      {3, "TransE symmetric-relation collapse", TransECollapse},
      {4, "DistMult symmetry invariant", DistMultSymmetry},
      {5, "Random-baseline rank sanity", RandomBaselineRanks},
      {6, "Gradient correctness", GradientCorrectness},
      {7, "Pipeline determinism and structure", PipelineDeterminism},
      {8, "Random-baseline rule neutrality", RandomBaselineNeutrality},
      {9, "Analysis math", AnalysisMath},
  };
  return criteria;
}

}  // namespace
}  // namespace kgcr

int main(int argc, char** argv) {
  using kgcr::Status;
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  bool failed = false;
  bool unavailable = false;
  for (const auto& c : kgcr::Criteria()) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    kgcr::Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {Status::kFail, std::string("error: ") + e.what()};
    }
    const bool pass = outcome.status == Status::kPass;
    std::printf("criterion %d (%s): %s - %s\n", c.id, c.name, pass ? "PASS" : "FAIL",
                outcome.detail.c_str());
    std::fflush(stdout);
    failed |= outcome.status == Status::kFail;
    unavailable |= outcome.status == Status::kUnavailable;
  }
  if (failed) return 1;
  return unavailable ? 77 : 0;
}
