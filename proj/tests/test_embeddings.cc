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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "embed/evaluation.h"
#include "embed/model.h"
#include "embed/training.h"
#include "test_support.h"
#include "util/error.h"
#include "util/random.h"

namespace kgcr {
namespace {

using testing::MakeKg;

EmbeddingModel TwoEntityModel(ModelKind kind, size_t dim, NormKind norm,
                              std::vector<double> s, std::vector<double> r,
                              std::vector<double> o) {
  EmbeddingModel m(kind, dim, norm, 0, {"s", "o"}, {"r"});
  std::copy(s.begin(), s.end(), m.EntityRow(0).begin());
  std::copy(o.begin(), o.end(), m.EntityRow(1).begin());
  std::copy(r.begin(), r.end(), m.RelationRow(0).begin());
  return m;
}

void Randomize(EmbeddingModel& m, uint64_t seed) {
  Rng rng(seed);
  for (double& v : m.entity_params()) v = rng.Uniform(-1, 1);
  for (double& v : m.relation_params()) v = rng.Uniform(-1, 1);
}

TEST_CASE("TransE score examples") {
  auto exact = TwoEntityModel(ModelKind::kTransE, 2, NormKind::kL1, {1, 0},
                              {0, 1}, {1, 1});
  CHECK(exact.Score(0, 0, 1) == 0.0);
  auto l1 = TwoEntityModel(ModelKind::kTransE, 2, NormKind::kL1, {0, 0}, {1, 2},
                           {0, 0});
  CHECK(l1.Score(0, 0, 1) == -3.0);
  auto l2 = TwoEntityModel(ModelKind::kTransE, 2, NormKind::kL2, {0, 0}, {3, 4},
                           {0, 0});
  CHECK(l2.Score(0, 0, 1) == -5.0);
}

TEST_CASE("DistMult and ComplEx score examples") {
  auto dm = TwoEntityModel(ModelKind::kDistMult, 2, NormKind::kL1, {1, 2},
                           {1, 1}, {2, 1});
  CHECK(dm.Score(0, 0, 1) == 4.0);
  CHECK(dm.Score(1, 0, 0) == 4.0);
  auto cx = TwoEntityModel(ModelKind::kComplEx, 2, NormKind::kL1, {1, 2, 0, 0},
                           {1, 1, 0, 0}, {2, 1, 0, 0});
  CHECK(cx.Score(0, 0, 1) == 4.0);
  // Re(s r conj(o)) with s = i, r = 1, o = i is 1; with o = 1 it is 0.
  auto rot = TwoEntityModel(ModelKind::kComplEx, 1, NormKind::kL1, {0, 1},
                            {1, 0}, {0, 1});
  CHECK(rot.Score(0, 0, 1) == 1.0);
}

TEST_CASE("score rejects unknown ids") {
  EmbeddingModel m(ModelKind::kDistMult, 2, NormKind::kL1, 0, {"a"}, {"r"});
  CHECK_THROWS_AS(m.Score(0, 0, 1), Error);
  CHECK_THROWS_AS(m.Score(0, 1, 0), Error);
  CHECK_THROWS_AS(m.ScoreNamed("a", "r", "zzz"), Error);
}

TEST_CASE("DistMult symmetry and ComplEx restriction on random models") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    EmbeddingModel dm(ModelKind::kDistMult, 16, NormKind::kL1, 0,
                      {"a", "b", "c"}, {"r"});
    Randomize(dm, seed);
    EmbeddingModel cx(ModelKind::kComplEx, 16, NormKind::kL1, 0,
                      {"a", "b", "c"}, {"r"});
    for (EntityId e = 0; e < 3; ++e) {
      auto src = dm.EntityRow(e);
      std::copy(src.begin(), src.end(), cx.EntityRow(e).begin());
    }
    auto rsrc = dm.RelationRow(0);
    std::copy(rsrc.begin(), rsrc.end(), cx.RelationRow(0).begin());
    for (EntityId s = 0; s < 3; ++s) {
      for (EntityId o = 0; o < 3; ++o) {
        CHECK(dm.Score(s, 0, o) == dm.Score(o, 0, s));
        CHECK(std::abs(cx.Score(s, 0, o) - dm.Score(s, 0, o)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("TransE score is non-positive") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    for (NormKind norm : {NormKind::kL1, NormKind::kL2}) {
      EmbeddingModel m(ModelKind::kTransE, 8, norm, 0, {"a", "b"}, {"r"});
      Randomize(m, seed);
      CHECK(m.Score(0, 0, 1) < 0.0);
    }
  }
}

TEST_CASE("random baseline is a seeded hash in [0, 1)") {
  auto kg = MakeKg({{"a", "r", "b"}, {"b", "r", "c"}});
  TrainConfig config;
  config.seed = 5;
  auto m1 = Train(kg, ModelKind::kRandomBaseline, config);
  auto m2 = Train(kg, ModelKind::kRandomBaseline, config);
  CHECK(m1 == m2);
  CHECK(m1.dim() == 0);
  const double v = m1.Score(0, 0, 1);
  CHECK(v >= 0.0);
  CHECK(v < 1.0);
  config.seed = 6;
  CHECK(Train(kg, ModelKind::kRandomBaseline, config).Score(0, 0, 1) != v);
}

struct GradCase {
  ModelKind kind;
  NormKind norm;
  LossKind loss;
};

double RelativeGradientError(const GradCase& c, uint64_t seed) {
  auto kg = MakeKg({{"a", "r", "b"}, {"b", "s", "c"}, {"c", "r", "a"}});
  TrainConfig config;
  config.dim = 4;
  config.seed = seed;
  config.norm = c.norm;
  EmbeddingModel m = InitializeModel(kg, c.kind, config);
  Randomize(m, seed + 100);

  std::vector<Triple> pos(kg.triples().begin(), kg.triples().end());
  std::vector<Triple> neg;
  Rng rng(seed);
  for (const Triple& p : pos) {
    for (int j = 0; j < 2; ++j) {
      Triple q = p;
      (rng.Coin() ? q.subject : q.object) =
          static_cast<EntityId>(rng.Below(kg.entity_count()));
      neg.push_back(q);
    }
  }
  const double margin = 5.0;  // keeps every hinge active
  SparseGradient grad;
  BatchLossAndGradient(m, pos, neg, c.loss, margin, &grad);
  std::vector<double> analytic = grad.DenseEntities();
  auto rel = grad.DenseRelations();
  analytic.insert(analytic.end(), rel.begin(), rel.end());

  const double h = 1e-5;
  std::vector<double> numeric;
  for (auto* params : {&m.entity_params(), &m.relation_params()}) {
    for (double& v : *params) {
      const double saved = v;
      v = saved + h;
      const double up = BatchLossAndGradient(m, pos, neg, c.loss, margin, nullptr);
      v = saved - h;
      const double down =
          BatchLossAndGradient(m, pos, neg, c.loss, margin, nullptr);
      v = saved;
      numeric.push_back((up - down) / (2 * h));
    }
  }
  double diff = 0, na = 0, nn = 0;
  for (size_t i = 0; i < analytic.size(); ++i) {
    diff += (analytic[i] - numeric[i]) * (analytic[i] - numeric[i]);
    na += analytic[i] * analytic[i];
    nn += numeric[i] * numeric[i];
  }
  return std::sqrt(diff) / std::max(std::sqrt(std::max(na, nn)), 1e-300);
}

TEST_CASE("analytic gradients match finite differences") {
  const GradCase cases[] = {
      {ModelKind::kTransE, NormKind::kL1, LossKind::kPairwise},
      {ModelKind::kTransE, NormKind::kL1, LossKind::kNll},
      {ModelKind::kTransE, NormKind::kL2, LossKind::kPairwise},
      {ModelKind::kTransE, NormKind::kL2, LossKind::kNll},
      {ModelKind::kDistMult, NormKind::kL1, LossKind::kPairwise},
      {ModelKind::kDistMult, NormKind::kL1, LossKind::kNll},
      {ModelKind::kComplEx, NormKind::kL1, LossKind::kPairwise},
      {ModelKind::kComplEx, NormKind::kL1, LossKind::kNll},
  };
  for (const auto& c : cases) {
    for (uint64_t seed = 1; seed <= 3; ++seed) {
      CAPTURE(ModelKindName(c.kind));
      CAPTURE(LossKindName(c.loss));
      CAPTURE(seed);
      CHECK(RelativeGradientError(c, seed) <= 1e-4);
    }
  }
}

TEST_CASE("pairwise loss ignores satisfied margins") {
  auto m = TwoEntityModel(ModelKind::kDistMult, 1, NormKind::kL1, {1}, {1}, {1});
  Triple p{0, 0, 1};
  Triple n{0, 0, 0};
  std::vector<Triple> pos{p};
  std::vector<Triple> neg{n};
  // f(p) = 1, f(n) = 1 -> hinge = margin.
  CHECK(BatchLossAndGradient(m, pos, neg, LossKind::kPairwise, 0.5, nullptr) ==
        0.5);
  m.EntityRow(0)[0] = 3;  // f(p) = 3, f(n) = 9
  m.EntityRow(1)[0] = 1;
  CHECK(BatchLossAndGradient(m, pos, neg, LossKind::kPairwise, 0.5, nullptr) ==
        6.5);
  CHECK(BatchLossAndGradient(m, neg, pos, LossKind::kPairwise, 0.5, nullptr) ==
        0.0);
}

TEST_CASE("training is deterministic") {
  auto kg = testing::RandomKg(4, 30, 3, 100);
  TrainConfig config;
  config.dim = 8;
  config.epochs = 5;
  config.batches_count = 4;
  config.seed = 9;
  for (ModelKind kind :
       {ModelKind::kTransE, ModelKind::kDistMult, ModelKind::kComplEx}) {
    auto a = Train(kg, kind, config);
    auto b = Train(kg, kind, config);
    CHECK(a == b);
    CHECK(SerializeModel(a) == SerializeModel(b));
  }
  config.seed = 10;
  CHECK_FALSE(Train(kg, ModelKind::kTransE, config) ==
              Train(kg, ModelKind::kTransE, TrainConfig{config.batches_count, 5, 8}));
}

TEST_CASE("TransE keeps entity vectors on the unit sphere") {
  auto kg = testing::RandomKg(8, 25, 2, 60);
  TrainConfig config;
  config.dim = 10;
  config.epochs = 3;
  config.batches_count = 3;
  config.learning_rate = 0.05;
  auto m = Train(kg, ModelKind::kTransE, config);
  for (EntityId e = 0; e < m.entity_count(); ++e) {
    double sq = 0;
    for (double v : m.EntityRow(e)) sq += v * v;
    CHECK(std::sqrt(sq) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("initialisation stays inside the uniform bound") {
  auto kg = testing::RandomKg(2, 20, 2, 40);
  TrainConfig config;
  config.dim = 25;
  auto m = InitializeModel(kg, ModelKind::kDistMult, config);
  const double bound = 6.0 / 5.0;
  for (double v : m.entity_params()) CHECK(std::abs(v) <= bound);
  for (double v : m.relation_params()) CHECK(std::abs(v) <= bound);
}

TEST_CASE("final epoch loss is below the first over five seeds") {
  auto kg = testing::RandomKg(123, 40, 3, 100);
  for (ModelKind kind :
       {ModelKind::kTransE, ModelKind::kDistMult, ModelKind::kComplEx}) {
    for (LossKind loss : {LossKind::kPairwise, LossKind::kNll}) {
      double first = 0, last = 0;
      for (uint64_t seed = 0; seed < 5; ++seed) {
        TrainConfig config;
        config.dim = 20;
        config.epochs = 30;
        config.batches_count = 5;
        config.learning_rate = 0.01;
        config.loss = loss;
        config.seed = seed;
        std::vector<double> losses;
        Train(kg, kind, config, &losses);
        REQUIRE(losses.size() == 30);
        first += losses.front();
        last += losses.back();
      }
      CAPTURE(ModelKindName(kind));
      CAPTURE(LossKindName(loss));
      CHECK(last < first);
    }
  }
}

TEST_CASE("train config validation") {
  TrainConfig config;
  config.dim = 0;
  CHECK_THROWS_AS(config.Validate(), Error);
  config = TrainConfig{};
  config.margin = 0;
  CHECK_THROWS_AS(config.Validate(), Error);
  config.loss = LossKind::kNll;
  CHECK_NOTHROW(config.Validate());
  config.learning_rate = std::nan("");
  CHECK_THROWS_AS(config.Validate(), Error);
}

TEST_CASE("model files round trip bit-exactly") {
  auto kg = testing::RandomKg(6, 12, 2, 30);
  TrainConfig config;
  config.dim = 3;
  config.epochs = 2;
  config.batches_count = 2;
  auto dir = testing::TempDir("model_io");
  for (ModelKind kind : {ModelKind::kTransE, ModelKind::kDistMult,
                         ModelKind::kComplEx, ModelKind::kRandomBaseline}) {
    auto m = Train(kg, kind, config);
    SaveModel(m, dir / "m.bin");
    auto back = LoadModel(dir / "m.bin");
    CHECK(back == m);
    CHECK(back.Score(0, 0, 1) == m.Score(0, 0, 1));
  }
  CHECK_THROWS_AS(DeserializeModel("garbage"), Error);
}

TEST_CASE("reindexing follows entity names") {
  auto kg1 = MakeKg({{"a", "r", "b"}, {"b", "s", "c"}});
  auto kg2 = MakeKg({{"c", "s", "b"}, {"b", "r", "a"}});
  TrainConfig config;
  config.dim = 4;
  config.epochs = 1;
  config.batches_count = 1;
  for (ModelKind kind : {ModelKind::kComplEx, ModelKind::kRandomBaseline}) {
    auto m = Train(kg1, kind, config);
    auto moved = m.Reindexed(kg2);
    CHECK(moved.AlignedWith(kg2));
    CHECK(moved.ScoreNamed("a", "s", "c") == m.ScoreNamed("a", "s", "c"));
  }
  auto bigger = MakeKg({{"a", "r", "zz"}});
  CHECK_THROWS_AS(Train(kg1, ModelKind::kDistMult, config).Reindexed(bigger),
                  Error);
}

TEST_CASE("rank aggregation") {
  std::vector<uint64_t> ranks{1, 2, 4};
  auto r = AggregateRanks(ranks, 10);
  CHECK(r.mr == doctest::Approx(7.0 / 3.0));
  CHECK(r.mrr == doctest::Approx((1 + 0.5 + 0.25) / 3));
  CHECK(r.hits[1] == doctest::Approx(1.0 / 3));
  CHECK(r.hits[3] == doctest::Approx(2.0 / 3));
  CHECK(r.hits[10] == 1.0);
  CHECK(r.n_queries == 3);
  auto perfect = AggregateRanks(std::vector<uint64_t>{1, 1, 1, 1}, 5);
  CHECK(perfect.mr == 1.0);
  CHECK(perfect.mrr == 1.0);
  CHECK(perfect.hits[1] == 1.0);
}

TEST_CASE("filtered ranks with pessimistic ties") {
  auto kg = MakeKg({{"a", "r", "b"}, {"a", "r", "c"}, {"d", "r", "e"}});
  EmbeddingModel m = EmbeddingModel::ForGraph(kg, ModelKind::kDistMult, 1,
                                              NormKind::kL1, 0);
  // All scores 0: every unfiltered corruption ties with the truth.
  std::vector<EntityId> cands = SampleCandidates(kg, 100, 0);
  CHECK(cands.size() == kg.entity_count());
  Triple t{kg.EntityIdOf("a"), 0, kg.EntityIdOf("b")};
  auto ranks = RankQueries(m, std::vector<Triple>{t}, cands, kg);
  // subject side: 4 corruptions, none known -> rank 5.
  // object side: 4 corruptions, (a,r,c) filtered -> rank 4.
  CHECK(ranks == std::vector<uint64_t>{5, 4});

  // A model that separates the truth strictly gets rank 1 everywhere:
  // TransE in one dimension with a = 0, r = 1, b = 1, everything else 10.
  EmbeddingModel p = EmbeddingModel::ForGraph(kg, ModelKind::kTransE, 1,
                                              NormKind::kL1, 0);
  for (EntityId e = 0; e < p.entity_count(); ++e) p.EntityRow(e)[0] = 10;
  p.EntityRow(t.subject)[0] = 0;
  p.EntityRow(t.object)[0] = 1;
  p.RelationRow(0)[0] = 1;
  auto best = Evaluate(p, std::vector<Triple>{t}, cands, kg);
  CHECK(best.mr == 1.0);
  CHECK(best.mrr == 1.0);
}

TEST_CASE("ranks are invariant under increasing score transforms") {
  auto kg = testing::RandomKg(31, 30, 2, 80);
  TrainConfig config;
  config.dim = 6;
  config.epochs = 3;
  config.batches_count = 2;
  auto m = Train(kg, ModelKind::kDistMult, config);
  auto scaled = m;
  for (double& v : scaled.relation_params()) v *= 3.5;
  auto cands = SampleCandidates(kg, 20, 1);
  std::vector<Triple> test(kg.triples().begin(), kg.triples().begin() + 20);
  CHECK(RankQueries(m, test, cands, kg) == RankQueries(scaled, test, cands, kg));
  CHECK(RankQueries(m, test, cands, kg, 4) == RankQueries(m, test, cands, kg, 1));
}

TEST_CASE("candidate sampling is seeded and name-ordered") {
  auto kg = testing::RandomKg(40, 60, 2, 200);
  auto a = SampleCandidates(kg, 10, 3);
  auto b = SampleCandidates(kg, 10, 3);
  CHECK(a == b);
  CHECK(a.size() == 10);
  for (size_t i = 1; i < a.size(); ++i) {
    CHECK(kg.EntityName(a[i - 1]) < kg.EntityName(a[i]));
  }
  CHECK(SampleCandidates(kg, 10, 4) != a);
}

TEST_CASE("triple split partitions the graph") {
  auto kg = testing::RandomKg(50, 30, 3, 200);
  auto split = SplitTriples(kg, 0.1, 0.1, 7);
  CHECK(split.train.size() + split.valid.size() + split.test.size() == kg.size());
  std::set<Triple> all;
  for (auto* part : {&split.train, &split.valid, &split.test}) {
    for (const Triple& t : *part) CHECK(all.insert(t).second);
  }
  CHECK(split.valid.size() == static_cast<size_t>(kg.size() * 0.1));
  CHECK_THROWS_AS(SplitTriples(kg, 0.5, 0.5, 0), Error);
}

TEST_CASE("default search space size") {
  SearchSpace space;
  CHECK(space.DiscreteSize() == 216);
}

TEST_CASE("single point search space returns that config") {
  auto kg = testing::RandomKg(60, 25, 2, 80);
  auto split = SplitTriples(kg, 0.2, 0.0, 1);
  SearchSpace space;
  space.batches_count = {2};
  space.epochs = {3};
  space.dim = {5};
  space.negatives = {2};
  space.loss = {LossKind::kNll};
  space.margin = {1.0};
  space.learning_rates = {0.005};
  SearchOptions options;
  options.trials = 1;
  auto result = RandomSearch(kg, split, ModelKind::kDistMult, space, options);
  CHECK(result.config.batches_count == 2);
  CHECK(result.config.epochs == 3);
  CHECK(result.config.dim == 5);
  CHECK(result.config.learning_rate == 0.005);
  CHECK(result.trials.size() == 1);
  options.trials = 3;
  CHECK(RandomSearch(kg, split, ModelKind::kDistMult, space, options).trials.size() == 3);
}

TEST_CASE("a training config beats a frozen one") {
  auto kg = MakeKg(testing::FamilyTriples(3, 20, 4));
  auto split = SplitTriples(kg, 0.1, 0.0, 2);
  SearchSpace space;
  space.batches_count = {5};
  space.epochs = {40};
  space.dim = {20};
  space.negatives = {5};
  space.loss = {LossKind::kNll};
  space.margin = {1.0};
  space.learning_rates = {0.0, 0.05};
  SearchOptions options;
  options.trials = 8;
  options.seed = 4;
  options.threads = 4;
  auto result = RandomSearch(kg, split, ModelKind::kDistMult, space, options);
  bool saw_frozen = false;
  for (const auto& t : result.trials) saw_frozen |= t.config.learning_rate == 0.0;
  CHECK(saw_frozen);
  CHECK(result.config.learning_rate == 0.05);
  options.threads = 1;
  auto serial = RandomSearch(kg, split, ModelKind::kDistMult, space, options);
  CHECK(serial.model == result.model);
}

}  // namespace
}  // namespace kgcr
