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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "rules/rule.h"
#include "rules/rule_miner.h"
#include "rules/rule_oracle.h"
#include "test_support.h"
#include "util/error.h"

namespace kgcr {
namespace {

using testing::MakeKg;

KnowledgeGraph ToyFamily() {
  return MakeKg({{"a", "sibling", "b"},
                 {"b", "sibling", "a"},
                 {"c", "sibling", "d"},
                 {"a", "relative", "b"}});
}

Rule Bind(const KnowledgeGraph& kg, std::string_view text) {
  auto rule = BindRule(ParseRule(text), kg);
  REQUIRE(rule.has_value());
  return *rule;
}

const ScoredRule* FindRule(const std::vector<ScoredRule>& rules,
                           std::string_view text) {
  const std::string canonical = CanonicalRuleText(text);
  for (const ScoredRule& r : rules) {
    if (r.text == canonical) return &r;
  }
  return nullptr;
}

TEST_CASE("predictions of sibling => relative") {
  auto kg = ToyFamily();
  RuleEvaluator eval(kg);
  Rule rule = Bind(kg, "sibling(x,y) => relative(x,y)");
  const RelationId rel = kg.RelationIdOf("relative");
  auto e = [&](const char* n) { return kg.EntityIdOf(n); };
  std::vector<Triple> expected = {{e("a"), rel, e("b")},
                                  {e("b"), rel, e("a")},
                                  {e("c"), rel, e("d")}};
  std::sort(expected.begin(), expected.end());
  CHECK(eval.Predictions(rule) == expected);
  CHECK(eval.Support(rule) == 1);
  CHECK(eval.PcaBodySize(rule) == 1);
  auto scored = eval.Score(rule);
  CHECK(scored.pca_confidence == 1.0);
  CHECK(scored.head_coverage == 1.0);
}

TEST_CASE("identity rule predicts the relation itself") {
  auto kg = testing::RandomKg(11, 10, 2, 30);
  RuleEvaluator eval(kg);
  const RelationId r = 0;
  Rule rule{{Atom{r, kVarX, kVarY}}, Atom{r, kVarX, kVarY}};
  auto preds = eval.Predictions(rule);
  auto rel = kg.RelationTriples(r);
  CHECK(std::vector<Triple>(rel.begin(), rel.end()) == preds);
  CHECK(eval.Support(rule) == kg.RelationSize(r));
  CHECK(eval.Score(rule).pca_confidence == 1.0);
}

TEST_CASE("absent body relation yields nothing") {
  auto kg = MakeKg({{"a", "r", "b"}});
  CHECK_FALSE(BindRule(ParseRule("missing(x,y) => r(x,y)"), kg).has_value());
  Dictionary ents, rels;
  ents.Intern("a");
  ents.Intern("b");
  rels.Intern("r");
  rels.Intern("s");
  KnowledgeGraph sparse(ents, rels, {Triple{0, 0, 1}});
  RuleEvaluator eval(sparse);
  Rule rule{{Atom{1, kVarX, kVarY}}, Atom{0, kVarX, kVarY}};
  CHECK(eval.Predictions(rule).empty());
  CHECK(eval.Support(rule) == 0);
  CHECK(eval.Score(rule).pca_confidence == 0.0);
}

TEST_CASE("pca witness side follows functionality") {
  // r has 1 distinct subject and 3 distinct objects, so the object side is
  // used: a prediction (x, y) needs some r(_, y).
  auto kg = MakeKg({{"a", "r", "b"},
                    {"a", "r", "c"},
                    {"a", "r", "d"},
                    {"p", "s", "b"},
                    {"q", "s", "c"},
                    {"a", "s", "e"},
                    {"a", "s", "b"}});
  RuleEvaluator eval(kg);
  Rule rule = Bind(kg, "s(x,y) => r(x,y)");
  // predictions: r(p,b) r(q,c) r(a,e) r(a,b); support 1 (a,b);
  // object witnesses exist for b, c -> (p,b) (q,c) (a,b).
  CHECK(eval.Support(rule) == 1);
  CHECK(eval.PcaBodySize(rule) == 3);
  CHECK(eval.Score(rule).pca_confidence == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("canonical text is independent of variable naming and order") {
  CHECK(CanonicalRuleText("b(z,y) & a(x,z) => h(x,y)") ==
        CanonicalRuleText("a(x,w) & b(w,y) => h(x,y)"));
  CHECK(CanonicalRuleText("a(x,z) & b(z,y) => h(x,y)") ==
        "a(x,z) & b(z,y) => h(x,y)");
  CHECK(CanonicalRuleText("DRF(y,x) => DRF(x,y)") == "DRF(y,x) => DRF(x,y)");
  CHECK_THROWS_AS(ParseRule("a(x,x) => h(x,y)"), Error);
  CHECK_THROWS_AS(ParseRule("a(x,y) h(x,y)"), Error);
}

TEST_CASE("toy family mining finds sibling => relative") {
  auto kg = ToyFamily();
  MiningConfig config;
  config.min_support = 1;
  config.min_head_coverage = 0.0;
  auto rules = Mine(kg, config);
  const ScoredRule* r = FindRule(rules, "sibling(x,y) => relative(x,y)");
  REQUIRE(r != nullptr);
  CHECK(r->pca_confidence == 1.0);

  auto oracle = OracleMine(kg, 2);
  const ScoredRule* o = FindRule(oracle, "sibling(x,y) => relative(x,y)");
  REQUIRE(o != nullptr);
  CHECK(o->pca_confidence == 1.0);
}

TEST_CASE("thresholds prune everything on a single triple") {
  auto kg = MakeKg({{"a", "r", "b"}});
  MiningConfig config;
  config.min_support = 2;
  CHECK(Mine(kg, config).empty());
  CHECK(OracleMine(KnowledgeGraph(), 3).empty());
}

TEST_CASE("mining config validation") {
  MiningConfig config;
  config.max_atoms = 1;
  CHECK_THROWS_AS(config.Validate(), Error);
  config.max_atoms = 3;
  config.min_head_coverage = -0.1;
  CHECK_THROWS_AS(config.Validate(), Error);
}

TEST_CASE("oracle refuses large graphs") {
  auto kg = testing::RandomKg(1, 200, 2, 400);
  try {
    OracleMine(kg, 2);
    FAIL("expected a size error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSizeLimit);
  }
}

TEST_CASE("mine agrees with the oracle on random graphs") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    auto kg = testing::RandomKg(1000 + seed, 8 + seed % 15, 3, 20 + seed * 2);
    MiningConfig config;
    config.min_support = 1 + seed % 3;
    config.min_head_coverage = 0.05 * (seed % 4);
    config.min_pca_confidence = 0.1 * (seed % 2);
    config.max_atoms = 2 + seed % 2;
    CAPTURE(seed);
    CHECK(Mine(kg, config) == OracleMineFiltered(kg, config));
  }
}

TEST_CASE("parallel mining matches serial mining") {
  auto kg = MakeKg(testing::FamilyTriples(5, 12, 4));
  MiningConfig config;
  config.min_support = 2;
  auto serial = Mine(kg, config);
  config.threads = 4;
  CHECK(Mine(kg, config) == serial);
  CHECK_FALSE(serial.empty());
}

TEST_CASE("mined rules are unique and sorted") {
  auto kg = MakeKg(testing::FamilyTriples(9, 15, 5));
  MiningConfig config;
  config.min_support = 1;
  config.max_atoms = 3;
  auto rules = Mine(kg, config);
  std::set<std::string> texts;
  for (const auto& r : rules) {
    CHECK(texts.insert(r.text).second);
    CHECK(r.support <= r.pca_body_size);
    CHECK(r.rule.IsClosed());
  }
  for (size_t i = 1; i < rules.size(); ++i) {
    const auto& a = rules[i - 1];
    const auto& b = rules[i];
    const bool ordered =
        a.pca_confidence > b.pca_confidence ||
        (a.pca_confidence == b.pca_confidence &&
         (a.head_coverage > b.head_coverage ||
          (a.head_coverage == b.head_coverage && a.text < b.text)));
    CHECK(ordered);
  }
}

TEST_CASE("pca confidence is at least raw confidence") {
  auto kg = testing::RandomKg(77, 15, 3, 70);
  RuleEvaluator eval(kg);
  for (const auto& r : OracleMine(kg, 3)) {
    const auto preds = eval.Predictions(r.rule);
    if (preds.empty()) continue;
    CHECK(r.pca_confidence >=
          static_cast<double>(r.support) / static_cast<double>(preds.size()));
  }
}

TEST_CASE("adding a body atom never increases the measures") {
  auto kg = testing::RandomKg(21, 10, 3, 50);
  RuleEvaluator eval(kg);
  for (RelationId h = 0; h < kg.relation_count(); ++h) {
    for (RelationId b1 = 0; b1 < kg.relation_count(); ++b1) {
      Rule shorter{{Atom{b1, kVarX, kVarY}}, Atom{h, kVarX, kVarY}};
      if (b1 == h) continue;
      for (RelationId b2 = 0; b2 < kg.relation_count(); ++b2) {
        Rule longer = shorter;
        longer.body.push_back(Atom{b2, kVarY, kVarX});
        CHECK(eval.Support(longer) <= eval.Support(shorter));
        CHECK(eval.PcaBodySize(longer) <= eval.PcaBodySize(shorter));
      }
    }
  }
}

TEST_CASE("rule file round trip") {
  auto kg = MakeKg(testing::FamilyTriples(2, 6, 4));
  MiningConfig config;
  config.min_support = 1;
  auto rules = Mine(kg, config);
  REQUIRE_FALSE(rules.empty());
  const std::string text = FormatRuleFile(rules);
  CHECK(text.rfind("rule\tsupport\thead_coverage\tpca_confidence\tpca_body_size\n", 0) == 0);
  auto back = ParseRuleFile(text, "mem");
  REQUIRE(back.size() == rules.size());
  for (size_t i = 0; i < rules.size(); ++i) {
    CHECK(back[i].text == rules[i].text);
    CHECK(back[i].support == rules[i].support);
    CHECK(back[i].head_coverage == rules[i].head_coverage);
    CHECK(back[i].pca_confidence == rules[i].pca_confidence);
    CHECK(back[i].pca_body_size == rules[i].pca_body_size);
  }
  CHECK(FormatRuleFile(rules) == FormatRuleFile(Mine(kg, config)));
}

}  // namespace
}  // namespace kgcr
