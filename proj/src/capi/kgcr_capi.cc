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

#include "kgcr/kgcr.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "embed/evaluation.h"
#include "embed/model.h"
#include "embed/training.h"
#include "kg/knowledge_graph.h"
#include "pipeline/commands.h"
#include "pipeline/config.h"
#include "rules/rule_miner.h"
#include "rules/rule_oracle.h"
#include "util/error.h"
#include "util/text.h"

#ifndef KGCR_VERSION_STRING
#define KGCR_VERSION_STRING "0.0.0"
#endif

struct kgcr_kg {
  kgcr::KnowledgeGraph kg;
};

struct kgcr_model {
  kgcr::EmbeddingModel model;
};

struct kgcr_rules {
  std::vector<kgcr::ScoredRule> rules;
};

namespace {

thread_local std::string last_error;

kgcr_status SetError(kgcr_status status, const char* message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into a status and the thread's last
// error message.
template <typename F>
kgcr_status Guard(F&& body) {
  try {
    body();
    return KGCR_OK;
  } catch (const kgcr::Error& e) {
    return SetError(static_cast<kgcr_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return SetError(KGCR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return SetError(KGCR_INTERNAL, e.what());
  }
}

void Require(bool condition, const char* what) {
  if (!condition) {
    kgcr::Fail(kgcr::ErrorCode::kInvalidArgument, std::string(what) + " is null");
  }
}

char* CopyString(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

kgcr::MiningConfig ToMining(const kgcr_mining_config* c) {
  kgcr::MiningConfig m;
  if (c == nullptr) return m;
  m.max_atoms = c->max_atoms;
  m.min_support = c->min_support;
  m.min_head_coverage = c->min_head_coverage;
  m.min_pca_confidence = c->min_pca_confidence;
  m.threads = c->threads == 0 ? 1 : c->threads;
  return m;
}

std::vector<kgcr::Triple> ResolveTriples(const kgcr::KnowledgeGraph& kg,
                                         const char* const* s, const char* const* r,
                                         const char* const* o, size_t n) {
  std::vector<kgcr::Triple> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    Require(s[i] && r[i] && o[i], "triple name");
    out.push_back({kg.EntityIdOf(s[i]), kg.RelationIdOf(r[i]), kg.EntityIdOf(o[i])});
  }
  return out;
}

}  // namespace

extern "C" {

const char* kgcr_version(void) { return KGCR_VERSION_STRING; }

const char* kgcr_status_name(kgcr_status status) {
  switch (status) {
    case KGCR_OK: return "ok";
    case KGCR_INVALID_ARGUMENT: return "invalid_argument";
    case KGCR_IO: return "io";
    case KGCR_PARSE: return "parse";
    case KGCR_NOT_FOUND: return "not_found";
    case KGCR_EMPTY_RELATION: return "empty_relation";
    case KGCR_OUT_OF_RANGE: return "out_of_range";
    case KGCR_CONTRACT_VIOLATION: return "contract_violation";
    case KGCR_SIZE_LIMIT: return "size_limit";
    case KGCR_UNDEFINED: return "undefined";
    case KGCR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* kgcr_last_error(void) { return last_error.c_str(); }

void kgcr_string_free(char* text) { std::free(text); }

kgcr_status kgcr_kg_load(const char* path, const char* const* relations,
                         size_t relation_count, kgcr_kg** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    std::optional<std::set<std::string>> filter;
    if (relation_count > 0) {
      Require(relations, "relations");
      filter.emplace(relations, relations + relation_count);
    }
    *out = new kgcr_kg{kgcr::LoadTsv(path, filter)};
  });
}

kgcr_status kgcr_kg_from_triples(const char* const* subjects,
                                 const char* const* relations,
                                 const char* const* objects, size_t count,
                                 kgcr_kg** out) {
  return Guard([&] {
    Require(out, "out");
    Require(count == 0 || (subjects && relations && objects), "triple arrays");
    kgcr::KnowledgeGraphBuilder builder;
    for (size_t i = 0; i < count; ++i) {
      Require(subjects[i] && relations[i] && objects[i], "triple name");
      builder.Add(subjects[i], relations[i], objects[i]);
    }
    *out = new kgcr_kg{builder.Build()};
  });
}

void kgcr_kg_free(kgcr_kg* kg) { delete kg; }

size_t kgcr_kg_size(const kgcr_kg* kg) { return kg ? kg->kg.size() : 0; }

size_t kgcr_kg_entity_count(const kgcr_kg* kg) {
  return kg ? kg->kg.entity_count() : 0;
}

size_t kgcr_kg_relation_count(const kgcr_kg* kg) {
  return kg ? kg->kg.relation_count() : 0;
}

kgcr_status kgcr_kg_contains(const kgcr_kg* kg, const char* subject,
                             const char* relation, const char* object, int* out) {
  return Guard([&] {
    Require(kg, "kg");
    Require(subject && relation && object, "triple name");
    Require(out, "out");
    const auto& g = kg->kg;
    auto s = g.entities().Find(subject);
    auto r = g.relations().Find(relation);
    auto o = g.entities().Find(object);
    *out = s && r && o && g.Contains(*s, *r, *o);
  });
}

kgcr_status kgcr_kg_relation_stats(const kgcr_kg* kg, const char* relation,
                                   kgcr_relation_stats* out) {
  return Guard([&] {
    Require(kg, "kg");
    Require(relation, "relation");
    Require(out, "out");
    const kgcr::RelationStats st = kg->kg.Stats(kg->kg.RelationIdOf(relation));
    *out = {st.size, st.distinct_subjects, st.distinct_objects, st.fun, st.inv_fun};
  });
}

kgcr_status kgcr_kg_save(const kgcr_kg* kg, const char* path) {
  return Guard([&] {
    Require(kg, "kg");
    Require(path, "path");
    kgcr::WriteTsv(kg->kg, path);
  });
}

void kgcr_train_config_default(kgcr_train_config* config) {
  if (config == nullptr) return;
  const kgcr::TrainConfig d;
  config->batches_count = d.batches_count;
  config->epochs = d.epochs;
  config->dim = d.dim;
  config->negatives = d.negatives;
  config->loss = "pairwise";
  config->margin = d.margin;
  config->learning_rate = d.learning_rate;
  config->seed = d.seed;
  config->norm = "L1";
  config->normalize_entities = d.normalize_entities ? 1 : 0;
}

kgcr_status kgcr_model_train(const kgcr_kg* kg, const char* kind,
                             const kgcr_train_config* config, kgcr_model** out) {
  return Guard([&] {
    Require(kg, "kg");
    Require(kind, "kind");
    Require(out, "out");
    kgcr_train_config c;
    kgcr_train_config_default(&c);
    if (config) c = *config;
    kgcr::TrainConfig t;
    t.batches_count = c.batches_count;
    t.epochs = c.epochs;
    t.dim = c.dim;
    t.negatives = c.negatives;
    t.loss = kgcr::ParseLossKind(c.loss ? c.loss : "pairwise");
    t.margin = c.margin;
    t.learning_rate = c.learning_rate;
    t.seed = c.seed;
    t.norm = kgcr::ParseNormKind(c.norm ? c.norm : "L1");
    t.normalize_entities = c.normalize_entities != 0;
    *out = new kgcr_model{kgcr::Train(kg->kg, kgcr::ParseModelKind(kind), t)};
  });
}

kgcr_status kgcr_model_load(const char* path, kgcr_model** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new kgcr_model{kgcr::LoadModel(path)};
  });
}

kgcr_status kgcr_model_save(const kgcr_model* model, const char* path) {
  return Guard([&] {
    Require(model, "model");
    Require(path, "path");
    kgcr::SaveModel(model->model, path);
  });
}

void kgcr_model_free(kgcr_model* model) { delete model; }

const char* kgcr_model_kind(const kgcr_model* model) {
  return model ? kgcr::ModelKindName(model->model.kind()).data() : "";
}

size_t kgcr_model_dim(const kgcr_model* model) {
  return model ? model->model.dim() : 0;
}

kgcr_status kgcr_model_score(const kgcr_model* model, const char* subject,
                             const char* relation, const char* object, double* out) {
  return Guard([&] {
    Require(model, "model");
    Require(subject && relation && object, "triple name");
    Require(out, "out");
    *out = model->model.ScoreNamed(subject, relation, object);
  });
}

kgcr_status kgcr_model_evaluate(const kgcr_model* model, const kgcr_kg* known,
                                const char* const* subjects,
                                const char* const* relations,
                                const char* const* objects, size_t count,
                                size_t candidate_count, uint64_t seed,
                                kgcr_eval_report* out) {
  return Guard([&] {
    Require(model, "model");
    Require(known, "known");
    Require(out, "out");
    Require(count == 0 || (subjects && relations && objects), "triple arrays");
    const auto test = ResolveTriples(known->kg, subjects, relations, objects, count);
    const auto candidates = kgcr::SampleCandidates(known->kg, candidate_count, seed);
    const kgcr::EvalReport r = kgcr::Evaluate(model->model, test, candidates, known->kg);
    auto hits = [&](int k) {
      auto it = r.hits.find(k);
      return it == r.hits.end() ? 0.0 : it->second;
    };
    *out = {r.mr, r.mrr, hits(1), hits(3), hits(10), r.n_queries, r.candidate_count};
  });
}

void kgcr_mining_config_default(kgcr_mining_config* config) {
  if (config == nullptr) return;
  const kgcr::MiningConfig d;
  *config = {d.max_atoms, d.min_support, d.min_head_coverage, d.min_pca_confidence,
             d.threads};
}

kgcr_status kgcr_mine(const kgcr_kg* kg, const kgcr_mining_config* config,
                      kgcr_rules** out) {
  return Guard([&] {
    Require(kg, "kg");
    Require(out, "out");
    *out = new kgcr_rules{kgcr::Mine(kg->kg, ToMining(config))};
  });
}

kgcr_status kgcr_oracle_mine(const kgcr_kg* kg, const kgcr_mining_config* config,
                             kgcr_rules** out) {
  return Guard([&] {
    Require(kg, "kg");
    Require(out, "out");
    *out = new kgcr_rules{kgcr::OracleMineFiltered(kg->kg, ToMining(config))};
  });
}

kgcr_status kgcr_rules_load(const char* path, kgcr_rules** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new kgcr_rules{kgcr::ReadRuleFile(path)};
  });
}

kgcr_status kgcr_rules_save(const kgcr_rules* rules, const char* path) {
  return Guard([&] {
    Require(rules, "rules");
    Require(path, "path");
    kgcr::WriteRuleFile(rules->rules, path);
  });
}

void kgcr_rules_free(kgcr_rules* rules) { delete rules; }

size_t kgcr_rules_count(const kgcr_rules* rules) {
  return rules ? rules->rules.size() : 0;
}

kgcr_status kgcr_rules_get(const kgcr_rules* rules, size_t index,
                           kgcr_rule_info* out) {
  return Guard([&] {
    Require(rules, "rules");
    Require(out, "out");
    if (index >= rules->rules.size()) {
      kgcr::Fail(kgcr::ErrorCode::kOutOfRange, "rule index out of range");
    }
    const kgcr::ScoredRule& r = rules->rules[index];
    *out = {r.text.c_str(), r.support, r.head_coverage, r.pca_confidence,
            r.pca_body_size};
  });
}

kgcr_status kgcr_run_command(const char* command, const char* const* keys,
                             const char* const* values, size_t count, char** output) {
  if (output) *output = nullptr;
  return Guard([&] {
    Require(command, "command");
    Require(count == 0 || (keys && values), "option arrays");
    kgcr::CommandOptions options;
    for (size_t i = 0; i < count; ++i) {
      Require(keys[i] && values[i], "option");
      options.emplace_back(keys[i], values[i]);
    }
    std::string text;
    kgcr::RunCommand(command, options, text);
    if (output) *output = CopyString(text);
  });
}

kgcr_status kgcr_config_keys(char** out) {
  return Guard([&] {
    Require(out, "out");
    std::string text;
    for (const std::string& key : kgcr::ConfigKeys()) text += key + "\n";
    *out = CopyString(text);
  });
}

}  // extern "C"
