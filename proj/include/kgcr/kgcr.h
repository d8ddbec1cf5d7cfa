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

/*
 * C interface to the kgcr library.
 *
 * Objects are opaque handles created by the *_load / *_train / *_mine
 * functions and released with the matching *_free. Functions that can fail
 * return a kgcr_status; on failure kgcr_last_error() describes the error for
 * the calling thread until its next failing call. Strings returned through
 * `char**` out-parameters are owned by the caller and released with
 * kgcr_string_free. Handles are immutable once created and may be shared
 * across threads.
 */

#ifndef KGCR_KGCR_H_
#define KGCR_KGCR_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KGCR_API __declspec(dllexport)
#else
#define KGCR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kgcr_status {
  KGCR_OK = 0,
  KGCR_INVALID_ARGUMENT = 1,
  KGCR_IO = 2,
  KGCR_PARSE = 3,
  KGCR_NOT_FOUND = 4,
  KGCR_EMPTY_RELATION = 5,
  KGCR_OUT_OF_RANGE = 6,
  KGCR_CONTRACT_VIOLATION = 7,
  KGCR_SIZE_LIMIT = 8,
  KGCR_UNDEFINED = 9,
  KGCR_INTERNAL = 10
} kgcr_status;

KGCR_API const char* kgcr_version(void);
KGCR_API const char* kgcr_status_name(kgcr_status status);
KGCR_API const char* kgcr_last_error(void);
KGCR_API void kgcr_string_free(char* text);

/* Knowledge graphs */

typedef struct kgcr_kg kgcr_kg;

typedef struct kgcr_relation_stats {
  uint64_t size;
  uint64_t distinct_subjects;
  uint64_t distinct_objects;
  double fun;
  double inv_fun;
} kgcr_relation_stats;

/* Loads a tab-separated triple file. A non-empty relation list keeps only
 * those relations. */
KGCR_API kgcr_status kgcr_kg_load(const char* path, const char* const* relations,
                                  size_t relation_count, kgcr_kg** out);
KGCR_API kgcr_status kgcr_kg_from_triples(const char* const* subjects,
                                          const char* const* relations,
                                          const char* const* objects, size_t count,
                                          kgcr_kg** out);
KGCR_API void kgcr_kg_free(kgcr_kg* kg);
KGCR_API size_t kgcr_kg_size(const kgcr_kg* kg);
KGCR_API size_t kgcr_kg_entity_count(const kgcr_kg* kg);
KGCR_API size_t kgcr_kg_relation_count(const kgcr_kg* kg);
/* *out is 1 when the triple is present, 0 otherwise (including unknown names). */
KGCR_API kgcr_status kgcr_kg_contains(const kgcr_kg* kg, const char* subject,
                                      const char* relation, const char* object,
                                      int* out);
KGCR_API kgcr_status kgcr_kg_relation_stats(const kgcr_kg* kg, const char* relation,
                                            kgcr_relation_stats* out);
KGCR_API kgcr_status kgcr_kg_save(const kgcr_kg* kg, const char* path);

/* Embedding models */

typedef struct kgcr_model kgcr_model;

typedef struct kgcr_train_config {
  size_t batches_count;
  size_t epochs;
  size_t dim;
  size_t negatives;
  const char* loss; /* "pairwise" or "nll" */
  double margin;
  double learning_rate;
  uint64_t seed;
  const char* norm; /* "L1" or "L2", TransE only */
  int normalize_entities;
} kgcr_train_config;

KGCR_API void kgcr_train_config_default(kgcr_train_config* config);

/* kind: "TransE", "DistMult", "ComplEx" or "RandomBaseline". */
KGCR_API kgcr_status kgcr_model_train(const kgcr_kg* kg, const char* kind,
                                      const kgcr_train_config* config,
                                      kgcr_model** out);
KGCR_API kgcr_status kgcr_model_load(const char* path, kgcr_model** out);
KGCR_API kgcr_status kgcr_model_save(const kgcr_model* model, const char* path);
KGCR_API void kgcr_model_free(kgcr_model* model);
KGCR_API const char* kgcr_model_kind(const kgcr_model* model);
KGCR_API size_t kgcr_model_dim(const kgcr_model* model);
KGCR_API kgcr_status kgcr_model_score(const kgcr_model* model, const char* subject,
                                      const char* relation, const char* object,
                                      double* out);

typedef struct kgcr_eval_report {
  double mr;
  double mrr;
  double hits_at_1;
  double hits_at_3;
  double hits_at_10;
  uint64_t queries;
  uint64_t candidates;
} kgcr_eval_report;

/* Filtered ranking of the given test triples against `candidate_count`
 * entities sampled from `known` with `seed`; `known` is the filter set. */
KGCR_API kgcr_status kgcr_model_evaluate(const kgcr_model* model, const kgcr_kg* known,
                                         const char* const* subjects,
                                         const char* const* relations,
                                         const char* const* objects, size_t count,
                                         size_t candidate_count, uint64_t seed,
                                         kgcr_eval_report* out);

/* Rule mining */

typedef struct kgcr_rules kgcr_rules;

typedef struct kgcr_mining_config {
  size_t max_atoms;
  uint64_t min_support;
  double min_head_coverage;
  double min_pca_confidence;
  size_t threads;
} kgcr_mining_config;

typedef struct kgcr_rule_info {
  const char* text; /* valid while the rules handle lives */
  uint64_t support;
  double head_coverage;
  double pca_confidence;
  uint64_t pca_body_size;
} kgcr_rule_info;

KGCR_API void kgcr_mining_config_default(kgcr_mining_config* config);
KGCR_API kgcr_status kgcr_mine(const kgcr_kg* kg, const kgcr_mining_config* config,
                               kgcr_rules** out);
/* Exhaustive reference miner for small graphs; same output contract. */
KGCR_API kgcr_status kgcr_oracle_mine(const kgcr_kg* kg,
                                      const kgcr_mining_config* config,
                                      kgcr_rules** out);
KGCR_API kgcr_status kgcr_rules_load(const char* path, kgcr_rules** out);
KGCR_API kgcr_status kgcr_rules_save(const kgcr_rules* rules, const char* path);
KGCR_API void kgcr_rules_free(kgcr_rules* rules);
KGCR_API size_t kgcr_rules_count(const kgcr_rules* rules);
KGCR_API kgcr_status kgcr_rules_get(const kgcr_rules* rules, size_t index,
                                    kgcr_rule_info* out);

/* Pipeline commands */

/* Runs "mine", "train", "evaluate", "extend", "analyze" or "pipeline" with
 * key/value options (config keys, "config" for a config file, and the
 * command-specific keys). When `output` is non-null it receives the
 * command's report text. */
KGCR_API kgcr_status kgcr_run_command(const char* command, const char* const* keys,
                                      const char* const* values, size_t count,
                                      char** output);

/* Names of the keys accepted by kgcr_run_command besides the command-specific
 * ones, one per line. */
KGCR_API kgcr_status kgcr_config_keys(char** out);

#ifdef __cplusplus
}
#endif

#endif /* KGCR_KGCR_H_ */
