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

#include "pipeline/config.h"

#include <functional>
#include <map>

#include "embed/training.h"
#include "util/error.h"
#include "util/files.h"
#include "util/text.h"

namespace kgcr {
namespace {

template <typename T, typename Parse>
std::vector<T> ParseList(std::string_view value, Parse parse) {
  std::vector<T> out;
  for (const std::string& item : SplitList(value)) out.push_back(parse(item));
  return out;
}

std::vector<size_t> SizeList(std::string_view value, std::string_view key) {
  return ParseList<size_t>(value, [&](const std::string& s) {
    return static_cast<size_t>(ParseUint(s, key));
  });
}

std::vector<double> DoubleList(std::string_view value, std::string_view key) {
  return ParseList<double>(value,
                           [&](const std::string& s) { return ParseDouble(s, key); });
}

template <typename T>
std::string JoinWith(const std::vector<T>& items,
                     const std::function<std::string(const T&)>& format) {
  std::vector<std::string> parts;
  for (const T& item : items) parts.push_back(format(item));
  return Join(parts, ",");
}

std::string SizeText(const size_t& v) { return std::to_string(v); }
std::string DoubleText(const double& v) { return FormatDouble(v); }

using Setter = std::function<void(PipelineConfig&, std::string_view)>;
using Getter = std::function<std::string(const PipelineConfig&)>;

struct KeyHandler {
  std::string key;
  Setter set;
  Getter get;
};

const std::vector<KeyHandler>& Handlers() {
  static const std::vector<KeyHandler> handlers = {
      {"dataset",
       [](PipelineConfig& c, std::string_view v) { c.dataset = SplitList(v); },
       [](const PipelineConfig& c) { return Join(c.dataset, ","); }},
      {"relations",
       [](PipelineConfig& c, std::string_view v) { c.relations = SplitList(v); },
       [](const PipelineConfig& c) { return Join(c.relations, ","); }},
      {"models",
       [](PipelineConfig& c, std::string_view v) {
         c.models = ParseList<ModelKind>(v, [](const std::string& s) {
           return ParseModelKind(s);
         });
       },
       [](const PipelineConfig& c) {
         return JoinWith<ModelKind>(c.models, [](const ModelKind& k) {
           return std::string(ModelKindName(k));
         });
       }},
      {"strategies",
       [](PipelineConfig& c, std::string_view v) {
         c.strategies = ParseList<StrategyKind>(
             v, [](const std::string& s) { return ParseStrategyKind(s); });
       },
       [](const PipelineConfig& c) {
         return JoinWith<StrategyKind>(c.strategies, [](const StrategyKind& k) {
           return std::string(StrategyKindName(k));
         });
       }},
      {"cutoffs",
       [](PipelineConfig& c, std::string_view v) {
         c.cutoffs = ParseList<uint64_t>(
             v, [](const std::string& s) { return ParseUint(s, "cutoffs"); });
       },
       [](const PipelineConfig& c) {
         return JoinWith<uint64_t>(c.cutoffs, [](const uint64_t& v) {
           return std::to_string(v);
         });
       }},
      {"entities",
       [](PipelineConfig& c, std::string_view v) {
         c.entities = ParseUint(v, "entities");
       },
       [](const PipelineConfig& c) { return std::to_string(c.entities); }},
      {"max_atoms",
       [](PipelineConfig& c, std::string_view v) {
         c.mining.max_atoms = ParseUint(v, "max_atoms");
       },
       [](const PipelineConfig& c) { return std::to_string(c.mining.max_atoms); }},
      {"min_support",
       [](PipelineConfig& c, std::string_view v) {
         c.mining.min_support = ParseUint(v, "min_support");
       },
       [](const PipelineConfig& c) { return std::to_string(c.mining.min_support); }},
      {"min_head_coverage",
       [](PipelineConfig& c, std::string_view v) {
         c.mining.min_head_coverage = ParseDouble(v, "min_head_coverage");
       },
       [](const PipelineConfig& c) {
         return FormatDouble(c.mining.min_head_coverage);
       }},
      {"min_pca_confidence",
       [](PipelineConfig& c, std::string_view v) {
         c.mining.min_pca_confidence = ParseDouble(v, "min_pca_confidence");
       },
       [](const PipelineConfig& c) {
         return FormatDouble(c.mining.min_pca_confidence);
       }},
      {"trials",
       [](PipelineConfig& c, std::string_view v) { c.trials = ParseUint(v, "trials"); },
       [](const PipelineConfig& c) { return std::to_string(c.trials); }},
      {"batches_count",
       [](PipelineConfig& c, std::string_view v) {
         c.space.batches_count = SizeList(v, "batches_count");
       },
       [](const PipelineConfig& c) {
         return JoinWith<size_t>(c.space.batches_count, SizeText);
       }},
      {"epochs",
       [](PipelineConfig& c, std::string_view v) {
         c.space.epochs = SizeList(v, "epochs");
       },
       [](const PipelineConfig& c) { return JoinWith<size_t>(c.space.epochs, SizeText); }},
      {"dim",
       [](PipelineConfig& c, std::string_view v) { c.space.dim = SizeList(v, "dim"); },
       [](const PipelineConfig& c) { return JoinWith<size_t>(c.space.dim, SizeText); }},
      {"negatives",
       [](PipelineConfig& c, std::string_view v) {
         c.space.negatives = SizeList(v, "negatives");
       },
       [](const PipelineConfig& c) {
         return JoinWith<size_t>(c.space.negatives, SizeText);
       }},
      {"loss",
       [](PipelineConfig& c, std::string_view v) {
         c.space.loss = ParseList<LossKind>(
             v, [](const std::string& s) { return ParseLossKind(s); });
       },
       [](const PipelineConfig& c) {
         return JoinWith<LossKind>(c.space.loss, [](const LossKind& k) {
           return std::string(LossKindName(k));
         });
       }},
      {"margin",
       [](PipelineConfig& c, std::string_view v) {
         c.space.margin = DoubleList(v, "margin");
       },
       [](const PipelineConfig& c) {
         return JoinWith<double>(c.space.margin, DoubleText);
       }},
      {"learning_rate_min",
       [](PipelineConfig& c, std::string_view v) {
         c.space.learning_rate_min = ParseDouble(v, "learning_rate_min");
       },
       [](const PipelineConfig& c) {
         return FormatDouble(c.space.learning_rate_min);
       }},
      {"learning_rate_max",
       [](PipelineConfig& c, std::string_view v) {
         c.space.learning_rate_max = ParseDouble(v, "learning_rate_max");
       },
       [](const PipelineConfig& c) {
         return FormatDouble(c.space.learning_rate_max);
       }},
      {"learning_rates",
       [](PipelineConfig& c, std::string_view v) {
         c.space.learning_rates = DoubleList(v, "learning_rates");
       },
       [](const PipelineConfig& c) {
         return JoinWith<double>(c.space.learning_rates, DoubleText);
       }},
      {"norm",
       [](PipelineConfig& c, std::string_view v) { c.norm = ParseNormKind(v); },
       [](const PipelineConfig& c) { return std::string(NormKindName(c.norm)); }},
      {"eval_candidates",
       [](PipelineConfig& c, std::string_view v) {
         c.eval_candidates = ParseUint(v, "eval_candidates");
       },
       [](const PipelineConfig& c) { return std::to_string(c.eval_candidates); }},
      {"valid_fraction",
       [](PipelineConfig& c, std::string_view v) {
         c.valid_fraction = ParseDouble(v, "valid_fraction");
       },
       [](const PipelineConfig& c) { return FormatDouble(c.valid_fraction); }},
      {"test_fraction",
       [](PipelineConfig& c, std::string_view v) {
         c.test_fraction = ParseDouble(v, "test_fraction");
       },
       [](const PipelineConfig& c) { return FormatDouble(c.test_fraction); }},
      {"seed",
       [](PipelineConfig& c, std::string_view v) { c.seed = ParseUint(v, "seed"); },
       [](const PipelineConfig& c) { return std::to_string(c.seed); }},
      {"out",
       [](PipelineConfig& c, std::string_view v) { c.out = std::string(Trim(v)); },
       [](const PipelineConfig& c) { return c.out.string(); }},
      {"threads",
       [](PipelineConfig& c, std::string_view v) {
         c.threads = ParseUint(v, "threads");
       },
       [](const PipelineConfig& c) { return std::to_string(c.threads); }},
  };
  return handlers;
}

}  // namespace

void PipelineConfig::Validate() const {
  if (dataset.empty()) Fail(ErrorCode::kInvalidArgument, "no dataset given");
  if (models.empty() || strategies.empty() || cutoffs.empty()) {
    Fail(ErrorCode::kInvalidArgument,
         "models, strategies and cutoffs must be non-empty");
  }
  for (uint64_t c : cutoffs) {
    if (c == 0) Fail(ErrorCode::kInvalidArgument, "rank cutoffs must be >= 1");
  }
  if (entities == 0) Fail(ErrorCode::kInvalidArgument, "entities must be positive");
  if (trials == 0) Fail(ErrorCode::kInvalidArgument, "trials must be positive");
  if (threads == 0) Fail(ErrorCode::kInvalidArgument, "threads must be positive");
  mining.Validate();
  space.Validate();
}

void ApplyConfigValue(PipelineConfig& config, std::string_view key,
                      std::string_view value) {
  const std::string k = ToLower(Trim(key));
  for (const KeyHandler& h : Handlers()) {
    if (h.key == k) {
      h.set(config, Trim(value));
      return;
    }
  }
  Fail(ErrorCode::kInvalidArgument, "unknown config key '" + std::string(key) + "'");
}

void ApplyConfigText(PipelineConfig& config, std::string_view text,
                     std::string_view source_name) {
  size_t line_no = 0;
  for (std::string_view line : Split(text, '\n')) {
    ++line_no;
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      Fail(ErrorCode::kParse, std::string(source_name) + ":" +
                                  std::to_string(line_no) +
                                  ": expected 'key = value'");
    }
    try {
      ApplyConfigValue(config, line.substr(0, eq), line.substr(eq + 1));
    } catch (const Error& e) {
      Fail(e.code(), std::string(source_name) + ":" + std::to_string(line_no) +
                         ": " + e.what());
    }
  }
}

void ApplyConfigFile(PipelineConfig& config, const std::filesystem::path& path) {
  ApplyConfigText(config, ReadFile(path), path.string());
}

const std::vector<std::string>& ConfigKeys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const KeyHandler& h : Handlers()) out.push_back(h.key);
    return out;
  }();
  return keys;
}

std::string FormatConfig(const PipelineConfig& config) {
  std::string out;
  for (const KeyHandler& h : Handlers()) {
    out += h.key + " = " + h.get(config) + "\n";
  }
  return out;
}

}  // namespace kgcr
