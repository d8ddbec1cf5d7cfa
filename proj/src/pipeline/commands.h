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

#ifndef KGCR_PIPELINE_COMMANDS_H_
#define KGCR_PIPELINE_COMMANDS_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kgcr {

using CommandOptions = std::vector<std::pair<std::string, std::string>>;

// Runs one subcommand: mine, train, evaluate, extend, analyze or pipeline.
// Options are config keys (see ConfigKeys) applied in order, after the file
// named by a "config" option if present, plus these command-specific keys:
//   mine:      rules     output path instead of <out>/original_rules.tsv
//   evaluate:  model_file  a model file instead of <out>/models/<Model>.model
//   analyze:   original, extended  diff two rule files into <out>/analysis
// Human-readable results are appended to `output`. Throws Error.
void RunCommand(std::string_view command, const CommandOptions& options,
                std::string& output);

const std::vector<std::string>& CommandNames();

}  // namespace kgcr

#endif  // KGCR_PIPELINE_COMMANDS_H_
