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
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kgcr/kgcr.h"

namespace {

struct Subcommand {
  const char* name;
  const char* help;
  std::vector<std::pair<const char*, const char*>> extra;  // key, help
};

const std::vector<Subcommand>& Subcommands() {
  static const std::vector<Subcommand> subcommands = {
      {"mine", "Mine closed Horn rules from the dataset",
       {{"rules", "Write the rule file here instead of <out>/original_rules.tsv"}}},
      {"train", "Select and train one embedding model per configured kind", {}},
      {"evaluate", "Evaluate trained models on the held-out test split",
       {{"model_file", "Evaluate this model file instead of <out>/models"}}},
      {"extend", "Build and mine every extension from the trained models", {}},
      {"analyze", "Compare the original rules with the rules of the extensions",
       {{"original", "Original rule file (diff mode)"},
        {"extended", "Extended rule file (diff mode)"}}},
      {"pipeline", "Run mine, train, extend and analyze in sequence", {}},
  };
  return subcommands;
}

std::vector<std::string> ConfigKeys() {
  char* text = nullptr;
  std::vector<std::string> keys;
  if (kgcr_config_keys(&text) != KGCR_OK) return keys;
  std::istringstream lines(text);
  kgcr_string_free(text);
  for (std::string key; std::getline(lines, key);) {
    if (!key.empty()) keys.push_back(key);
  }
  return keys;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knowledge graph completion and rule mining"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kgcr_version()));

  const std::vector<std::pair<std::string, std::string>> global_help = {
      {"seed", "Master seed"},
      {"out", "Output directory"},
      {"threads", "Worker threads"}};
  std::vector<std::string> global;
  for (const auto& [key, help] : global_help) global.push_back(key);
  std::map<std::string, std::string> values;
  std::string config_file;
  app.add_option("--config", config_file, "Config file with key = value lines");
  for (const auto& [key, help] : global_help) {
    app.add_option("--" + key, values[key], help);
  }

  for (const Subcommand& sub : Subcommands()) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    cmd->fallthrough();
    for (const std::string& key : ConfigKeys()) {
      if (std::find(global.begin(), global.end(), key) != global.end()) continue;
      cmd->add_option("--" + key, values[key]);
    }
    for (const auto& [key, help] : sub.extra) {
      cmd->add_option(std::string("--") + key, values[key], help);
    }
  }

  CLI11_PARSE(app, argc, argv);

  std::vector<std::string> keys;
  std::vector<std::string> vals;
  if (!config_file.empty()) {
    keys.push_back("config");
    vals.push_back(config_file);
  }
  const CLI::App* selected = app.get_subcommands().front();
  for (const auto& [key, value] : values) {
    const CLI::Option* opt = app.get_option_no_throw("--" + key);
    if (opt == nullptr) opt = selected->get_option_no_throw("--" + key);
    if (opt == nullptr || opt->count() == 0) continue;
    keys.push_back(key);
    vals.push_back(value);
  }

  std::vector<const char*> key_ptrs;
  std::vector<const char*> val_ptrs;
  for (size_t i = 0; i < keys.size(); ++i) {
    key_ptrs.push_back(keys[i].c_str());
    val_ptrs.push_back(vals[i].c_str());
  }

  const std::string command = selected->get_name();
  char* output = nullptr;
  const kgcr_status status = kgcr_run_command(
      command.c_str(), key_ptrs.data(), val_ptrs.data(), keys.size(), &output);
  if (output != nullptr) {
    std::fputs(output, stdout);
    kgcr_string_free(output);
  }
  if (status != KGCR_OK) {
    std::fprintf(stderr, "kgcr %s: %s: %s\n", command.c_str(),
                 kgcr_status_name(status), kgcr_last_error());
    return static_cast<int>(status);
  }
  return 0;
}
