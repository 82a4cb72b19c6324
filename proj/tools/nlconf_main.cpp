// Copyright 2026 The nlconf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// nlconf command-line entry point.
#include <iostream>

#include <CLI11.hpp>

#include "nlconf/app.hpp"
#include "nlconf/error.hpp"

int main(int argc, char** argv) {
  CLI::App cli{"Detects non-lexical confirmations in speech audio"};
  cli.set_version_flag("--version", "nlconf 1.0.0");

  std::string command;
  std::string config_file;
  std::vector<std::string> settings;
  // Shortcut flags; each maps onto the setting of the same name.
  const std::vector<std::pair<std::string, std::string>> shortcuts = {
      {"--feature-set", "feature_set"}, {"--manifest", "manifest"}, {"--model", "model"},
      {"--wav", "wav"},                 {"--out", "out"},           {"--seed", "seed"},
      {"--C", "C"},                     {"--eps", "eps"},           {"--gamma", "gamma"},
      {"--pca-epsilon", "pca_epsilon"}, {"--threshold", "majority_threshold"},
      {"--train-fraction", "train_fraction"}, {"--chunk", "chunk"}};
  std::vector<std::string> shortcut_values(shortcuts.size());

  cli.add_option("command", command, "extract | train | grid-search | evaluate | classify | listen | synth-corpus")
      ->required()
      ->check(CLI::IsMember({"extract", "train", "grid-search", "evaluate", "classify", "listen", "synth-corpus"}));
  cli.add_option("-c,--config", config_file, "key = value configuration file");
  cli.add_option("-s,--set", settings, "override one setting, key=value (repeatable)");
  for (std::size_t i = 0; i < shortcuts.size(); ++i)
    cli.add_option(shortcuts[i].first, shortcut_values[i], "sets '" + shortcuts[i].second + "'");
  bool no_grid = false, segment_roc = false;
  cli.add_flag("--no-grid", no_grid, "evaluate with per-feature-set default hyperparameters");
  cli.add_flag("--segment-roc", segment_roc, "also report a segment-level ROC");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    nlconf::app::RunConfig config;
    if (!config_file.empty())
      for (const auto& [k, v] : nlconf::app::read_config_file(config_file)) nlconf::app::apply_setting(config, k, v);
    for (std::size_t i = 0; i < shortcuts.size(); ++i)
      if (!shortcut_values[i].empty()) nlconf::app::apply_setting(config, shortcuts[i].second, shortcut_values[i]);
    for (const auto& s : settings) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) nlconf::fail(nlconf::ErrorCode::ConfigError, "--set expects key=value: " + s);
      nlconf::app::apply_setting(config, s.substr(0, eq), s.substr(eq + 1));
    }
    if (no_grid) config.grid = false;
    if (segment_roc) config.segment_roc = true;

    nlconf::app::run(nlconf::app::parse_command(command), config, std::cout);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "nlconf: " << e.what() << '\n';
    return nlconf::app::exit_code_for(e);
  }
}
