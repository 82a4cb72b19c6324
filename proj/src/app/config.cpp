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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "nlconf/app.hpp"
#include "nlconf/error.hpp"
#include "nlconf/learn/dataset.hpp"

namespace nlconf::app {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  fail(ErrorCode::ConfigError, "invalid value '" + std::string(value) + "' for " + std::string(key));
}

double to_double(std::string_view key, std::string_view value) {
  double v = 0.0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc{} || ptr != end) bad_value(key, value);
  return v;
}

std::uint64_t to_u64(std::string_view key, std::string_view value) {
  std::uint64_t v = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc{} || ptr != end) bad_value(key, value);
  return v;
}

bool to_bool(std::string_view key, std::string_view value) {
  std::string v(value);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  bad_value(key, value);
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = value.find(',', start);
    const auto item = trim(value.substr(start, comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> to_doubles(std::string_view key, std::string_view value) {
  std::vector<double> out;
  for (auto item : split_list(value)) out.push_back(to_double(key, item));
  if (out.empty()) bad_value(key, value);
  return out;
}

std::string join(const std::vector<double>& values) {
  std::ostringstream s;
  for (std::size_t i = 0; i < values.size(); ++i) s << (i ? "," : "") << values[i];
  return s.str();
}

std::string number(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Extract: return "extract";
    case Command::Train: return "train";
    case Command::GridSearch: return "grid-search";
    case Command::Evaluate: return "evaluate";
    case Command::Classify: return "classify";
    case Command::Listen: return "listen";
    case Command::SynthCorpus: return "synth-corpus";
  }
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (auto c : {Command::Extract, Command::Train, Command::GridSearch, Command::Evaluate, Command::Classify,
                 Command::Listen, Command::SynthCorpus})
    if (to_string(c) == name) return c;
  fail(ErrorCode::ConfigError, "unknown command '" + std::string(name) + "'");
}

learn::SvmHyperParams RunConfig::params_for(featset::FeatureKind kind) const {
  auto p = learn::default_hyperparams(kind);
  if (svm_C) p.C = *svm_C;
  if (svm_eps) p.eps = *svm_eps;
  if (svm_gamma) p.gamma = *svm_gamma;
  return p;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  if (key == "feature_set" || key == "feature_sets") {
    c.feature_sets.clear();
    if (value == "all") {
      c.feature_sets.assign(featset::kAllKinds.begin(), featset::kAllKinds.end());
    } else {
      for (auto item : split_list(value)) c.feature_sets.push_back(featset::parse_feature_kind(item));
    }
    if (c.feature_sets.empty()) bad_value(key, value);
  } else if (key == "C") {
    c.svm_C = to_double(key, value);
  } else if (key == "eps") {
    c.svm_eps = to_double(key, value);
  } else if (key == "gamma") {
    c.svm_gamma = to_double(key, value);
  } else if (key == "pca_epsilon") {
    c.pca_epsilon = to_double(key, value);
    if (!(c.pca_epsilon > 0.0 && c.pca_epsilon <= 1.0)) bad_value(key, value);
  } else if (key == "normalize") {
    c.normalize = to_bool(key, value);
  } else if (key == "majority_threshold") {
    c.majority_threshold = to_double(key, value);
    if (!(c.majority_threshold >= -1.0 && c.majority_threshold <= 1.0)) bad_value(key, value);
  } else if (key == "vad_threshold") {
    c.vad.energy_threshold = to_double(key, value);
  } else if (key == "vad_hangover_ms") {
    c.vad.hangover_ms = to_double(key, value);
  } else if (key == "seed") {
    c.seed = to_u64(key, value);
  } else if (key == "train_fraction") {
    c.train_fraction = to_double(key, value);
    if (!(c.train_fraction > 0.0 && c.train_fraction <= 1.0)) bad_value(key, value);
  } else if (key == "grid") {
    c.grid = to_bool(key, value);
  } else if (key == "segment_roc") {
    c.segment_roc = to_bool(key, value);
  } else if (key == "grid_C") {
    c.hyper_grid.C = to_doubles(key, value);
  } else if (key == "grid_eps") {
    c.hyper_grid.eps = to_doubles(key, value);
  } else if (key == "grid_gamma") {
    c.hyper_grid.gamma = to_doubles(key, value);
  } else if (key == "chunk") {
    c.chunk = static_cast<std::size_t>(to_u64(key, value));
    if (c.chunk == 0) bad_value(key, value);
  } else if (key == "synth_speakers") {
    c.synth.speakers = static_cast<std::size_t>(to_u64(key, value));
  } else if (key == "synth_segments") {
    c.synth.segments_per_speaker = static_cast<std::size_t>(to_u64(key, value));
  } else if (key == "synth_confirmation_rate") {
    c.synth.confirmation_rate = to_double(key, value);
  } else if (key == "manifest") {
    c.manifest = std::string(value);
  } else if (key == "model") {
    c.model = std::string(value);
  } else if (key == "wav") {
    c.wav = std::string(value);
  } else if (key == "out") {
    c.out = std::string(value);
  } else {
    fail(ErrorCode::ConfigError, "unknown setting '" + std::string(key) + "'");
  }
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigError, "cannot open config file " + path.string());
  std::vector<std::pair<std::string, std::string>> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
      fail(ErrorCode::ConfigError, path.string() + ":" + std::to_string(line) + ": expected key = value");
    const auto key = trim(text.substr(0, eq));
    if (key.empty()) fail(ErrorCode::ConfigError, path.string() + ":" + std::to_string(line) + ": empty key");
    out.emplace_back(std::string(key), std::string(trim(text.substr(eq + 1))));
  }
  return out;
}

std::map<std::string, std::string> describe(const RunConfig& c) {
  std::map<std::string, std::string> m;
  std::string kinds;
  for (std::size_t i = 0; i < c.feature_sets.size(); ++i)
    kinds += (i ? "," : "") + std::string(featset::to_string(c.feature_sets[i]));
  m["feature_set"] = kinds;
  if (c.svm_C) m["C"] = number(*c.svm_C);
  if (c.svm_eps) m["eps"] = number(*c.svm_eps);
  if (c.svm_gamma) m["gamma"] = number(*c.svm_gamma);
  m["pca_epsilon"] = number(c.pca_epsilon);
  m["normalize"] = c.normalize ? "true" : "false";
  m["majority_threshold"] = number(c.majority_threshold);
  m["vad_threshold"] = number(c.vad.energy_threshold);
  m["vad_hangover_ms"] = number(c.vad.hangover_ms);
  m["seed"] = std::to_string(c.seed);
  m["train_fraction"] = number(c.train_fraction);
  m["grid"] = c.grid ? "true" : "false";
  m["segment_roc"] = c.segment_roc ? "true" : "false";
  m["grid_C"] = join(c.hyper_grid.C);
  m["grid_eps"] = join(c.hyper_grid.eps);
  m["grid_gamma"] = join(c.hyper_grid.gamma);
  m["chunk"] = std::to_string(c.chunk);
  m["synth_speakers"] = std::to_string(c.synth.speakers);
  m["synth_segments"] = std::to_string(c.synth.segments_per_speaker);
  m["synth_confirmation_rate"] = number(c.synth.confirmation_rate);
  m["manifest"] = c.manifest.string();
  m["model"] = c.model.string();
  m["wav"] = c.wav.string();
  m["out"] = c.out.string();
  return m;
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->category()) {
      case ErrorCategory::Config: return 2;
      case ErrorCategory::Data: return 3;
      case ErrorCategory::Numerical: return 4;
    }
  }
  if (dynamic_cast<const std::filesystem::filesystem_error*>(&e)) return 3;
  return 1;
}

}  // namespace nlconf::app
