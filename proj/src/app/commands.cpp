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

#include <chrono>
#include <fstream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "nlconf/app.hpp"
#include "nlconf/error.hpp"
#include "nlconf/eval.hpp"
#include "nlconf/learn/dataset.hpp"
#include "nlconf/learn/grid_search.hpp"
#include "nlconf/pipeline.hpp"

namespace nlconf::app {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

class Timings {
 public:
  template <typename F>
  auto time(const std::string& phase, F&& f) {
    const auto t0 = Clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      add(phase, t0);
    } else {
      auto r = f();
      add(phase, t0);
      return r;
    }
  }
  nlohmann::json json() const { return seconds_; }

 private:
  void add(const std::string& phase, Clock::time_point t0) {
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    seconds_[phase] = seconds_.value(phase, 0.0) + s;
  }
  nlohmann::json seconds_ = nlohmann::json::object();
};

struct Context {
  Context(const RunConfig& c, std::ostream& l) : config(c), log(l) {}

  const RunConfig& config;
  std::ostream& log;
  Timings timings;
  nlohmann::json results = nlohmann::json::object();
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

void require_path(const fs::path& p, const char* key) {
  if (p.empty()) fail(ErrorCode::ConfigError, std::string("missing setting '") + key + "'");
}

std::vector<corpus::AudioSegment> load_manifest_segments(Context& ctx) {
  require_path(ctx.config.manifest, "manifest");
  return ctx.timings.time("load", [&] {
    const auto rows = corpus::parse_manifest(ctx.config.manifest);
    return corpus::load_segments(rows, ctx.config.manifest.parent_path());
  });
}

std::string stem_for(const std::string& segment_id) {
  std::string s = segment_id;
  for (char& ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') ch = '_';
  return s;
}

learn::TrainingOptions training_options(const RunConfig& c, featset::FeatureKind kind) {
  learn::TrainingOptions o;
  o.params = c.params_for(kind);
  o.pca_epsilon = c.pca_epsilon;
  o.normalize = c.normalize;
  o.seed = c.seed;
  return o;
}

/// Segments the kind can score, with a log line for any that are dropped.
std::vector<corpus::AudioSegment> usable_segments(Context& ctx, const std::vector<corpus::AudioSegment>& segments,
                                                  const featset::FeatureSetConfig& fc) {
  std::vector<corpus::AudioSegment> out;
  const std::size_t need = featset::required_frames(fc);
  for (const auto& s : segments)
    if (corpus::frame_count(s.samples.size()) >= need) out.push_back(s);
  if (out.size() != segments.size())
    ctx.log << "skipping " << segments.size() - out.size() << " segment(s) shorter than " << need
            << " frames for " << featset::to_string(fc.kind) << '\n';
  return out;
}

learn::ModelBundle fit_model(const std::vector<learn::SegmentFeatures>& feats, const featset::FeatureSetConfig& fc,
                             const learn::TrainingOptions& options) {
  const auto data = eval::balance(learn::gather(feats), options.seed);
  return learn::train_bundle(data, fc, options);
}

void save_bundle(Context& ctx, const learn::ModelBundle& bundle, const fs::path& path) {
  learn::save_model(bundle, path);
  auto json_path = path;
  json_path.replace_extension(".json");
  write_text(json_path, learn::model_to_json(bundle));
  ctx.log << "model written to " << path.string() << " (" << bundle.svm.support_vectors.rows()
          << " support vectors, dimension " << bundle.model_dimension() << ")\n";
}

void print_grid(std::ostream& out, const learn::GridSearchResult& r) {
  char line[160];
  std::snprintf(line, sizeof line, "%6s %7s %7s %10s %10s %10s\n", "C", "eps", "gamma", "score", "min_fold",
                "max_fold");
  out << line;
  for (const auto& p : r.points) {
    std::snprintf(line, sizeof line, "%6g %7g %7g %10.4f %10.4f %10.4f\n", p.params.C, p.params.eps,
                  p.params.gamma, p.score, p.min_fold_accuracy, p.max_fold_accuracy);
    out << line;
  }
  out << "best: C=" << r.best.C << " eps=" << r.best.eps << " gamma=" << r.best.gamma << " score=" << r.best_score
      << '\n';
}

nlohmann::json grid_json(const learn::GridSearchResult& r) {
  auto points = nlohmann::json::array();
  for (const auto& p : r.points)
    points.push_back({{"C", p.params.C},
                      {"eps", p.params.eps},
                      {"gamma", p.params.gamma},
                      {"score", p.score},
                      {"min_fold_accuracy", p.min_fold_accuracy},
                      {"max_fold_accuracy", p.max_fold_accuracy}});
  return {{"points", points},
          {"best", {{"C", r.best.C}, {"eps", r.best.eps}, {"gamma", r.best.gamma}}},
          {"best_score", r.best_score}};
}

learn::GridSearchResult run_grid(Context& ctx, const std::vector<learn::SegmentFeatures>& feats,
                                 const featset::FeatureSetConfig& fc) {
  const auto name = std::string(featset::to_string(fc.kind));
  auto result = ctx.timings.time("grid-search/" + name, [&] {
    return learn::grid_search(feats, fc, ctx.config.hyper_grid, training_options(ctx.config, fc.kind));
  });
  auto csv = open_out(ctx.config.out / ("grid-" + name + ".csv"));
  csv << "C,eps,gamma,score,min_fold_accuracy,max_fold_accuracy\n";
  csv.precision(17);
  for (const auto& p : result.points)
    csv << p.params.C << ',' << p.params.eps << ',' << p.params.gamma << ',' << p.score << ','
        << p.min_fold_accuracy << ',' << p.max_fold_accuracy << '\n';
  return result;
}

std::vector<corpus::AudioSegment> training_part(Context& ctx, const std::vector<corpus::AudioSegment>& segments) {
  if (ctx.config.train_fraction >= 1.0) return segments;
  auto split = corpus::split_corpus(segments, ctx.config.train_fraction, ctx.config.seed);
  return std::move(split.train);
}

// ---------------------------------------------------------------------------

void cmd_extract(Context& ctx) {
  const auto segments = load_manifest_segments(ctx);
  for (auto kind : ctx.config.feature_sets) {
    const auto fc = featset::FeatureSetConfig::make(kind);
    const auto dir = ctx.config.out / "features" / std::string(featset::to_string(kind));
    fs::create_directories(dir);
    const auto usable = usable_segments(ctx, segments, fc);
    std::size_t vectors = 0;
    ctx.timings.time("extract/" + std::string(featset::to_string(kind)), [&] {
      for (const auto& seg : usable) {
        const auto v = featset::extract(seg, fc);
        featset::write_feature_dump(dir, stem_for(seg.id()), v, fc);
        vectors += v.size();
      }
    });
    ctx.log << featset::to_string(kind) << ": " << usable.size() << " segments, " << vectors << " vectors -> "
            << dir.string() << '\n';
    ctx.results[std::string(featset::to_string(kind))] = {{"segments", usable.size()}, {"vectors", vectors}};
  }
}

void cmd_train(Context& ctx) {
  const auto segments = load_manifest_segments(ctx);
  for (auto kind : ctx.config.feature_sets) {
    const auto fc = featset::FeatureSetConfig::make(kind);
    const auto name = std::string(featset::to_string(kind));
    const auto options = training_options(ctx.config, kind);
    const auto feats = ctx.timings.time("extract/" + name, [&] { return learn::featurize(segments, fc); });
    const auto bundle = ctx.timings.time("train/" + name, [&] { return fit_model(feats, fc, options); });
    const fs::path path = !ctx.config.model.empty() && ctx.config.feature_sets.size() == 1
                              ? ctx.config.model
                              : ctx.config.out / (name + ".nlcm");
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    save_bundle(ctx, bundle, path);
    ctx.results[name] = {{"model", path.string()},
                         {"C", bundle.params.C},
                         {"eps", bundle.params.eps},
                         {"gamma", bundle.params.gamma},
                         {"support_vectors", bundle.svm.support_vectors.rows()},
                         {"model_dimension", bundle.model_dimension()}};
  }
}

void cmd_grid_search(Context& ctx) {
  const auto train = training_part(ctx, load_manifest_segments(ctx));
  for (auto kind : ctx.config.feature_sets) {
    const auto fc = featset::FeatureSetConfig::make(kind);
    const auto name = std::string(featset::to_string(kind));
    const auto feats = ctx.timings.time("extract/" + name, [&] { return learn::featurize(train, fc); });
    const auto result = run_grid(ctx, feats, fc);
    ctx.log << "== " << name << '\n';
    print_grid(ctx.log, result);
    ctx.results[name] = grid_json(result);
  }
}

void cmd_evaluate(Context& ctx) {
  const auto segments = load_manifest_segments(ctx);
  const auto split = corpus::split_corpus(segments, ctx.config.train_fraction, ctx.config.seed);
  std::set<std::string> train_speakers, test_speakers;
  for (const auto& s : split.train) train_speakers.insert(s.speaker_id);
  for (const auto& s : split.test) test_speakers.insert(s.speaker_id);
  ctx.results["split"] = {{"train_speakers", train_speakers},
                          {"test_speakers", test_speakers},
                          {"train_segments", split.train.size()},
                          {"test_segments", split.test.size()}};

  std::vector<eval::EvalReport> reports;
  for (auto kind : ctx.config.feature_sets) {
    const auto fc = featset::FeatureSetConfig::make(kind);
    const auto name = std::string(featset::to_string(kind));
    auto options = training_options(ctx.config, kind);
    const auto feats = ctx.timings.time("extract/" + name, [&] { return learn::featurize(split.train, fc); });
    if (ctx.config.grid) {
      const auto grid = run_grid(ctx, feats, fc);
      options.params = grid.best;
      ctx.results["grid/" + name] = grid_json(grid);
    }
    const auto cv = ctx.timings.time("cv/" + name, [&] { return eval::louo_cv(feats, fc, options); });
    const auto bundle = ctx.timings.time("train/" + name, [&] { return fit_model(feats, fc, options); });
    save_bundle(ctx, bundle, ctx.config.out / (name + ".nlcm"));

    const auto test = usable_segments(ctx, split.test, fc);
    eval::EvalOptions eo;
    eo.vote.majority_threshold = ctx.config.majority_threshold;
    eo.segment_roc = ctx.config.segment_roc;
    auto report = ctx.timings.time("evaluate/" + name, [&] { return eval::evaluate_model(bundle, test, eo); });
    report.skipped_segments = split.test.size() - test.size();
    report.cv = cv;
    write_text(ctx.config.out / ("report-" + name + ".json"), eval::report_to_json(report));
    auto roc = open_out(ctx.config.out / ("roc-" + name + ".csv"));
    eval::write_roc_csv(roc, report.frame_roc);
    if (report.segment_roc) {
      auto seg_roc = open_out(ctx.config.out / ("roc-segment-" + name + ".csv"));
      eval::write_roc_csv(seg_roc, *report.segment_roc);
    }
    ctx.results[name] = nlohmann::json::parse(eval::report_to_json(report));
    reports.push_back(std::move(report));
  }
  const auto table = eval::format_table(reports);
  write_text(ctx.config.out / "results.txt", table);
  ctx.log << table;
}

void cmd_classify(Context& ctx) {
  require_path(ctx.config.model, "model");
  const auto bundle = learn::load_model(ctx.config.model);
  const auto segments = usable_segments(ctx, load_manifest_segments(ctx), bundle.feature_config);
  pipeline::VoteConfig vote{ctx.config.majority_threshold};
  const auto result = ctx.timings.time("classify", [&] { return pipeline::classify_offline(segments, bundle, vote); });

  auto frames = open_out(ctx.config.out / "frames.csv");
  pipeline::write_offline_csv(frames, result.frames);
  auto segs = open_out(ctx.config.out / "segments.csv");
  segs << "segment_id,label,decided_label,trigger_frame,max_rolling_mean\n";
  std::vector<Label> truth;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& d = result.decisions[i];
    segs << d.segment_id << ',' << to_string(segments[i].label) << ',' << to_string(d.decided_label) << ','
         << (d.trigger_frame ? std::to_string(*d.trigger_frame) : "") << ',' << d.max_rolling_mean << '\n';
    truth.push_back(segments[i].label);
  }
  const auto m = eval::segment_metrics(result.decisions, truth);
  ctx.log << segments.size() << " segments, " << result.frames.size() << " frames; " << m.counts.tp + m.counts.fp
          << " decided confirmation; segment accuracy against manifest labels " << m.accuracy << '\n';
  ctx.results["segments"] = segments.size();
  ctx.results["frames"] = result.frames.size();
  ctx.results["segment_accuracy"] = m.accuracy;
}

void cmd_listen(Context& ctx) {
  require_path(ctx.config.model, "model");
  const auto bundle = learn::load_model(ctx.config.model);
  pipeline::VoteConfig vote{ctx.config.majority_threshold};
  auto triggers_out = open_out(ctx.config.out / "triggers.ndjson");
  auto decisions_out = open_out(ctx.config.out / "segments.ndjson");

  std::vector<pipeline::SegmentDecision> decisions;
  std::vector<std::pair<std::int64_t, std::int64_t>> bounds_ms;
  double audio_seconds = 0.0, wall_seconds = 0.0;
  std::size_t trigger_count = 0;
  auto on_trigger = [&](const pipeline::TriggerEvent& e) {
    const auto line = pipeline::trigger_to_json(e);
    triggers_out << line << '\n';
    ctx.log << line << '\n';
    ++trigger_count;
  };

  if (!ctx.config.wav.empty()) {
    const auto audio = ctx.timings.time("load", [&] { return corpus::load_wav(ctx.config.wav); });
    pipeline::StreamListener listener(bundle, ctx.config.wav.filename().string(), ctx.config.vad, vote);
    listener.set_trigger_sink(on_trigger);
    const std::span<const double> samples(audio.samples);
    const auto t0 = Clock::now();
    for (std::size_t at = 0; at < samples.size(); at += ctx.config.chunk)
      listener.push(samples.subspan(at, std::min(ctx.config.chunk, samples.size() - at)));
    listener.finish();
    wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    audio_seconds = static_cast<double>(samples.size()) / kSampleRate;
    decisions = listener.decisions();
    for (const auto& s : listener.spans())
      bounds_ms.emplace_back(static_cast<std::int64_t>(s.begin * 1000 / kSampleRate),
                             static_cast<std::int64_t>((s.end * 1000 + kSampleRate - 1) / kSampleRate));
  } else {
    const auto segments = usable_segments(ctx, load_manifest_segments(ctx), bundle.feature_config);
    std::vector<pipeline::TriggerEvent> events;
    const auto t0 = Clock::now();
    decisions = pipeline::listen_segments(segments, bundle, vote, ctx.config.chunk, &events);
    wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    for (const auto& e : events) on_trigger(e);
    for (const auto& s : segments) {
      audio_seconds += static_cast<double>(s.samples.size()) / kSampleRate;
      bounds_ms.emplace_back(s.start_ms, s.end_ms);
    }
  }
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    const auto& d = decisions[i];
    nlohmann::json j = {{"segment_id", d.segment_id},
                        {"start_ms", bounds_ms[i].first},
                        {"end_ms", bounds_ms[i].second},
                        {"decided_label", std::string(to_string(d.decided_label))},
                        {"trigger_frame", d.trigger_frame ? nlohmann::json(*d.trigger_frame) : nlohmann::json()},
                        {"max_rolling_mean", d.max_rolling_mean}};
    decisions_out << j.dump() << '\n';
  }
  const double rtf = audio_seconds > 0.0 ? wall_seconds / audio_seconds : 0.0;
  ctx.log << decisions.size() << " segments, " << trigger_count << " triggers; " << audio_seconds
          << " s audio in " << wall_seconds << " s (real-time factor " << rtf << ")\n";
  ctx.results["segments"] = decisions.size();
  ctx.results["triggers"] = trigger_count;
  ctx.results["audio_seconds"] = audio_seconds;
  ctx.results["wall_seconds"] = wall_seconds;
  ctx.results["real_time_factor"] = rtf;
}

void cmd_synth_corpus(Context& ctx) {
  auto sc = ctx.config.synth;
  sc.seed = ctx.config.seed;
  const auto corpus = ctx.timings.time("synthesize", [&] { return synth::make_corpus(sc); });
  const auto manifest = ctx.timings.time("write", [&] { return synth::write_corpus(corpus, ctx.config.out); });
  std::size_t confirmations = 0;
  for (const auto& r : corpus.rows) confirmations += r.label == Label::Confirmation ? 1 : 0;
  ctx.log << corpus.rows.size() << " segments (" << confirmations << " confirmations) from "
          << corpus.speakers.size() << " speakers -> " << manifest.string() << '\n';
  ctx.results["manifest"] = manifest.string();
  ctx.results["segments"] = corpus.rows.size();
  ctx.results["confirmations"] = confirmations;
}

}  // namespace

void run(Command command, const RunConfig& config, std::ostream& log) {
  fs::create_directories(config.out);
  Context ctx(config, log);
  const auto t0 = Clock::now();
  switch (command) {
    case Command::Extract: cmd_extract(ctx); break;
    case Command::Train: cmd_train(ctx); break;
    case Command::GridSearch: cmd_grid_search(ctx); break;
    case Command::Evaluate: cmd_evaluate(ctx); break;
    case Command::Classify: cmd_classify(ctx); break;
    case Command::Listen: cmd_listen(ctx); break;
    case Command::SynthCorpus: cmd_synth_corpus(ctx); break;
  }
  nlohmann::json meta;
  meta["command"] = std::string(to_string(command));
  meta["config"] = describe(config);
  meta["seed"] = config.seed;
  auto timings = ctx.timings.json();
  timings["total"] = std::chrono::duration<double>(Clock::now() - t0).count();
  meta["timings_seconds"] = timings;
  meta["results"] = ctx.results;
  write_text(config.out / "run.json", meta.dump(2) + "\n");
}

}  // namespace nlconf::app
