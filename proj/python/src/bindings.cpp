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

// Python bindings for the main nlconf operations.
#include <sstream>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "nlconf/app.hpp"
#include "nlconf/corpus.hpp"
#include "nlconf/dsp/formants.hpp"
#include "nlconf/dsp/mfcc.hpp"
#include "nlconf/dsp/pitch.hpp"
#include "nlconf/dsp/window.hpp"
#include "nlconf/error.hpp"
#include "nlconf/eval.hpp"
#include "nlconf/featset.hpp"
#include "nlconf/learn/model.hpp"
#include "nlconf/pipeline.hpp"

namespace py = pybind11;
using namespace nlconf;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Array& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-D array");
  return {a.data(), a.data() + a.size()};
}

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<double> windowed_frame(const Array& frame, dsp::WindowKind kind) {
  return dsp::apply_window(to_vector(frame), dsp::frame_window(kind));
}

corpus::AudioSegment segment_of(const Array& samples, const std::string& id) {
  corpus::AudioSegment seg;
  seg.source_id = id;
  seg.samples = to_vector(samples);
  seg.end_ms = static_cast<std::int64_t>(seg.samples.size() / 16);
  return seg;
}

py::dict decision_dict(const pipeline::SegmentDecision& d) {
  py::dict out;
  out["segment_id"] = d.segment_id;
  out["decided_label"] = std::string(to_string(d.decided_label));
  out["trigger_frame"] = d.trigger_frame ? py::cast(*d.trigger_frame) : py::none();
  out["max_rolling_mean"] = d.max_rolling_mean;
  out["frame_scores"] = to_array(d.frame_scores);
  out["frame_indices"] = d.frame_indices;
  return out;
}

py::dict trigger_dict(const pipeline::TriggerEvent& e) {
  py::dict out;
  out["segment_id"] = e.segment_id;
  out["frame_index"] = e.frame_index;
  out["trigger_time_ms"] = e.trigger_time_ms;
  out["rolling_mean"] = e.rolling_mean;
  return out;
}

class Model {
 public:
  explicit Model(learn::ModelBundle bundle) : bundle_(std::move(bundle)) {}
  static Model load(const std::filesystem::path& path) { return Model(learn::load_model(path)); }
  void save(const std::filesystem::path& path) const { learn::save_model(bundle_, path); }

  std::string feature_set() const { return std::string(featset::to_string(bundle_.feature_config.kind)); }
  std::size_t raw_dimension() const { return bundle_.feature_config.raw_dimension; }
  Eigen::Index model_dimension() const { return bundle_.model_dimension(); }
  py::dict params() const {
    py::dict out;
    out["C"] = bundle_.params.C;
    out["eps"] = bundle_.params.eps;
    out["gamma"] = bundle_.params.gamma;
    return out;
  }

  py::array_t<double> decision_values(const py::array_t<double, py::array::c_style | py::array::forcecast>& rows) const {
    if (rows.ndim() != 2) throw std::invalid_argument("expected a 2-D array of feature rows");
    const auto n = rows.shape(0), d = rows.shape(1);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (py::ssize_t i = 0; i < n; ++i)
      out[static_cast<std::size_t>(i)] =
          bundle_.decision_value(std::span<const double>(rows.data() + i * d, static_cast<std::size_t>(d)));
    return to_array(out);
  }

  py::dict classify(const Array& samples, double threshold) const {
    const std::vector<corpus::AudioSegment> one = {segment_of(samples, "segment")};
    const auto result = pipeline::classify_offline(one, bundle_, {threshold});
    return decision_dict(result.decisions.at(0));
  }

  py::dict listen(const Array& samples, const std::string& source_id, std::size_t chunk, double threshold,
                  double vad_threshold, double hangover_ms) const {
    const auto x = to_vector(samples);
    if (chunk == 0) throw std::invalid_argument("chunk must be positive");
    std::vector<pipeline::TriggerEvent> triggers;
    std::vector<pipeline::SegmentDecision> decisions;
    {
      py::gil_scoped_release release;
      pipeline::StreamListener listener(bundle_, source_id, {vad_threshold, hangover_ms}, {threshold});
      const std::span<const double> all(x);
      for (std::size_t at = 0; at < all.size(); at += chunk)
        listener.push(all.subspan(at, std::min(chunk, all.size() - at)));
      listener.finish();
      triggers = listener.triggers();
      decisions = listener.decisions();
    }
    py::list t, d;
    for (const auto& e : triggers) t.append(trigger_dict(e));
    for (const auto& s : decisions) d.append(decision_dict(s));
    py::dict out;
    out["triggers"] = t;
    out["segments"] = d;
    return out;
  }

 private:
  learn::ModelBundle bundle_;
};

}  // namespace

PYBIND11_MODULE(_nlconf, m) {
  m.doc() = "Detection of non-lexical confirmations in speech";
  py::register_exception<Error>(m, "NlconfError", PyExc_RuntimeError);

  m.def("feature_sets", [] {
    std::vector<std::string> names;
    for (auto k : featset::kAllKinds) names.emplace_back(featset::to_string(k));
    return names;
  });
  m.def("feature_dimension", [](const std::string& name) {
    return featset::dimension(featset::FeatureSetConfig::make(featset::parse_feature_kind(name)));
  });

  m.def("load_wav", [](const std::filesystem::path& path) { return to_array(corpus::load_wav(path).samples); },
        py::arg("path"));
  m.def(
      "save_wav",
      [](const std::filesystem::path& path, const Array& samples) {
        corpus::AudioBuffer audio;
        audio.samples = to_vector(samples);
        corpus::save_wav(path, audio);
      },
      py::arg("path"), py::arg("samples"));

  m.def(
      "mfcc", [](const Array& frame) { return to_array(dsp::mfcc(windowed_frame(frame, dsp::WindowKind::BlackmanHarris4))); },
      py::arg("frame"), "13 MFCCs of one raw 400-sample frame");
  m.def(
      "formants",
      [](const Array& frame) {
        const auto f = dsp::estimate_formants(windowed_frame(frame, dsp::WindowKind::Hann), 16000.0);
        return std::make_pair(f.f1, f.f2);
      },
      py::arg("frame"), "(F1, F2) in Hz of one raw 400-sample frame; 0 marks an absent formant");
  m.def(
      "pitch", [](const Array& frame) { return dsp::pitch_yin_fft(windowed_frame(frame, dsp::WindowKind::Hann)); },
      py::arg("frame"), "Pitch in Hz of one raw 400-sample frame; 0 when unvoiced");

  m.def(
      "extract",
      [](const Array& samples, const std::string& feature_set) {
        const auto config = featset::FeatureSetConfig::make(featset::parse_feature_kind(feature_set));
        const auto vectors = featset::extract(segment_of(samples, "segment"), config);
        py::array_t<double> rows({static_cast<py::ssize_t>(vectors.size()), static_cast<py::ssize_t>(config.raw_dimension)});
        std::vector<std::size_t> frames;
        auto* out = rows.mutable_data();
        for (const auto& v : vectors) {
          out = std::copy(v.values.begin(), v.values.end(), out);
          frames.push_back(v.frame_index);
        }
        return std::make_pair(rows, frames);
      },
      py::arg("samples"), py::arg("feature_set"), "Feature rows and their frame indices for one segment");

  m.def(
      "roc_auc",
      [](const Array& scores, const std::vector<int>& labels) {
        const auto s = to_vector(scores);
        const auto roc = eval::roc_auc(s, labels);
        std::vector<double> fpr, tpr;
        for (const auto& p : roc.points) {
          fpr.push_back(p.fpr);
          tpr.push_back(p.tpr);
        }
        py::dict out;
        out["auc"] = roc.auc;
        out["fpr"] = to_array(fpr);
        out["tpr"] = to_array(tpr);
        return out;
      },
      py::arg("scores"), py::arg("labels"), "Frame ROC; labels are +1 / -1");

  py::class_<Model>(m, "Model")
      .def_static("load", &Model::load, py::arg("path"))
      .def("save", &Model::save, py::arg("path"))
      .def_property_readonly("feature_set", &Model::feature_set)
      .def_property_readonly("raw_dimension", &Model::raw_dimension)
      .def_property_readonly("model_dimension", &Model::model_dimension)
      .def_property_readonly("params", &Model::params)
      .def("decision_values", &Model::decision_values, py::arg("rows"))
      .def("classify", &Model::classify, py::arg("samples"), py::arg("threshold") = 0.0,
           "Offline decision for one segment of raw samples")
      .def("listen", &Model::listen, py::arg("samples"), py::arg("source_id") = "stream", py::arg("chunk") = 1600,
           py::arg("threshold") = 0.0, py::arg("vad_threshold") = 0.01, py::arg("hangover_ms") = 200.0,
           "Streams raw samples through VAD, features and the rolling vote");

  m.def(
      "run",
      [](const std::string& command, const std::map<std::string, std::string>& settings) {
        app::RunConfig config;
        for (const auto& [k, v] : settings) app::apply_setting(config, k, v);
        const auto cmd = app::parse_command(command);
        std::ostringstream log;
        {
          py::gil_scoped_release release;
          app::run(cmd, config, log);
        }
        return log.str();
      },
      py::arg("command"), py::arg("settings") = std::map<std::string, std::string>{},
      "Runs one command-line command; returns its log");
}
