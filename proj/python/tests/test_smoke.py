# Copyright 2026 The nlconf Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json

import numpy as np
import pytest

import nlconf


def sine(hz, n=400, amp=0.5):
    return amp * np.sin(2 * np.pi * hz * np.arange(n) / nlconf.SAMPLE_RATE)


def test_feature_sets():
    names = nlconf.feature_sets()
    assert len(names) == 7
    assert nlconf.feature_dimension("stacked-mfcc") == 195
    assert nlconf.feature_dimension("stacked-formants") == 30
    with pytest.raises(nlconf.NlconfError):
        nlconf.feature_dimension("spectrogram")


def test_frame_primitives():
    assert abs(nlconf.pitch(sine(200.0)) - 200.0) < 2.0
    assert nlconf.pitch(np.zeros(400)) == 0.0
    c = nlconf.mfcc(np.zeros(400))
    assert c.shape == (13,)
    assert np.allclose(c[1:], 0.0)
    f1, f2 = nlconf.formants(np.zeros(400))
    assert (f1, f2) == (0.0, 0.0)


def test_wav_round_trip(tmp_path):
    x = sine(440.0, 16000)
    nlconf.save_wav(tmp_path / "a.wav", x)
    y = nlconf.load_wav(tmp_path / "a.wav")
    assert y.shape == x.shape
    assert np.max(np.abs(x - y)) <= 0.5 / 32768 + 1e-12


def test_extract_counts():
    rows, frames = nlconf.extract(sine(150.0, 16000), "stacked-formants")
    assert rows.shape == (84, 30)
    assert frames[0] == 14 and frames[-1] == 97


def test_roc_auc():
    r = nlconf.roc_auc(np.array([0.9, 0.7, 0.8, 0.6]), [1, 1, -1, -1])
    assert r["auc"] == pytest.approx(0.75)
    assert r["fpr"][0] == 0.0 and r["tpr"][-1] == 1.0


def test_train_classify_listen(tmp_path):
    corpus = tmp_path / "corpus"
    nlconf.run("synth-corpus", {"out": str(corpus), "synth_speakers": "3", "synth_segments": "8"})
    nlconf.run("train", {"manifest": str(corpus / "manifest.csv"), "out": str(tmp_path / "m")})
    model = nlconf.Model.load(tmp_path / "m" / "stacked-formants.nlcm")
    assert model.feature_set == "stacked-formants"
    assert model.params == {"C": 1.0, "eps": 0.5, "gamma": 0.05}

    audio = nlconf.load_wav(corpus / "spk01.wav")
    streamed = model.listen(audio, chunk=977)
    assert streamed["segments"]
    for event in streamed["triggers"]:
        assert event["rolling_mean"] > 0

    # Offline scoring of the first detected segment agrees with the stream.
    first = streamed["segments"][0]
    start = int(first["segment_id"].split(":")[1]) * 16
    rows_needed = first["frame_indices"][-1] * nlconf.FRAME_SHIFT + nlconf.FRAME_LENGTH
    offline = model.classify(audio[start : start + rows_needed + 159])
    assert offline["trigger_frame"] == first["trigger_frame"]
    assert np.array_equal(offline["frame_scores"], first["frame_scores"])

    rows, _ = nlconf.extract(audio[:16000], "stacked-formants")
    assert model.decision_values(rows).shape == (rows.shape[0],)

    meta = json.loads((tmp_path / "m" / "run.json").read_text())
    assert meta["command"] == "train"


def test_errors(tmp_path):
    with pytest.raises(nlconf.NlconfError):
        nlconf.run("train", {"manifest": str(tmp_path / "missing.csv"), "out": str(tmp_path)})
    with pytest.raises(nlconf.NlconfError):
        nlconf.run("train", {"colour": "blue"})
