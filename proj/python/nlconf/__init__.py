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

"""Detection of non-lexical confirmations ("mhm", "uh-huh") in speech audio."""

from ._nlconf import (
    Model,
    NlconfError,
    extract,
    feature_dimension,
    feature_sets,
    formants,
    load_wav,
    mfcc,
    pitch,
    roc_auc,
    run,
    save_wav,
)

SAMPLE_RATE = 16000
FRAME_LENGTH = 400
FRAME_SHIFT = 160

__all__ = [
    "FRAME_LENGTH",
    "FRAME_SHIFT",
    "Model",
    "NlconfError",
    "SAMPLE_RATE",
    "extract",
    "feature_dimension",
    "feature_sets",
    "formants",
    "load_wav",
    "mfcc",
    "pitch",
    "roc_auc",
    "run",
    "save_wav",
]
