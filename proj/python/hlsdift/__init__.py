# Copyright 2026 The hlsdift Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Dynamic information flow tracking over bit-accurate dataflow kernels."""

import json as _json

from ._core import (  # noqa: F401
    BitType,
    BitValue,
    DiftError,
    Kernel,
    Tag,
    __version__,
    check_consistency,
    const_fold,
    dead_code_elim,
    emit_dot,
    eval_binop,
    eval_unop,
    fuzz_properties,
    independence_oracle,
    instrument_dot,
    join,
    make_bitvalue,
    parse_kernel,
    propagate,
    run_cli,
    to_int,
    validate,
)
from ._core import run_baseline as _run_baseline
from ._core import run_dift as _run_dift


def load_kernel(path):
    """Parse a kernel file; raises ValueError with the diagnostics."""
    with open(path, encoding="utf-8") as f:
        return parse_kernel(f.read())


def run_dift(kernel, inputs=None, mode="fine", rule="union", on_exception="record"):
    """Run the tracked datapath and return the report as a dict."""
    text = _json.dumps(inputs or {})
    return _json.loads(_run_dift(kernel, text, mode, rule, on_exception))


def run_baseline(kernel, inputs=None):
    """Run the untracked datapath; returns {output id: bit pattern}."""
    return _run_baseline(kernel, _json.dumps(inputs or {}))
