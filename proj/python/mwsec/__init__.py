# Copyright 2026 The mwsec Authors.
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
"""Python bindings for the mwsec two-party protocol library."""

from mwsec._mwsec import (
    LAMBDA,
    cost_mw,
    cost_rexp,
    mw_plain,
    protocols,
    rexp_oracle,
    sin_oracle,
    softmax_oracle,
    verify,
)

__all__ = [
    "LAMBDA",
    "cost_mw",
    "cost_rexp",
    "mw_plain",
    "protocols",
    "rexp_oracle",
    "sin_oracle",
    "softmax_oracle",
    "verify",
]
