# Copyright 2026 The genplan Authors
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

"""Generalized planning with trajectory constraints."""

from ._core import (
    GenplanError,
    check_solution,
    dpw_accepts,
    eval_lasso,
    ltl_to_dpw,
    qnp_instance,
    qnp_projection,
    simulate_qnp,
    solve_parity,
    strong_cyclic_plan,
    synthesize,
)

__all__ = [
    "GenplanError",
    "check_solution",
    "dpw_accepts",
    "eval_lasso",
    "ltl_to_dpw",
    "qnp_instance",
    "qnp_projection",
    "simulate_qnp",
    "solve_parity",
    "strong_cyclic_plan",
    "synthesize",
]
