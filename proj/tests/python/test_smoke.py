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

import json
import os
import pathlib

import pytest

import genplan

DATA = pathlib.Path(os.environ.get("GENPLAN_DATA_DIR", pathlib.Path(__file__).parents[2] / "data"))


def read(name):
    return (DATA / name).read_text()


def test_counter_synthesis_and_verification():
    problem = json.loads(read("counter.fondp.json"))
    result = genplan.synthesize(problem, "qnp(X)")
    assert result["realizable"]
    verdict = genplan.check_solution(problem, result["policy"], "constraint", "qnp(X)")
    assert verdict["verdict"] == "SOLVES_UNDER_CONSTRAINT"
    assert not genplan.synthesize(problem)["realizable"]


def test_closed_two_variable_plan():
    closed = genplan.qnp_projection(read("twovar.qnp"), close=True)
    policy = genplan.strong_cyclic_plan(closed)
    assert policy is not None
    assert genplan.check_solution(closed, policy, "fair")["verdict"] == "FAIR_SOLUTION"


def test_canonical_policy_simulation():
    policy = json.loads(read("canonical.policy.json"))
    run = genplan.simulate_qnp(read("twovar.qnp"), {"X": 20, "Y": 30}, policy)
    assert run["goal_reached"]
    assert len(run["actions"]) == 70


def test_unsolvable_plan_is_none():
    text = "vars X\ninit_values X in {3}\naction inc inc X\ngoal X=0"
    assert genplan.strong_cyclic_plan(genplan.qnp_projection(text, close=True)) is None


def test_lasso_semantics_and_automata():
    sigma = ["a", "b"]
    assert genplan.eval_lasso("G F b", sigma, ["a"], ["a", "b"])
    assert not genplan.eval_lasso("F G b", sigma, [], ["a", "b"])
    dpw = genplan.ltl_to_dpw("F G b", sigma)
    assert genplan.dpw_accepts(dpw, ["a"], ["b"])
    assert not genplan.dpw_accepts(dpw, [], ["a", "b"])


def test_parity_game():
    # Node 0 (controller) picks between an even and an odd self-loop.
    winner, strategy = genplan.solve_parity([0, 0, 1], [0, 2, 1], [[1, 2], [1], [2]])
    assert winner == [0, 0, 1]
    assert strategy[0] == 1


def test_errors_carry_codes():
    with pytest.raises(genplan.GenplanError) as info:
        genplan.eval_lasso("F c", ["a", "b"], [], ["a"])
    assert info.value.code == "UNKNOWN_LETTER"
    with pytest.raises(genplan.GenplanError):
        genplan.qnp_projection("vars X\naction a dec Y\ngoal X=0")
