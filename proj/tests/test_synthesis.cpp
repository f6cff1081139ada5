/*
 * Copyright 2026 The genplan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <set>

#include "genplan/fond.hpp"
#include "genplan/qnp.hpp"
#include "genplan/synthesis.hpp"
#include "genplan/verify.hpp"
#include "test_support.hpp"

using namespace genplan;
using namespace genplan::omega;

namespace {

std::size_t controller_count(const SynthesisGame& g) {
  std::size_t n = 0;
  for (const auto& node : g.nodes) n += node.kind == GameNode::Kind::Controller;
  return n;
}

// Outputs of the policy at an observation over all memory states.
std::set<std::string> outputs_at(const Policy& mu, const std::string& obs) {
  std::set<std::string> out;
  const int o = static_cast<int>(std::find(mu.observations.begin(), mu.observations.end(), obs) - mu.observations.begin());
  for (const auto& row : mu.output)
    if (row[o] >= 0) out.insert(mu.actions[row[o]]);
  return out;
}

}  // namespace

TEST_CASE("the hand automaton matches the objective") {
  Pondp po = testing::counter_projection();
  ltl::Formula phi = synthesis_objective(po, qnp_constraint(po, "X"));
  Dpw hand = testing::hand_dpw();
  REQUIRE(hand.alphabet == trajectory_alphabet(po, Level::Observation));
  std::size_t checked = 0;
  testing::for_each_word(4, 4, 4, [&](const ltl::Word& w) {
    ++checked;
    REQUIRE(dpw_accepts(hand, w) == ltl::eval_lasso(phi, w, hand.alphabet));
  });
  CHECK(checked > 100000);
}

TEST_CASE("automaton examples on lassos") {
  Dpw hand = testing::hand_dpw();
  auto word = [&](std::vector<std::string> prefix, std::vector<std::string> cycle) {
    ltl::Word w;
    for (auto& x : prefix) w.letters.push_back(hand.alphabet.index(x));
    w.loop_start = w.letters.size();
    for (auto& x : cycle) w.letters.push_back(hand.alphabet.index(x));
    return w;
  };
  CHECK(dpw_accepts(hand, word({}, {"X>0", "Dec"})));
  CHECK(dpw_accepts(hand, word({"X>0", "Dec", "X=0"}, {"X>0", "Inc"})));
  CHECK_FALSE(dpw_accepts(hand, word({}, {"X>0", "Inc", "X>0", "Dec"})));
}

TEST_CASE("direct QNP automaton") {
  Pondp po = testing::counter_projection();
  Dpw one = qnp_dpw_direct(po, {"X"});
  CHECK(one.num_states() == 5);
  CHECK(one.priorities() == std::vector<int>{1, 2, 3});
  Dpw hand = testing::hand_dpw();
  testing::for_each_word(4, 4, 4, [&](const ltl::Word& w) { REQUIRE(dpw_accepts(one, w) == dpw_accepts(hand, w)); });

  Dpw none = qnp_dpw_direct(po, {});
  ltl::Formula reach = ltl::Formula::letter("X=0").eventually();
  testing::for_each_word(4, 3, 3, [&](const ltl::Word& w) {
    REQUIRE(dpw_accepts(none, w) == ltl::eval_lasso(reach, w, none.alphabet));
  });
}

TEST_CASE("direct automaton for two variables agrees with the generic pipeline") {
  qnp::Qnp q = qnp::parse(R"(
vars X Y
init_values X in {2}
init_values Y in {2}
action a pre X>0 dec X inc Y
action b pre Y>0 dec Y
action c inc X
goal X=0 Y=0
)");
  Fondp p = qnp::syntactic_projection(q);
  TrajectoryConstraint both = conjoin(qnp_constraints(p, {"X", "Y"}));
  ltl::Formula phi = synthesis_objective(p, both);
  Dpw direct = qnp_dpw_direct(p, {"X", "Y"});
  Dpw generic = ltl_to_dpw(phi, direct.alphabet);
  CHECK(direct.num_priorities() <= 5);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10000; ++i) {
    ltl::Word w = testing::random_word(rng, direct.alphabet.size(), 6, 6);
    const bool expected = ltl::eval_lasso(phi, w, direct.alphabet);
    REQUIRE(dpw_accepts(direct, w) == expected);
    REQUIRE(dpw_accepts(generic, w) == expected);
  }
}

TEST_CASE("constraint automaton for three variables") {
  qnp::Qnp q = qnp::parse(R"(
vars X Y Z
init_values X in {2}
init_values Y in {1}
init_values Z in {0, 1}
action a pre X>0 dec X inc Y
action b pre Y>0 dec Y inc Z
action c pre Z>0 dec Z
action d inc X
goal X=0 Y=0 Z=0
)");
  Fondp p = qnp::syntactic_projection(q);
  TrajectoryConstraint all3 = conjoin(qnp_constraints(p, {"X", "Y", "Z"}));
  REQUIRE(qnp_constraint_variables(all3, p) == std::vector<std::string>{"X", "Y", "Z"});
  Dpw d = qnp_constraint_dpw(p, {"X", "Y", "Z"});
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20000; ++i) {
    ltl::Word w = testing::random_word(rng, d.alphabet.size(), 6, 8);
    REQUIRE(dpw_accepts(d, w) == ltl::eval_lasso(all3.formula, w, d.alphabet));
  }
}

TEST_CASE("only genuine qnp constraints are recognized") {
  Pondp po = testing::counter_projection();
  CHECK(qnp_constraint_variables(qnp_constraint(po, "X"), po) == std::vector<std::string>{"X"});
  TrajectoryConstraint renamed = TrajectoryConstraint::ltl("qnp(X)", ltl::Formula::letter("Dec").eventually());
  CHECK_FALSE(qnp_constraint_variables(renamed, po));
  CHECK_FALSE(qnp_constraint_variables(TrajectoryConstraint::all(), po));
  // A mislabeled constraint is checked by its formula.
  Policy inc = Policy::memoryless(po.observations, po.actions, {{"X>0", "Inc"}});
  CHECK(check_solution(po, inc, SolutionMode::under(renamed)).kind == VerdictKind::SolvesUnderConstraint);
  CHECK(check_solution(po, inc, SolutionMode::under(qnp_constraint(po, "X"))).kind == VerdictKind::NotASolution);
}

TEST_CASE("parity game for the counter") {
  Pondp po = testing::counter_projection();
  Dpw hand = testing::hand_dpw();
  SynthesisGame g = build_parity_game(po, hand);
  CHECK_NOTHROW(check_game(g.game));
  CHECK(controller_count(g) <= 2 * hand.num_states());
  ParitySolution s = solve_parity(g.game);
  for (int v : g.game.initial) CHECK(s.winner[v] == kController);
  CHECK(verify_strategy(g.game, s, kController));

  ltl::Formula reach = ltl::Formula::letter("X=0").eventually();
  SynthesisGame h = build_parity_game(po, ltl_to_dpw(reach, hand.alphabet));
  ParitySolution t = solve_parity(h.game);
  for (int v : h.game.initial) CHECK(t.winner[v] == kEnvironment);

  Dpw wrong = hand;
  wrong.alphabet = ltl::Alphabet({"a", "b", "c", "d"});
  CHECK_THROWS_AS(build_parity_game(po, wrong), Error);
}

TEST_CASE("trivially true objectives on deterministic problems") {
  Pondp p = testing::counter_instance(2, 3);
  for (auto& o : p.obs) o = 0;
  Pondp fo;
  // Fully observable copy of the concrete counter.
  fo = p;
  fo.observations = fo.states;
  for (std::size_t s = 0; s < fo.obs.size(); ++s) fo.obs[s] = static_cast<int>(s);
  Dpw all;
  all.alphabet = trajectory_alphabet(fo, Level::Observation);
  all.delta = {std::vector<int>(all.alphabet.size(), 0)};
  all.priority = {0};
  SynthesisGame g = build_parity_game(fo, all);
  ParitySolution s = solve_parity(g.game);
  for (std::size_t v = 0; v < g.game.size(); ++v)
    if (g.nodes[v].kind != GameNode::Kind::Lose) CHECK(s.winner[v] == kController);
}

TEST_CASE("synthesis for the counter") {
  Pondp po = testing::counter_projection();
  for (bool direct : {true, false}) {
    SynthesisResult r = synthesize(po, qnp_constraint(po, "X"), {kDefaultBudget, direct});
    REQUIRE(r.realizable);
    CHECK(outputs_at(r.policy, "X>0") == std::set<std::string>{"Dec"});
    CHECK(outputs_at(r.policy, "X=0").empty());
    CHECK(check_solution(po, r.policy, SolutionMode::under(qnp_constraint(po, "X"))).kind ==
          VerdictKind::SolvesUnderConstraint);
    for (int x0 : {1, 5, 10, 100}) {
      Pondp p = testing::counter_instance(x0, x0 + 1);
      Resolver res = Resolver::seeded(0);
      RunResult run = run_policy(p, r.policy, res);
      REQUIRE(run.kind == RunKind::Finite);
      CHECK(run.trajectory.actions.size() == static_cast<std::size_t>(x0));
      CHECK(p.goal[run.trajectory.states.back()]);
    }
  }
}

TEST_CASE("synthesis without a constraint fails on the counter") {
  Pondp po = testing::counter_projection();
  SynthesisResult r = synthesize(po, TrajectoryConstraint::all());
  CHECK_FALSE(r.realizable);
  CHECK_FALSE(r.counterstrategy.empty());
  // Every memoryless policy is refuted by a play that never reaches X=0.
  for (const char* choice : {"", "Inc", "Dec"}) {
    std::map<std::string, std::string> m;
    if (*choice) m["X>0"] = choice;
    Policy mu = Policy::memoryless(po.observations, po.actions, m);
    Refutation ref = refute(po, r, mu);
    if (ref.lasso) {
      CHECK_NOTHROW(check_trajectory(po, *ref.lasso));
      CHECK_FALSE(is_goal_reaching(po, *ref.lasso));
    } else {
      REQUIRE(ref.finite);
      CHECK_FALSE(is_goal_reaching(po, *ref.finite));
    }
  }
}

TEST_CASE("initial goal states need no actions") {
  Pondp po = testing::counter_projection();
  po.init = {1};
  SynthesisResult r = synthesize(po, TrajectoryConstraint::all());
  REQUIRE(r.realizable);
  for (const auto& row : r.policy.output)
    for (int a : row) CHECK(a == -1);
}

TEST_CASE("synthesis is sound on random problems") {
  std::mt19937_64 rng(21);
  int realizable = 0, unrealizable = 0;
  for (int round = 0; round < 60; ++round) {
    const int n = std::uniform_int_distribution<int>(2, 4)(rng);
    Fondp p;
    p.actions = {"a", "b"};
    for (int s = 0; s < n; ++s) {
      p.states.push_back("s" + std::to_string(s));
      p.goal.push_back(s == n - 1);
      p.obs.push_back(s);
      std::vector<int> avail;
      std::map<int, std::vector<int>> succ;
      for (int a = 0; a < 2; ++a) {
        std::set<int> targets;
        const int k = std::uniform_int_distribution<int>(1, 2)(rng);
        for (int i = 0; i < k; ++i) targets.insert(std::uniform_int_distribution<int>(0, n - 1)(rng));
        avail.push_back(a);
        succ[a] = {targets.begin(), targets.end()};
      }
      p.avail.push_back(avail);
      p.succ.push_back(succ);
    }
    p.observations = p.states;
    p.init = {0};
    ltl::Alphabet sigma = trajectory_alphabet(p, Level::Observation);
    TrajectoryConstraint psi = TrajectoryConstraint::ltl("psi", testing::random_formula(rng, sigma, 2));
    SynthesisResult r = synthesize(p, psi);
    if (r.realizable) {
      ++realizable;
      CHECK(check_solution(p, r.policy, SolutionMode::under(psi)).solved());
      continue;
    }
    ++unrealizable;
    for (int choice = 0; choice < (1 << (n - 1)); ++choice) {
      std::map<std::string, std::string> m;
      for (int s = 0; s + 1 < n; ++s) m[p.states[s]] = p.actions[(choice >> s) & 1];
      Policy mu = Policy::memoryless(p.observations, p.actions, m);
      Refutation ref = refute(p, r, mu);
      if (ref.finite) {
        CHECK_FALSE(is_goal_reaching(p, *ref.finite));
      } else {
        REQUIRE(ref.lasso);
        CHECK_NOTHROW(check_trajectory(p, *ref.lasso));
        CHECK_FALSE(ltl::eval_lasso(r.objective, lasso_word(p, *ref.lasso, Level::Observation, sigma), sigma));
      }
      CHECK_FALSE(check_solution(p, mu, SolutionMode::under(psi)).solved());
    }
  }
  CHECK(realizable > 5);
  CHECK(unrealizable > 5);
}
