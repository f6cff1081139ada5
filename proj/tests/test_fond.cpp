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

#include <functional>
#include <set>

#include "genplan/fond.hpp"
#include "genplan/qnp.hpp"
#include "test_support.hpp"

using namespace genplan;

TEST_CASE("planning for the counter abstraction") {
  Fondp po = testing::counter_projection();
  auto mu = strong_cyclic_plan(po);
  REQUIRE(mu);
  CHECK(mu->as_map() == std::map<std::string, std::string>{{"X>0", "Dec"}});
  CHECK(verify_strong_cyclic(po, *mu).kind == VerdictKind::FairSolution);
}

TEST_CASE("planning for the closed counter") {
  qnp::Qnp q = qnp::parse("vars X\ninit_values X in {5}\naction inc inc X\naction dec pre X>0 dec X\ngoal X=0");
  Fondp closed = qnp::syntactic_projection(qnp::close_qnp(q));
  auto mu = strong_cyclic_plan(closed);
  REQUIRE(mu);
  CHECK(mu->as_map() == std::map<std::string, std::string>{{"!q_X,X>0", "set(X)"}, {"q_X,X>0", "dec"}});
  CHECK(verify_strong_cyclic(closed, *mu).kind == VerdictKind::FairSolution);
}

TEST_CASE("unreachable goals are unsolvable") {
  Fondp po = testing::counter_projection();
  po.succ[0][1] = {0};
  CHECK_FALSE(strong_cyclic_plan(po));
  qnp::Qnp q = qnp::parse("vars X\ninit_values X in {1}\naction inc inc X\ngoal X=0");
  CHECK_FALSE(strong_cyclic_plan(qnp::syntactic_projection(q)));
}

TEST_CASE("goal at the start needs no actions") {
  Fondp po = testing::counter_projection();
  po.init = {1};
  auto mu = strong_cyclic_plan(po);
  REQUIRE(mu);
  CHECK(mu->as_map().empty());
  CHECK(verify_strong_cyclic(po, *mu).solved());
}

TEST_CASE("verifier rejects the increment policy") {
  Fondp po = testing::counter_projection();
  Policy inc = Policy::memoryless(po.observations, po.actions, {{"X>0", "Inc"}});
  Verdict v = verify_strong_cyclic(po, inc);
  CHECK(v.kind == VerdictKind::NotASolution);
  REQUIRE(v.lasso_counterexample);
  CHECK(v.lasso_counterexample->states == std::vector<int>{0});
  CHECK(v.lasso_counterexample->actions == std::vector<int>{0});
}

TEST_CASE("planner output always verifies on random problems") {
  std::mt19937_64 rng(11);
  int solved = 0;
  for (int round = 0; round < 300; ++round) {
    const int n = std::uniform_int_distribution<int>(2, 7)(rng);
    Fondp p;
    p.actions = {"a0", "a1", "a2"};
    for (int s = 0; s < n; ++s) {
      p.states.push_back("s" + std::to_string(s));
      p.goal.push_back(s == n - 1 || std::uniform_int_distribution<int>(0, 9)(rng) == 0);
      p.obs.push_back(s);
      std::vector<int> avail;
      std::map<int, std::vector<int>> succ;
      for (int a = 0; a < 3; ++a) {
        if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) continue;
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
    auto mu = strong_cyclic_plan(p);
    if (!mu) {
      // No policy exists: checking every memoryless policy confirms it.
      std::vector<int> pick(n, -1);
      std::function<bool(int)> any = [&](int s) {
        if (s == n) {
          std::map<std::string, std::string> m;
          for (int t = 0; t < n; ++t)
            if (pick[t] >= 0) m[p.observations[t]] = p.actions[pick[t]];
          return verify_strong_cyclic(p, Policy::memoryless(p.observations, p.actions, m)).solved();
        }
        if (p.goal[s] || p.avail[s].empty()) return any(s + 1);
        for (int a : p.avail[s]) {
          pick[s] = a;
          if (any(s + 1)) return true;
        }
        pick[s] = -1;
        return false;
      };
      CHECK_FALSE(any(0));
      continue;
    }
    ++solved;
    CHECK(verify_strong_cyclic(p, *mu).kind == VerdictKind::FairSolution);
    // Extra transitions into the goal keep the problem solvable.
    Fondp more = p;
    for (int s = 0; s < n; ++s)
      for (auto& [a, targets] : more.succ[s])
        if (!more.goal[s]) {
          targets.push_back(n - 1);
          std::sort(targets.begin(), targets.end());
          targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        }
    CHECK(strong_cyclic_plan(more));
  }
  CHECK(solved > 50);
}
