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

#include <random>

#include "genplan/dpw.hpp"
#include "genplan/parity_game.hpp"
#include "test_support.hpp"

using namespace genplan;
using namespace genplan::ltl;
using namespace genplan::omega;

TEST_CASE("DPW for eventually goal") {
  Alphabet sigma({"goal", "other"});
  Formula f = parse("F goal", &sigma);
  Dpw d = ltl_to_dpw(f, sigma);
  CHECK(d.num_states() == 2);
  int sink = d.step(d.initial, sigma.index("goal"));
  CHECK(d.priority[sink] % 2 == 0);
  CHECK(d.priority[d.initial] % 2 == 1);
  testing::for_each_word(2, 3, 3, [&](const Word& w) { CHECK(dpw_accepts(d, w) == eval_lasso(f, w, sigma)); });
}

TEST_CASE("DPW of an empty NBA rejects everything") {
  Alphabet sigma({"a", "b"});
  Nba empty;
  empty.alphabet = sigma;
  empty.delta = {{{0}, {0}}};
  empty.initial = {0};
  empty.accepting = {0};
  empty.accepting[0] = 0;
  Dpw d = nba_to_dpw(empty);
  testing::for_each_word(2, 3, 3, [&](const Word& w) { CHECK_FALSE(dpw_accepts(d, w)); });
}

TEST_CASE("DPW agrees with NBA and semantics on random formulas") {
  std::mt19937_64 rng(99);
  Alphabet sigma({"a", "b", "c"});
  for (int i = 0; i < 200; ++i) {
    Formula f = testing::random_formula(rng, sigma, 4);
    Nba a = ltl_to_nba(f, sigma);
    Dpw d = nba_to_dpw(a);
    Dpw c = complement(d);
    for (int j = 0; j < 40; ++j) {
      Word w = testing::random_word(rng, sigma.size(), 8, 8);
      bool expected = eval_lasso(f, w, sigma);
      REQUIRE_MESSAGE(dpw_accepts(d, w) == expected, f.to_string());
      REQUIRE(dpw_accepts(c, w) != expected);
    }
  }
}

TEST_CASE("relabel maps letters and rejects unmapped ones") {
  Alphabet small({"a", "b"});
  Dpw d = ltl_to_dpw(parse("G F a", &small), small);
  Alphabet big({"x", "a", "b"});
  Dpw r = relabel(d, big, {-1, 0, 1});
  Word w;
  w.letters = {1, 2};
  CHECK(dpw_accepts(r, w));
  w.letters = {1, 0};
  CHECK_FALSE(dpw_accepts(r, w));
}

TEST_CASE("trivial parity games") {
  ParityGame even;
  even.add_node(kController, 0);
  even.succ[0] = {0};
  CHECK(solve_parity(even).winner[0] == kController);
  ParityGame odd;
  odd.add_node(kController, 1);
  odd.succ[0] = {0};
  CHECK(solve_parity(odd).winner[0] == kEnvironment);

  ParityGame bad;
  bad.add_node(kController, 0);
  CHECK_THROWS_AS(check_game(bad), Error);
}

TEST_CASE("controller strategy avoids the losing move") {
  ParityGame g;
  int c = g.add_node(kController, 0);
  int lose = g.add_node(kEnvironment, 1);
  int win1 = g.add_node(kEnvironment, 2);
  int win2 = g.add_node(kEnvironment, 4);
  g.succ[c] = {lose, win1, win2};
  g.succ[lose] = {lose};
  g.succ[win1] = {win1};
  g.succ[win2] = {win2};
  ParitySolution s = solve_parity(g);
  CHECK(s.winner[c] == kController);
  CHECK(s.strategy[c] != lose);
  CHECK(verify_strategy(g, s, kController));
  CHECK(verify_strategy(g, s, kEnvironment));
}

TEST_CASE("Zielonka matches positional strategy enumeration") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    ParityGame g = testing::random_game(rng, 8, 4);
    ParitySolution s = solve_parity(g);
    REQUIRE(s.winner == testing::brute_force_winners(g));
    REQUIRE(verify_strategy(g, s, kController));
    REQUIRE(verify_strategy(g, s, kEnvironment));
  }
}
