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

#include "genplan/nba.hpp"
#include "test_support.hpp"

using namespace genplan;
using namespace genplan::ltl;

namespace {

Word word(const Alphabet& sigma, const std::vector<std::string>& prefix, const std::vector<std::string>& cycle) {
  Word w;
  for (const auto& l : prefix) w.letters.push_back(sigma.index(l));
  w.loop_start = prefix.size();
  for (const auto& l : cycle) w.letters.push_back(sigma.index(l));
  return w;
}

}  // namespace

TEST_CASE("parser precedence and associativity") {
  Alphabet sigma({"Inc", "Dec", "Zero", "a", "b", "c"});
  Formula psi = parse("F G !Inc & G F Dec -> G F Zero", &sigma);
  CHECK(psi.op() == Op::Implies);
  CHECK(psi.lhs().op() == Op::And);
  CHECK(psi.lhs().lhs() == Formula::letter("Inc").operator!().always().eventually());
  CHECK(psi.rhs() == Formula::letter("Zero").eventually().always());

  CHECK(parse("true") == Formula::truth());
  Formula u = parse("a U b U c", &sigma);
  CHECK(u == Formula::letter("a").until(Formula::letter("b").until(Formula::letter("c"))));
  CHECK(parse("a U (b U c)", &sigma) == u);
  CHECK(parse("a | b & c") == (Formula::letter("a") || (Formula::letter("b") && Formula::letter("c"))));
  CHECK(parse("a -> b -> c") == Formula::letter("a").implies(Formula::letter("b").implies(Formula::letter("c"))));
  CHECK(parse("\"X=0\" || \"X>0\"") == (Formula::letter("X=0") || Formula::letter("X>0")));
}

TEST_CASE("parser errors") {
  Alphabet sigma({"a", "b"});
  CHECK_THROWS_AS(parse("a &", &sigma), Error);
  CHECK_THROWS_AS(parse("(a", &sigma), Error);
  try {
    parse("a & zz", &sigma);
    FAIL("expected unknown letter");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownLetter);
  }
  try {
    parse("a ) b");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
  }
}

TEST_CASE("printer round trip") {
  std::mt19937_64 rng(7);
  Alphabet sigma({"a", "X=0", "U", "b"});
  for (int i = 0; i < 500; ++i) {
    Formula f = testing::random_formula(rng, sigma, 4);
    CHECK(parse(f.to_string(), &sigma) == f);
  }
}

TEST_CASE("lasso semantics clause by clause") {
  Alphabet sigma({"a", "b", "c"});
  auto holds = [&](const std::string& f, const Word& w) { return eval_lasso(parse(f, &sigma), w, sigma); };
  Word w = word(sigma, {"a", "b"}, {"c", "a"});  // a b (c a)^w
  CHECK(holds("a", w));
  CHECK_FALSE(holds("b", w));
  CHECK(holds("X b", w));
  CHECK(holds("X X c", w));
  CHECK(holds("X X X X X X c", w));
  CHECK(holds("!b", w));
  CHECK(holds("a & X b", w));
  CHECK(holds("b | a", w));
  CHECK(holds("a U b", w));
  CHECK_FALSE(holds("a U c", w));
  CHECK(holds("(a | b) U c", w));
  CHECK(holds("F c", w));
  CHECK_FALSE(holds("F G a", w));
  CHECK(holds("G F a", w));
  CHECK_FALSE(holds("G F b", w));
  CHECK(holds("F G !b", w));
  CHECK(holds("b R true", w));
  CHECK_FALSE(holds("c R a", w));
  CHECK(holds("G (c -> X a)", w));
  CHECK(holds("true", w));
  CHECK_FALSE(holds("false", w));

  Alphabet q({"X>0", "X=0", "Inc", "Dec"});
  Formula psi = parse("F G !Inc & G F Dec -> G F \"X=0\"", &q);
  CHECK_FALSE(eval_lasso(psi, word(q, {}, {"X>0", "Dec"}), q));
  CHECK(eval_lasso(parse("F \"X=0\"", &q), word(q, {"X>0", "Dec"}, {"X=0", "Dec"}), q));
  CHECK_FALSE(eval_lasso(parse("G F Dec", &q), word(q, {}, {"X>0", "Inc"}), q));
  CHECK(eval_lasso(psi, word(q, {}, {"X>0", "Inc"}), q));
}

TEST_CASE("word checks") {
  Alphabet sigma({"a"});
  Word bad;
  bad.letters = {0, 3};
  CHECK_THROWS_AS(check_word(bad, sigma), Error);
  Word empty;
  CHECK_THROWS_AS(check_word(empty, sigma), Error);
  CHECK_THROWS_AS(Alphabet({"a", "a"}), Error);
}

TEST_CASE("NBA shapes") {
  Alphabet sigma({"goal", "other"});
  Nba eventually = ltl_to_nba(parse("F goal", &sigma), sigma);
  CHECK(eventually.num_states() <= 3);
  Nba all = ltl_to_nba(Formula::truth(), sigma);
  CHECK(all.num_states() == 1);
  CHECK(all.accepting[0]);
  testing::for_each_word(2, 3, 3, [&](const Word& w) {
    CHECK(nba_accepts(all, w));
    CHECK(nba_accepts(eventually, w) == eval_lasso(parse("F goal", &sigma), w, sigma));
  });
  Nba none = ltl_to_nba(Formula::falsity(), sigma);
  CHECK_FALSE(nba_accepts(none, testing::random_word(*std::make_unique<std::mt19937_64>(1), 2, 2, 2)));
}

TEST_CASE("NBA agrees with lasso semantics on random samples") {
  std::mt19937_64 rng(2024);
  Alphabet sigma({"a", "b", "c"});
  for (int i = 0; i < 300; ++i) {
    Formula f = testing::random_formula(rng, sigma, 4);
    Nba pos = ltl_to_nba(f, sigma);
    Nba neg = ltl_to_nba(!f, sigma);
    for (int j = 0; j < 30; ++j) {
      Word w = testing::random_word(rng, sigma.size(), 8, 8);
      bool expected = eval_lasso(f, w, sigma);
      REQUIRE_MESSAGE(nba_accepts(pos, w) == expected, f.to_string());
      REQUIRE_MESSAGE(nba_accepts(neg, w) != expected, f.to_string());
    }
  }
}

TEST_CASE("QNP-style implication NBA on sampled lassos") {
  Alphabet q({"X>0", "X=0", "Inc", "Dec"});
  Formula phi = parse("(F G !Inc & G F Dec -> G F \"X=0\") -> F \"X=0\"", &q);
  Nba a = ltl_to_nba(phi, q);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    Word w = testing::random_word(rng, q.size(), 8, 8);
    REQUIRE(nba_accepts(a, w) == eval_lasso(phi, w, q));
  }
}

TEST_CASE("tableau budget") {
  Alphabet sigma({"a", "b"});
  Formula f = parse("G F a & G F b & F G a & (a U b) & X X X a", &sigma);
  CHECK_THROWS_AS(ltl_to_nba(f, sigma, 3), Error);
}

TEST_CASE("incremental lasso evaluation matches whole-word evaluation") {
  Alphabet sigma({"a", "b", "c"});
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    Formula f = testing::random_formula(rng, sigma, 4);
    LassoEvaluator whole(f, sigma), parts(f, sigma);
    for (int j = 0; j < 20; ++j) {
      Word w = testing::random_word(rng, sigma.size(), 6, 6);
      std::vector<int> cycle(w.letters.begin() + static_cast<long>(w.loop_start), w.letters.end());
      std::vector<char> v = parts.cycle_values(cycle), u;
      for (std::size_t k = w.loop_start; k-- > 0;) {
        parts.prepend(w.letters[k], v, u);
        v.swap(u);
      }
      REQUIRE_MESSAGE(LassoEvaluator::root(v) == whole(w), f.to_string());
    }
  }
}
