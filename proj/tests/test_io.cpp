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

#include "genplan/io.hpp"
#include "genplan/projection.hpp"
#include "genplan/qnp.hpp"
#include "genplan/synthesis.hpp"
#include "genplan/verify.hpp"
#include "test_support.hpp"

using namespace genplan;

namespace {

std::string data(const std::string& name) { return io::read_file(std::string(GENPLAN_DATA_DIR) + "/" + name); }

bool balanced_dot(const std::string& dot) {
  return dot.rfind("digraph", 0) == 0 && std::count(dot.begin(), dot.end(), '{') == std::count(dot.begin(), dot.end(), '}');
}

}  // namespace

TEST_CASE("problem files") {
  Pondp file = io::problem_from_json(io::parse_json(data("counter.fondp.json")));
  CHECK(file == testing::counter_projection());
  CHECK(io::problem_from_json(io::problem_to_json(file)) == file);

  Pondp inst = qnp::instantiate(qnp::parse(data("twovar_ranges.qnp")), {{"X", 10}, {"Y", 15}}, 20).problem;
  const std::string text = io::problem_to_json(inst).dump(2);
  CHECK(io::problem_from_json(io::parse_json(text)) == inst);
  CHECK(io::problem_to_json(io::problem_from_json(io::parse_json(text))).dump(2) == text);
}

TEST_CASE("malformed problem files") {
  CHECK_THROWS_AS(io::parse_json("{"), Error);
  io::Json j = io::problem_to_json(testing::counter_projection());
  j["succ"]["Jump|X>0"] = {"X=0"};
  CHECK_THROWS_AS(io::problem_from_json(j), Error);
  io::Json k = io::problem_to_json(testing::counter_projection());
  k.erase("obs");
  CHECK_THROWS_AS(io::problem_from_json(k), Error);
  CHECK_THROWS_AS(io::read_file("/nonexistent/file.json"), Error);
}

TEST_CASE("policy files") {
  Policy file = io::policy_from_json(io::parse_json(data("counter_dec.policy.json")));
  CHECK(file == testing::dec_when_positive());
  Pondp po = testing::counter_projection();
  omega::SynthesisResult r = omega::synthesize(po, qnp_constraint(po, "X"));
  REQUIRE(r.realizable);
  CHECK(io::policy_from_json(io::policy_to_json(r.policy)) == r.policy);
  io::Json bad = io::policy_to_json(file);
  bad["output"].push_back({"m0", "X=0", "Jump"});
  CHECK_THROWS_AS(io::policy_from_json(bad), Error);
}

TEST_CASE("automaton files") {
  omega::Dpw d = testing::hand_dpw();
  io::Json j = io::dpw_to_json(d);
  CHECK(j["states"].size() == 5);
  omega::Dpw back = io::dpw_from_json(j);
  CHECK(back.alphabet == d.alphabet);
  CHECK(back.delta == d.delta);
  CHECK(back.priority == d.priority);
  j["delta"][0][0] = 9;
  CHECK_THROWS_AS(io::dpw_from_json(j), Error);
}

TEST_CASE("verdicts and counterexamples") {
  Pondp po = testing::counter_projection();
  Verdict v = check_solution(po, testing::dec_when_positive(), SolutionMode::strong());
  io::Json j = io::verdict_to_json(po, v);
  CHECK(j["verdict"] == "NOT_A_SOLUTION");
  CHECK(j["counterexample"]["kind"] == "lasso");
  CHECK(j["counterexample"]["states"] == io::Json::array({"X>0"}));
  CHECK(j["counterexample"]["actions"] == io::Json::array({"Dec"}));
  Verdict ok = check_solution(po, testing::dec_when_positive(), SolutionMode::under(qnp_constraint(po, "X")));
  CHECK(io::verdict_to_json(po, ok)["constraint"] == "qnp(X)");
}

TEST_CASE("graph exports") {
  Pondp po = testing::counter_projection();
  CHECK(balanced_dot(io::problem_to_dot(po)));
  CHECK(balanced_dot(io::dpw_to_dot(testing::hand_dpw())));
  CHECK(balanced_dot(io::game_to_dot(omega::build_parity_game(po, testing::hand_dpw()).game)));
  CHECK(balanced_dot(io::lasso_to_dot(po, Lasso{{0}, {1}, 0, Level::State})));
  CHECK(io::problem_to_dot(po).find("\"X>0\"") != std::string::npos);
}
