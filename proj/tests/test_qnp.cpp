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

#include <fstream>
#include <set>
#include <sstream>

#include "genplan/projection.hpp"
#include "genplan/qnp.hpp"
#include "genplan/verify.hpp"
#include "test_support.hpp"

using namespace genplan;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(GENPLAN_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kCounterDecOnly = R"(
vars X
init_values X in {5}
action dec pre X>0 dec X
goal X=0
)";

// Dec without a positivity precondition, as in the counter abstraction.
const char* kCounterFree = R"(
vars X
init_values X in [1, 4]
action Inc inc X
action Dec dec X
goal X=0
)";

Policy canonical_policy() {
  return Policy::memoryless({"X=0,Y=0", "X=0,Y>0", "X>0,Y=0", "X>0,Y>0"}, {"a", "b"},
                            {{"X>0,Y=0", "a"}, {"X>0,Y>0", "b"}, {"X=0,Y>0", "b"}});
}

std::set<std::string> successor_names(const Pondp& p, const std::string& s, const std::string& a) {
  std::set<std::string> out;
  for (int t : step(p, p.state_id(s), p.action_id(a))) out.insert(p.states[t]);
  return out;
}

}  // namespace

TEST_CASE("parsing the two-variable problem") {
  qnp::Qnp q = qnp::parse(read_data("twovar.qnp"));
  CHECK(q.variables == std::vector<std::string>{"X", "Y"});
  REQUIRE(q.actions.size() == 2);
  CHECK(q.actions[0].effects.at("X") == qnp::Effect::Dec);
  CHECK(q.actions[0].effects.at("Y") == qnp::Effect::Inc);
  CHECK(q.goal.zero == std::map<std::string, bool>{{"X", true}, {"Y", true}});
  CHECK(q.diagnostics.empty());
  CHECK(qnp::parse(qnp::to_text(q)) == q);
  CHECK_NOTHROW(qnp::parse(kCounterDecOnly));
}

TEST_CASE("malformed problems") {
  CHECK_THROWS_WITH_AS(qnp::parse("vars X\ninit_values X in {1}\naction a inc X dec X\ngoal X=0"),
                       doctest::Contains("SEMANTIC_ERROR"), Error);
  CHECK_THROWS_AS(qnp::parse("vars X\ninit_values X in {1}\naction a pre Y>0 dec X\ngoal X=0"), Error);
  CHECK_THROWS_AS(qnp::parse("vars X\ninit_values X in {1\ngoal X=0"), Error);
  CHECK_THROWS_AS(qnp::parse("vars X\ngoal X=0"), Error);
  CHECK_THROWS_AS(qnp::parse("vars X\ninit_values X in {1}\ngoal X=0 X>0"), Error);
  try {
    qnp::parse("vars X\ninit_values X in {1}\naction a pre X=0 X>0\ngoal X=0");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
  }
  qnp::Qnp loose = qnp::parse(kCounterFree);
  CHECK(loose.diagnostics.size() == 1);
}

TEST_CASE("instantiating a decrement-only counter") {
  qnp::Instance inst = qnp::instantiate(qnp::parse(kCounterDecOnly), {{"X", 5}}, 10);
  const Pondp& p = inst.problem;
  CHECK(p.num_states() == 6);
  CHECK_FALSE(inst.capped);
  for (std::size_t s = 0; s < p.num_states(); ++s) {
    for (const auto& [a, targets] : p.succ[s]) CHECK(targets.size() == 1);
    CHECK(p.observations[p.obs[s]] == (p.states[s] == "X=0" ? "X=0" : "X>0"));
    CHECK(static_cast<bool>(p.goal[s]) == (p.states[s] == "X=0"));
  }
  CHECK(validate(p).empty());
  Pondp at_zero = qnp::instantiate(qnp::parse(kCounterDecOnly), {{"X", 5}}, 10).problem;
  CHECK(at_zero == p);
}

TEST_CASE("instantiation errors") {
  qnp::Qnp q = qnp::parse(kCounterFree);
  CHECK_THROWS_AS(qnp::instantiate(q, {{"X", 7}}, 10), Error);
  CHECK_THROWS_AS(qnp::instantiate(q, {{"X", 2.5}}, 10), Error);
  CHECK_THROWS_AS(qnp::instantiate(q, {}, 10), Error);
  try {
    qnp::instantiate(q, {{"X", 4}}, 3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BoundTooSmall);
  }
}

TEST_CASE("initial value zero is a goal") {
  qnp::Qnp q = qnp::parse("vars X\ninit_values X in {0, 3}\naction dec pre X>0 dec X\ngoal X=0");
  Pondp p = qnp::instantiate(q, {{"X", 0}}, 4).problem;
  CHECK(p.goal[p.init[0]]);
}

TEST_CASE("instances agree with a hand-built counter") {
  qnp::Qnp q = qnp::parse(kCounterFree);
  qnp::Instance inst = qnp::instantiate(q, {{"X", 3}}, 5);
  CHECK(inst.capped);
  CHECK(same_structure(inst.problem, testing::counter_instance(3, 5)));
}

TEST_CASE("syntactic projection") {
  CHECK(same_structure(qnp::syntactic_projection(qnp::parse(kCounterFree)), testing::counter_projection()));

  Fondp counter = qnp::syntactic_projection(qnp::parse(read_data("counter.qnp")));
  CHECK(counter.num_states() == 2);

  qnp::Qnp both = qnp::parse("vars X\ninit_values X in {0, 3}\naction dec pre X>0 dec X\ngoal X=0");
  CHECK(qnp::syntactic_projection(both).init.size() == 2);

  Fondp two = qnp::syntactic_projection(qnp::parse(read_data("twovar.qnp")));
  CHECK(two.num_states() == 4);
  CHECK(successor_names(two, "X>0,Y=0", "a") == std::set<std::string>{"X>0,Y>0", "X=0,Y>0"});
  CHECK(successor_names(two, "X>0,Y>0", "b") == std::set<std::string>{"X>0,Y>0", "X>0,Y=0"});
  CHECK(is_fully_observable(two));
}

TEST_CASE("projection of sampled instances matches the syntactic projection") {
  const char* text = R"(
vars X Y
init_values X in [0, 3]
init_values Y in [0, 3]
action a pre X>0 dec X inc Y
action b pre Y>0 dec Y
goal X=0 Y=0
)";
  qnp::Qnp q = qnp::parse(text);
  std::vector<std::map<std::string, double>> choices;
  for (int x = 0; x <= 3; ++x)
    for (int y = 0; y <= 3; ++y) choices.push_back({{"X", x}, {"Y", y}});
  PondpClass cls = qnp::instance_class(q, choices, 8);
  CHECK(validate_class(cls).empty());
  ProjectionResult r = observation_projection(cls);
  CHECK(same_structure(restrict_to_reachable(r.fondp), qnp::syntactic_projection(q)));

  PondpClass counters = qnp::instance_class(qnp::parse(kCounterFree), {{{"X", 1}}, {{"X", 4}}}, 6);
  CHECK(same_structure(restrict_to_reachable(observation_projection(counters).fondp),
                       qnp::syntactic_projection(qnp::parse(kCounterFree))));
}

TEST_CASE("two-valued instance mirrors the projection") {
  qnp::Qnp q = qnp::parse(read_data("twovar.qnp"));
  Pondp tv = qnp::two_valued_instance(q);
  Fondp proj = qnp::syntactic_projection(q);
  for (auto& s : tv.states) {
    std::string renamed;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '=' && i + 1 < s.size() && s[i + 1] == '1') {
        renamed += ">0";
        ++i;
      } else {
        renamed += s[i];
      }
    }
    s = renamed;
  }
  tv.observations = tv.states;
  for (std::size_t i = 0; i < tv.obs.size(); ++i) tv.obs[i] = static_cast<int>(i);
  CHECK(same_structure(tv, proj));
}

TEST_CASE("observations of instances are the boolean projection") {
  qnp::Qnp q = qnp::parse(read_data("blocks.qnp"));
  Pondp p = qnp::instantiate(q, {{"n", 3}}, 8).problem;
  for (std::size_t s = 0; s < p.num_states(); ++s) {
    const std::string& name = p.states[s];
    const bool zero = name.substr(name.find("n=")) == "n=0";
    const bool holding = name[0] != '!';
    const std::string expected = std::string(holding ? "holding" : "!holding") + (zero ? ",n=0" : ",n>0");
    CHECK(p.observations[p.obs[s]] == expected);
  }
}

TEST_CASE("similarity") {
  qnp::Qnp five = qnp::parse(read_data("counter.qnp"));
  qnp::Qnp range = five;
  range.init_values["X"] = qnp::InitValues{true, {}, 5, 10};
  CHECK(qnp::similar(five, range));
  qnp::Qnp with_zero = five;
  with_zero.init_values["X"].values = {0, 5};
  CHECK_FALSE(qnp::similar(five, with_zero));
  qnp::Qnp renamed = five;
  renamed.actions[0].name = "grow";
  CHECK_FALSE(qnp::similar(five, renamed));
}

TEST_CASE("closing problems") {
  qnp::Qnp c = qnp::close_qnp(qnp::parse(read_data("counter.qnp")));
  CHECK(std::find(c.fluents.begin(), c.fluents.end(), "q_X") != c.fluents.end());
  CHECK(c.find_action("set(X)"));
  REQUIRE(c.find_action("unset(X)"));
  CHECK(c.find_action("unset(X)")->pre.zero.at("X"));
  CHECK(c.find_action("dec")->pre.fluents.at("q_X"));
  CHECK_FALSE(c.find_action("inc")->pre.fluents.at("q_X"));

  qnp::Qnp t = qnp::close_qnp(qnp::parse(read_data("twovar.qnp")));
  const qnp::Action* a = t.find_action("a");
  CHECK(a->pre.fluents.at("q_X"));
  CHECK_FALSE(a->pre.fluents.at("q_Y"));
  CHECK(t.find_action("b")->pre.fluents.at("q_Y"));

  qnp::Qnp both = qnp::parse("vars X Y\ninit_values X in {1}\ninit_values Y in {1}\naction a pre X>0 Y>0 dec X Y\ngoal X=0");
  CHECK(both.diagnostics.size() == 1);
  try {
    qnp::close_qnp(both);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotClosureEligible);
  }
  CHECK_THROWS_AS(qnp::close_qnp(qnp::parse(kCounterFree)), Error);
}

TEST_CASE("canonical two-variable policy") {
  qnp::Qnp q = qnp::parse(read_data("twovar.qnp"));
  Resolver r = Resolver::seeded(0);
  qnp::NamedRun run = qnp::simulate(q, {{"X", 20}, {"Y", 30}}, canonical_policy(), r, {1000000, true, true});
  CHECK(run.kind == RunKind::Finite);
  CHECK(run.goal_reached);
  CHECK(run.actions.size() == 70);
  CHECK(std::count(run.actions.begin(), run.actions.end(), "a") == 20);

  Pondp p = qnp::instantiate(q, {{"X", 20}, {"Y", 30}}, 64).problem;
  RunResult bounded = run_policy(p, canonical_policy(), r);
  CHECK(bounded.kind == RunKind::Finite);
  CHECK(bounded.trajectory.actions.size() == 70);
  CHECK(is_goal_reaching(p, bounded.trajectory));
  CHECK(check_solution(p, canonical_policy(), SolutionMode::strong()).kind == VerdictKind::StrongSolution);

  qnp::Qnp ranges = qnp::parse(read_data("twovar_ranges.qnp"));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto values = qnp::sample_initial_values(ranges, seed);
    CHECK(values.at("X") >= 10);
    CHECK(values.at("X") <= 20);
    CHECK(values == qnp::sample_initial_values(ranges, seed));
    Resolver rs = Resolver::seeded(seed);
    qnp::NamedRun sampled = qnp::simulate(ranges, values, canonical_policy(), rs, {1000000, true, true});
    CHECK(sampled.goal_reached);
  }
}

TEST_CASE("nondeterministic step semantics") {
  qnp::Qnp q = qnp::parse("vars X\ninit_values X in {2}\naction dec pre X>0 dec X\ngoal X=0\nsemantics X steps [0.5, 1] grid 0.5");
  Pondp p = qnp::instantiate(q, {{"X", 2}}, 4).problem;
  CHECK(successor_names(p, "X=2", "dec") == std::set<std::string>{"X=1.5", "X=1"});
  CHECK(successor_names(p, "X=0.5", "dec") == std::set<std::string>{"X=0"});
  CHECK(p.num_states() == 5);
}
