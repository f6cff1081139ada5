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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "genplan/error.hpp"

namespace genplan {

/// Which letters a QNP variable induces on an observation-action alphabet.
/// Names refer to observations and actions of the owning problem.
struct VariableLabels {
  std::string variable;
  std::vector<std::string> zero_observations;  // observations where the variable is 0
  std::vector<std::string> inc_actions;
  std::vector<std::string> dec_actions;

  bool operator==(const VariableLabels&) const = default;
};

/// Class-level metadata: observable goals and observable preconditions.
struct ClassInfo {
  std::vector<std::string> goal_observations;
  std::map<std::string, std::vector<std::string>> avail_by_obs;

  bool operator==(const ClassInfo&) const = default;
};

/// Finite partially observable nondeterministic problem. Entities are named;
/// every table is indexed by position in the corresponding name list.
struct Pondp {
  std::vector<std::string> states;
  std::vector<std::string> observations;
  std::vector<std::string> actions;
  std::vector<int> init;
  std::vector<char> goal;                          // per state
  std::vector<int> obs;                            // per state
  std::vector<std::vector<int>> avail;             // per state, sorted action ids
  std::vector<std::map<int, std::vector<int>>> succ;  // per state: action -> sorted successors
  std::optional<ClassInfo> class_info;
  std::vector<VariableLabels> labels;
  std::map<std::string, std::string> metadata;

  std::size_t num_states() const { return states.size(); }
  int state_id(const std::string& name) const;   // throws InvalidInput
  int obs_id(const std::string& name) const;     // throws InvalidInput
  int action_id(const std::string& name) const;  // throws InvalidInput
  std::optional<int> find_action(const std::string& name) const;
  std::optional<int> find_obs(const std::string& name) const;
  bool available(int s, int a) const;
  const VariableLabels* find_labels(const std::string& variable) const;

  bool operator==(const Pondp&) const = default;
};

/// A Pondp whose observation function is the identity on states.
using Fondp = Pondp;
bool is_fully_observable(const Pondp& p);

/// Explicit class of problems sharing actions, observations, goal
/// observations and per-observation preconditions.
struct PondpClass {
  std::vector<std::string> actions;
  std::vector<std::string> observations;
  std::vector<std::string> goal_observations;
  std::map<std::string, std::vector<std::string>> avail_by_obs;
  std::vector<Pondp> members;
};

struct Diagnostic {
  std::string invariant;
  std::string witness;
};

/// Empty iff all structural invariants hold; with a class, also checks
/// membership conditions (shared alphabets, observable goals and preconditions).
std::vector<Diagnostic> validate(const Pondp& p, const PondpClass* cls = nullptr);
std::vector<Diagnostic> validate_class(const PondpClass& cls);

enum class Level { State, Observation };

/// Finite trajectory s0 a0 s1 ... sn; states.size() == actions.size() + 1.
struct Trajectory {
  std::vector<int> states;
  std::vector<int> actions;
  Level level = Level::State;

  bool operator==(const Trajectory&) const = default;
};

/// Ultimately periodic trajectory s0 a0 ... s(n-1) a(n-1) followed by
/// s(loop_start) again. states.size() == actions.size() >= 1.
struct Lasso {
  std::vector<int> states;
  std::vector<int> actions;
  std::size_t loop_start = 0;
  Level level = Level::State;

  std::size_t size() const { return states.size(); }
  std::size_t next(std::size_t i) const { return i + 1 < states.size() ? i + 1 : loop_start; }
  bool operator==(const Lasso&) const = default;
};

/// Throws NotATrajectory unless t starts in init and follows available
/// actions and successor sets of p.
void check_trajectory(const Pondp& p, const Trajectory& t);
void check_trajectory(const Pondp& p, const Lasso& l);

/// Finite-memory observation-to-action transducer. update is total on
/// memory x observation; output is -1 where the policy is undefined.
struct Policy {
  std::vector<std::string> memory_states;
  int initial = 0;
  std::vector<std::string> observations;
  std::vector<std::string> actions;
  std::vector<std::vector<int>> update;  // [memory][observation] -> memory
  std::vector<std::vector<int>> output;  // [memory][observation] -> action or -1

  static Policy memoryless(std::vector<std::string> observations, std::vector<std::string> actions,
                           const std::map<std::string, std::string>& choice);
  bool is_memoryless() const { return memory_states.size() == 1; }
  /// Memoryless view: observation name -> action name over defined entries.
  std::map<std::string, std::string> as_map(int memory = 0) const;
  /// Output along a nonempty observation sequence (names); nullopt for undefined.
  std::optional<std::string> decide(const std::vector<std::string>& observations_seen) const;

  bool operator==(const Policy&) const = default;
};

/// Policy indices translated to a problem's observation and action ids.
struct BoundPolicy {
  const Policy* policy = nullptr;
  std::vector<int> obs_of_problem;     // problem obs -> policy obs or -1
  std::vector<int> action_of_policy;   // policy action -> problem action or -1

  int output(int memory, int problem_obs) const;  // problem action, -1 undefined, -2 unknown action
  int update(int memory, int problem_obs) const;
};
BoundPolicy bind(const Policy& mu, const Pondp& p);

enum class VerdictKind { StrongSolution, FairSolution, SolvesUnderConstraint, NotASolution, InvalidPolicy };
std::string verdict_name(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::NotASolution;
  std::string constraint;  // SolvesUnderConstraint
  std::optional<Trajectory> finite_counterexample;
  std::optional<Lasso> lasso_counterexample;
  std::string reason;

  bool solved() const {
    return kind == VerdictKind::StrongSolution || kind == VerdictKind::FairSolution ||
           kind == VerdictKind::SolvesUnderConstraint;
  }
};

/// Successor set of an available action; throws UnavailableAction.
const std::vector<int>& step(const Pondp& p, int s, int a);

/// Explicit nondeterminism resolution. Seeded picks uniformly with a
/// std::mt19937_64; scripted consumes one named choice per nondeterministic
/// step (singleton successor sets and single initial states consume nothing).
class Resolver {
 public:
  static Resolver seeded(std::uint64_t seed);
  static Resolver scripted(std::vector<std::string> choices, bool repeat = false);

  /// Index into candidates (names given for scripted matching).
  std::size_t choose(const std::vector<std::string>& candidate_names);

 private:
  enum class Mode { Seeded, Scripted } mode_ = Mode::Seeded;
  std::mt19937_64 rng_;
  std::vector<std::string> script_;
  std::size_t next_ = 0;
  bool repeat_ = false;
};

struct RunOptions {
  std::size_t max_steps = 10000;
  bool stop_at_goal = false;
  bool detect_lasso = true;
};

enum class RunKind { Finite, Lasso, Truncated };
std::string run_kind_name(RunKind k);

struct RunResult {
  RunKind kind = RunKind::Finite;
  Trajectory trajectory;  // Finite and Truncated
  Lasso lasso;            // Lasso
  std::vector<int> memory;  // memory state at each visited position
  bool goal_reached = false;
};

/// Simulates mu on p. A repeated (state, memory) pair closes the run into a
/// lasso, which is itself a mu-trajectory of p. Throws InvalidPolicy or
/// ResolverExhausted.
RunResult run_policy(const Pondp& p, const Policy& mu, Resolver& resolver, const RunOptions& opts = {});

bool is_goal_reaching(const Pondp& p, const Trajectory& t);
bool is_goal_reaching(const Pondp& p, const Lasso& l);

/// Every sibling outcome of a transition on the cycle also occurs on the cycle.
bool is_fair(const Pondp& p, const Lasso& l);
inline bool is_fair(const Pondp&, const Trajectory&) { return true; }

}  // namespace genplan
