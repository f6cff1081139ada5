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

#include <optional>
#include <string>
#include <vector>

#include "genplan/constraints.hpp"
#include "genplan/dpw.hpp"
#include "genplan/model.hpp"
#include "genplan/parity_game.hpp"

namespace genplan::omega {

/// Node payload of the synthesis game. Controller nodes sit at a state after
/// the automaton has read its observation; environment nodes additionally
/// carry the chosen action and the automaton state after reading it.
struct GameNode {
  enum class Kind { Controller, Environment, Win, Lose };
  Kind kind = Kind::Controller;
  int state = -1;
  int dpw_state = -1;
  int action = -1;
};

struct SynthesisGame {
  ParityGame game;
  std::vector<GameNode> nodes;
  int win_sink = -1;
  int lose_sink = -1;
};

/// Game between a policy choosing actions and the environment choosing
/// outcomes. Goal states end the play in the winning sink; states without
/// actions lead to the losing sink. Requires a fully observable problem and a
/// DPW over trajectory_alphabet(p, Level::Observation).
SynthesisGame build_parity_game(const Fondp& p, const Dpw& d, std::size_t budget = kDefaultBudget);

/// Psi -> F goal, with the goal as a disjunction of observation letters.
ltl::Formula synthesis_objective(const Fondp& p, const TrajectoryConstraint& psi);

/// Parity automaton for (all qnp constraints on `variables`) -> F goal built
/// from an index appearance record over the variables. Uses 2N+1 priorities
/// plus an even goal sink.
Dpw qnp_dpw_direct(const Fondp& p, const std::vector<std::string>& variables);
/// Automaton for the conjunction of qnp(X) over the variables alone, over the
/// observation-level alphabet of p.
Dpw qnp_constraint_dpw(const Pondp& p, const std::vector<std::string>& variables);

struct SynthesisOptions {
  std::size_t budget = kDefaultBudget;
  // Use qnp_dpw_direct when psi is a conjunction of qnp(X) constraints.
  bool direct_qnp_dpw = true;
};

struct SynthesisResult {
  bool realizable = false;
  Policy policy;  // memory = reachable automaton states
  std::string reason;
  ltl::Formula objective;
  Dpw dpw;
  SynthesisGame game;
  ParitySolution solution;
  // Environment moves from its winning region: "state action -> outcome".
  std::vector<std::string> counterstrategy;
};

SynthesisResult synthesize(const Fondp& p, const TrajectoryConstraint& psi, const SynthesisOptions& opts = {});

/// Plays mu against the environment strategy of an unrealizable result. The
/// play is returned as a lasso or finite trajectory of p that violates the
/// objective.
struct Refutation {
  std::optional<Lasso> lasso;
  std::optional<Trajectory> finite;
};
Refutation refute(const Fondp& p, const SynthesisResult& r, const Policy& mu);

}  // namespace genplan::omega
