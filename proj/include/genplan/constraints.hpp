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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "genplan/dpw.hpp"
#include "genplan/ltl.hpp"
#include "genplan/model.hpp"

namespace genplan {

/// A set of infinite trajectories. Finite trajectories satisfy every constraint.
struct TrajectoryConstraint {
  enum class Kind { Ltl, Fairness, Explicit };

  Kind kind = Kind::Ltl;
  std::string name;
  ltl::Formula formula;  // Ltl: over observations (or states) and actions
  Level level = Level::Observation;
  std::function<bool(const Pondp&, const Lasso&)> predicate;  // Explicit

  static TrajectoryConstraint ltl(std::string name, ltl::Formula f, Level level = Level::Observation);
  /// Every infinite trajectory.
  static TrajectoryConstraint all();
  static TrajectoryConstraint fairness();
  /// The predicate receives lassos at `level` (auto-lifted from state level).
  static TrajectoryConstraint explicit_predicate(std::string name,
                                                 std::function<bool(const Pondp&, const Lasso&)> predicate,
                                                 Level level = Level::State);
};

/// Letters of interleaved words: observations (or states) followed by
/// actions. Throws AlphabetMismatch when an action shares a name with an
/// observation or state.
ltl::Alphabet trajectory_alphabet(const Pondp& p, Level level);

/// Interleaved word s0 a0 s1 a1 ... of a lasso, as observation or state
/// letters. Observation-level lassos index observations of p.
ltl::Word lasso_word(const Pondp& p, const Lasso& l, Level level, const ltl::Alphabet& sigma);

/// Observation-level image of a state-level lasso.
Lasso lift_lasso(const Pondp& p, const Lasso& l);

bool satisfies(const TrajectoryConstraint& c, const Trajectory& t, const Pondp& p);
/// Throws AlphabetMismatch when the lasso uses letters outside the alphabet of p.
bool satisfies(const TrajectoryConstraint& c, const Lasso& l, const Pondp& p);

/// (F G !inc & G F dec) -> G F zero, over the letters recorded for X.
ltl::Formula qnp_formula(const VariableLabels& labels);
/// Throws UnknownVariable if p has no labels for the variable.
TrajectoryConstraint qnp_constraint(const Pondp& p, const std::string& variable);
/// Same antecedent, consequent: eventually no observation with X>0 ever again.
TrajectoryConstraint qnp_strong_constraint(const Pondp& p, const std::string& variable);
std::vector<TrajectoryConstraint> qnp_constraints(const Pondp& p, const std::vector<std::string>& variables);
/// Conjunction of LTL constraints at a common level; all() when empty.
TrajectoryConstraint conjoin(const std::vector<TrajectoryConstraint>& cs);
/// Variables V if c is the conjunction of qnp(X) for X in V over p, in that
/// order, as built by qnp_constraint and conjoin.
std::optional<std::vector<std::string>> qnp_constraint_variables(const TrajectoryConstraint& c, const Pondp& p);

TrajectoryConstraint fairness_constraint(const Pondp& p);
/// Fairness as a state-level formula: one implication per nondeterministic
/// (state, action) pair. Throws NotLtlExpressible past max_pairs such pairs.
ltl::Formula fairness_formula(const Pondp& p, std::size_t max_pairs = 4);

/// Formula of c over `level` letters of p; observation letters are expanded
/// to the states that show them. Throws NotLtlExpressible for explicit
/// constraints and for fairness on problems with too many nondeterministic pairs.
ltl::Formula constraint_formula(const TrajectoryConstraint& c, const Pondp& p, Level level,
                                std::size_t max_fair_pairs = 4);

/// Parses constraint text: `fairness`, `qnp(X)`, `qnp_strong(X)`, `all`, or
/// an LTL formula over the observation-action alphabet of p. Conjunctions of
/// builtins are written with `&&` between builtin terms, e.g. "qnp(X) && qnp(Y)".
TrajectoryConstraint parse_constraint(const std::string& text, const Pondp& p);

struct Implication {
  bool holds = true;
  std::optional<Lasso> witness;  // infinite trajectory of p in c but not in c_prime
};

/// Whether every infinite trajectory of p satisfying c satisfies c_prime.
Implication implies(const TrajectoryConstraint& c, const TrajectoryConstraint& c_prime, const Pondp& p,
                    std::size_t budget = kDefaultBudget);

}  // namespace genplan
