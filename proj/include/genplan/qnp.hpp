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
#include <string>
#include <vector>

#include "genplan/model.hpp"

namespace genplan::qnp {

/// Conjunction of literals over fluents and the atoms X=0 / X>0.
struct Condition {
  std::map<std::string, bool> fluents;  // fluent -> required truth
  std::map<std::string, bool> zero;     // variable -> true for X=0, false for X>0

  bool empty() const { return fluents.empty() && zero.empty(); }
  bool operator==(const Condition&) const = default;
};

enum class Effect { Inc, Dec };

struct Action {
  std::string name;
  Condition pre;
  std::vector<std::string> add;
  std::vector<std::string> del;
  std::map<std::string, Effect> effects;

  bool operator==(const Action&) const = default;
};

/// Possible initial values of a variable: a finite set or a closed interval.
struct InitValues {
  bool interval = false;
  std::vector<double> values;  // finite set
  double lo = 0, hi = 0;       // interval

  bool zero_possible() const;
  bool positive_possible() const;
  bool contains(double v) const;
  bool operator==(const InitValues&) const = default;
};

/// Concrete meaning of Inc/Dec for one variable. Values live on a grid of
/// the given width. Unit: +-1. Steps: every grid step in [lo, hi] is a
/// possible change (nondeterministic). TwoValued: values {0,1}, Dec gives
/// {0,x}, Inc gives 1.
struct Semantics {
  enum class Mode { Unit, Steps, TwoValued };
  Mode mode = Mode::Unit;
  double lo = 1, hi = 1;
  double grid = 1;

  bool operator==(const Semantics&) const = default;
};

struct Qnp {
  std::vector<std::string> fluents;
  std::map<std::string, bool> init;  // unspecified fluents start false
  std::vector<std::string> variables;
  std::map<std::string, InitValues> init_values;
  std::vector<Action> actions;
  Condition goal;
  std::map<std::string, Semantics> semantics;  // missing: Unit
  std::vector<std::string> diagnostics;        // closure-eligibility notes

  const Action* find_action(const std::string& name) const;
  const Semantics& semantics_of(const std::string& variable) const;

  bool operator==(const Qnp&) const = default;
};

/// Parses the text format:
///   fluents p q
///   vars X Y
///   init p !q
///   init_values X in {20}        init_values Y in [15, 30]
///   action a pre X>0 p add q del p inc Y dec X
///   goal X=0 Y=0
///   semantics X unit             semantics Y steps [1, 3] grid 0.5
/// Lines starting with # are comments; an action's clauses may span lines.
/// Throws ParseError or SemanticError.
Qnp parse(const std::string& text);
std::string to_text(const Qnp& q);
void validate(Qnp& q);  // throws SemanticError, refreshes diagnostics

/// Observation name of a boolean valuation, e.g. "p,!q,X=0,Y>0".
std::string observation_name(const Qnp& q, const std::vector<char>& fluents, const std::vector<char>& positive);

struct Instance {
  Pondp problem;
  bool capped = false;  // some increment was cut at the bound
};

/// Concrete problem for one choice of initial values (real numbers, on
/// each variable's grid). States reachable from that choice only; the
/// observation set covers every boolean valuation. Throws OutOfRange or
/// BoundTooSmall.
Instance instantiate(const Qnp& q, const std::map<std::string, double>& values, double bound);

/// Every variable over {0,1} with Dec -> {0,x} and Inc -> 1; initial values
/// follow the zero/positive possibility flags.
Pondp two_valued_instance(const Qnp& q);

/// Class of instances for the given initial-value choices.
PondpClass instance_class(const Qnp& q, const std::vector<std::map<std::string, double>>& choices, double bound);

/// Boolean abstraction: Inc(X) makes X>0, Dec(X) at X>0 leads to X>0 or X=0.
/// States are the reachable boolean valuations; observations equal states.
Fondp syntactic_projection(const Qnp& q);

bool similar(const Qnp& a, const Qnp& b);

/// Adds a commitment fluent q_X per variable with actions set(X) and
/// unset(X); Dec(X) actions require q_X, Inc(X) actions require !q_X.
/// Throws NotClosureEligible.
Qnp close_qnp(const Qnp& q);

/// Whether a condition holds in a boolean valuation.
bool holds(const Qnp& q, const Condition& c, const std::vector<char>& fluents, const std::vector<char>& positive);

struct NamedRun {
  RunKind kind = RunKind::Finite;
  std::vector<std::string> states;
  std::vector<std::string> actions;
  std::size_t loop_start = 0;  // Lasso only
  bool goal_reached = false;
};

/// Simulates a policy on the unbounded concrete problem (no truncation of
/// values) from the given initial values.
NamedRun simulate(const Qnp& q, const std::map<std::string, double>& values, const Policy& mu, Resolver& resolver,
                  const RunOptions& opts = {});

/// Draws initial values from each variable's descriptor on its grid.
std::map<std::string, double> sample_initial_values(const Qnp& q, std::uint64_t seed);

}  // namespace genplan::qnp
