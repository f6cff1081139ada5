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

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "genplan/model.hpp"

namespace genplan {

/// One member transition witnessing an abstract transition.
struct Provenance {
  std::size_t member = 0;
  std::string from;
  std::string to;
};

struct ProjectionResult {
  Fondp fondp;
  std::vector<Diagnostic> diagnostics;
  std::map<std::tuple<std::string, std::string, std::string>, Provenance> provenance;  // (obs, action, obs')
};

/// Observation projection of an explicit class: states are the class
/// observations, transitions are those witnessed by some member. An action
/// allowed at an observation but never witnessed there is dropped with a
/// diagnostic. Throws InvalidClass if the class fails validation.
ProjectionResult observation_projection(const PondpClass& cls);

/// Observation image of a trajectory of p. With a projection given, the
/// result indexes its states by observation name; otherwise it indexes the
/// observations of p. Throws NotATrajectory.
Trajectory lift_trajectory(const Pondp& p, const Trajectory& t, const Pondp* projection = nullptr);
Lasso lift_trajectory(const Pondp& p, const Lasso& l, const Pondp* projection = nullptr);

/// The sub-problem reachable from the initial states (observations kept).
Pondp restrict_to_reachable(const Pondp& p);

/// Same states, actions, initial states, goals and transitions, matched by name.
bool same_structure(const Pondp& a, const Pondp& b);

}  // namespace genplan
