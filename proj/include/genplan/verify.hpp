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

#include "genplan/constraints.hpp"
#include "genplan/model.hpp"

namespace genplan {

struct SolutionMode {
  enum class Kind { Strong, Fair, Under };
  Kind kind = Kind::Strong;
  TrajectoryConstraint constraint;  // Under

  static SolutionMode strong() { return {Kind::Strong, {}}; }
  static SolutionMode fair() { return {Kind::Fair, {}}; }
  static SolutionMode under(TrajectoryConstraint c) { return {Kind::Under, std::move(c)}; }
};

struct CheckOptions {
  std::size_t budget = kDefaultBudget;
  // Explicit constraints are checked on lassos whose product walk has at
  // most this many steps.
  std::size_t explicit_max_length = 12;
};

/// Analyses the product of p with the policy's memory (and, for LTL
/// constraints, the constraint's DPW). Negative verdicts carry a replayable
/// counterexample that is a mu-trajectory of p.
Verdict check_solution(const Pondp& p, const Policy& mu, const SolutionMode& mode, const CheckOptions& opts = {});

}  // namespace genplan
