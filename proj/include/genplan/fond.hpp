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

#include "genplan/model.hpp"
#include "genplan/verify.hpp"

namespace genplan {

/// Strong-cyclic planning by fixpoint elimination. Returns a memoryless policy
/// over the states of a fully observable problem, defined on the non-goal
/// states it reaches, or nullopt when some initial state cannot be kept.
/// Among usable actions the lowest-indexed one is chosen.
std::optional<Policy> strong_cyclic_plan(const Fondp& p);

Verdict verify_strong_cyclic(const Fondp& p, const Policy& mu);

}  // namespace genplan
