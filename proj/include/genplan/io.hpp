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

#include <string>

#include <json.hpp>

#include "genplan/dpw.hpp"
#include "genplan/model.hpp"
#include "genplan/parity_game.hpp"

namespace genplan::io {

using Json = nlohmann::ordered_json;

// Problems: {states, init, observations, actions, goal_states, obs, avail,
// succ, class?, labels?, metadata?} with succ keyed by "action|state".
Json problem_to_json(const Pondp& p);
Pondp problem_from_json(const Json& j);  // throws InvalidInput

// Policies: {memory_states, initial, observations, actions, update, output}
// with update entries [memory, observation, memory] and output entries
// [memory, observation, action]. Unlisted updates go to the first memory
// state.
Json policy_to_json(const Policy& mu);
Policy policy_from_json(const Json& j);

Json dpw_to_json(const omega::Dpw& d);
omega::Dpw dpw_from_json(const Json& j);

Json trajectory_to_json(const Pondp& p, const Trajectory& t);
Json lasso_to_json(const Pondp& p, const Lasso& l);
Json verdict_to_json(const Pondp& p, const Verdict& v);

std::string read_file(const std::string& path);  // throws InvalidInput
void write_file(const std::string& path, const std::string& text);
Json parse_json(const std::string& text);  // throws ParseError

std::string problem_to_dot(const Pondp& p);
std::string lasso_to_dot(const Pondp& p, const Lasso& l);
std::string dpw_to_dot(const omega::Dpw& d);
std::string game_to_dot(const omega::ParityGame& g);

}  // namespace genplan::io
