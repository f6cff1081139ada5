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
#include <vector>

#include "genplan/error.hpp"
#include "genplan/ltl.hpp"

namespace genplan::ltl {

/// Nondeterministic Büchi automaton with state-based acceptance. A run
/// q0 q1 ... on a word reads letter w[i] in state q_i and moves to
/// q_{i+1} in delta[q_i][w[i]].
struct Nba {
  Alphabet alphabet;
  std::vector<std::vector<std::vector<int>>> delta;  // [state][letter] -> sorted successors
  std::vector<int> initial;
  std::vector<char> accepting;

  std::size_t num_states() const { return delta.size(); }
  std::size_t num_transitions() const;
};

/// Tableau translation (node expansion over the closure of the negation
/// normal form), generalized Büchi acceptance per until-obligation, then
/// counter degeneralization and reduction. Throws SizeBudgetExceeded when the
/// tableau grows past `budget` nodes.
Nba ltl_to_nba(const Formula& f, const Alphabet& sigma, std::size_t budget = kDefaultBudget);

/// Removes unreachable and empty-language states, then merges bisimilar states.
Nba reduce(const Nba& a);

/// Lasso membership: accepting cycle search in the product of the word's
/// one-loop automaton with the NBA.
bool nba_accepts(const Nba& a, const Word& w);

}  // namespace genplan::ltl
