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
#include "genplan/nba.hpp"

namespace genplan::omega {

using ltl::Alphabet;
using ltl::Word;

/// Deterministic parity word automaton with priorities on states. A word is
/// accepted iff the largest priority among the states visited infinitely
/// often is even.
struct Dpw {
  Alphabet alphabet;
  int initial = 0;
  std::vector<std::vector<int>> delta;  // [state][letter], total
  std::vector<int> priority;

  std::size_t num_states() const { return delta.size(); }
  int step(int q, int letter) const { return delta[q][letter]; }
  /// Sorted distinct priorities in use.
  std::vector<int> priorities() const;
  std::size_t num_priorities() const { return priorities().size(); }
};

/// Throws InvalidInput unless delta is total and priorities are set.
void check_dpw(const Dpw& d);

/// Safra-tree determinization with compact age-ordered node names; the
/// result is minimized. Throws SizeBudgetExceeded past `budget` trees.
Dpw nba_to_dpw(const ltl::Nba& a, std::size_t budget = kDefaultBudget);

/// LTL -> NBA -> DPW.
Dpw ltl_to_dpw(const ltl::Formula& f, const Alphabet& sigma, std::size_t budget = kDefaultBudget);

bool dpw_accepts(const Dpw& d, const Word& w);

/// Reachable part, merged by Moore partition refinement, with priorities
/// compacted to a contiguous range starting at 0 or 1.
Dpw minimize(const Dpw& d);

/// Accepts exactly the words d rejects.
Dpw complement(const Dpw& d);

/// Re-expresses d over a larger alphabet; letters in `rename[l]` of the new
/// alphabet behave like letter l of d. Letters mapped to -1 lead to a
/// rejecting sink.
Dpw relabel(const Dpw& d, const Alphabet& target, const std::vector<int>& source_letter_of_target);

}  // namespace genplan::omega
