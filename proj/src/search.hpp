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

// Lasso search over explicit products of a problem with policy memory
// and/or a parity automaton. Walks alternate state nodes and action nodes.

#pragma once

#include <optional>
#include <vector>

#include "genplan/model.hpp"

namespace genplan::detail {

struct SearchGraph {
  std::vector<int> state;     // problem state of the node
  std::vector<int> action;    // -1 for state nodes
  std::vector<int> priority;  // max-parity priority, 0 without an automaton
  std::vector<std::vector<int>> succ;
  std::vector<int> sources;  // state nodes

  int add(int s, int a, int prio) {
    state.push_back(s);
    action.push_back(a);
    priority.push_back(prio);
    succ.emplace_back();
    return static_cast<int>(state.size()) - 1;
  }
  std::size_t size() const { return state.size(); }
};

struct LassoQuery {
  bool fair = false;            // cycle must be fair in the problem
  bool parity = false;          // max priority on the cycle must be even
  std::vector<char> allowed;    // nodes the lasso may visit (empty: all)
  std::vector<char> cycle_allowed;  // further restricts the cycle (empty: no restriction)
};

/// A lasso through allowed nodes reachable from the sources, or nullopt.
std::optional<Lasso> find_lasso(const SearchGraph& g, const Pondp& p, const LassoQuery& q);

/// Shortest walk from a source to `target` through allowed nodes, as a
/// finite trajectory ending in the state of `target` (a state node).
std::optional<Trajectory> path_to(const SearchGraph& g, int target, const std::vector<char>& allowed = {});

/// Converts a closed walk representation into a lasso: `prefix` leads from a
/// source to cycle[0], and cycle returns to cycle[0].
Lasso walk_to_lasso(const SearchGraph& g, std::vector<int> prefix, std::vector<int> cycle);

}  // namespace genplan::detail
