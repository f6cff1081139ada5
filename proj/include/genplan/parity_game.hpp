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

namespace genplan::omega {

inline constexpr int kController = 0;   // wins on even max priority
inline constexpr int kEnvironment = 1;  // wins on odd max priority

struct ParityGame {
  std::vector<int> owner;
  std::vector<int> priority;
  std::vector<std::vector<int>> succ;  // edge order is the tie-breaking order
  std::vector<int> initial;
  std::vector<std::string> label;  // optional provenance per node

  std::size_t size() const { return owner.size(); }
  int add_node(int who, int prio, std::string name = {});
};

/// Throws InvalidInput if a node lacks successors or an edge is out of range.
void check_game(const ParityGame& g);

struct ParitySolution {
  std::vector<int> winner;    // per node: kController or kEnvironment
  std::vector<int> strategy;  // per node owned by its winner: chosen successor; -1 otherwise
};

/// Zielonka's recursive algorithm (max-parity). Strategies are positional;
/// where several moves are winning the first one in edge order is kept.
ParitySolution solve_parity(const ParityGame& g);

/// Checks that player's strategy keeps plays inside its region and that
/// every cycle of the strategy-restricted region has a winning max priority.
bool verify_strategy(const ParityGame& g, const ParitySolution& s, int player);

}  // namespace genplan::omega
