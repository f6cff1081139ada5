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

#include "genplan/fond.hpp"

#include <deque>
#include <limits>

namespace genplan {

std::optional<Policy> strong_cyclic_plan(const Fondp& p) {
  if (!is_fully_observable(p)) throw Error(Errc::InvalidInput, "strong cyclic planning needs a fully observable problem");
  const std::size_t n = p.num_states();
  constexpr int kUnset = std::numeric_limits<int>::max();
  std::vector<char> keep(n, 1);
  std::vector<int> layer(n, kUnset), choice(n, -1);

  for (;;) {
    auto closed = [&](int s, int a) {
      for (int t : p.succ[s].at(a))
        if (!keep[t]) return false;
      return true;
    };
    std::fill(layer.begin(), layer.end(), kUnset);
    std::fill(choice.begin(), choice.end(), -1);
    for (std::size_t s = 0; s < n; ++s)
      if (keep[s] && p.goal[s]) layer[s] = 0;
    // Layered backward sweep: a state joins layer d when one of its closed
    // actions reaches layer < d.
    for (int d = 1;; ++d) {
      std::vector<std::pair<int, int>> added;
      for (std::size_t s = 0; s < n; ++s) {
        if (!keep[s] || layer[s] != kUnset) continue;
        for (int a : p.avail[s]) {
          if (!closed(static_cast<int>(s), a)) continue;
          bool progress = false;
          for (int t : p.succ[s].at(a)) progress = progress || layer[t] < d;
          if (progress) {
            added.emplace_back(static_cast<int>(s), a);
            break;
          }
        }
      }
      if (added.empty()) break;
      for (auto [s, a] : added) {
        layer[s] = d;
        choice[s] = a;
      }
    }
    bool changed = false;
    for (std::size_t s = 0; s < n; ++s)
      if (keep[s] && layer[s] == kUnset) {
        keep[s] = 0;
        changed = true;
      }
    if (!changed) break;
  }

  for (int s : p.init)
    if (!keep[s]) return std::nullopt;

  std::map<std::string, std::string> mapping;
  std::vector<char> seen(n, 0);
  std::deque<int> queue;
  for (int s : p.init)
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    if (p.goal[s]) continue;
    mapping[p.observations[p.obs[s]]] = p.actions[choice[s]];
    for (int t : p.succ[s].at(choice[s]))
      if (!seen[t]) {
        seen[t] = 1;
        queue.push_back(t);
      }
  }
  return Policy::memoryless(p.observations, p.actions, mapping);
}

Verdict verify_strong_cyclic(const Fondp& p, const Policy& mu) { return check_solution(p, mu, SolutionMode::fair()); }

}  // namespace genplan
