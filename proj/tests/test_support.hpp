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

// Random generators and brute-force oracles shared by the unit and
// acceptance tests.

#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "genplan/dpw.hpp"
#include "genplan/ltl.hpp"
#include "genplan/model.hpp"
#include "genplan/parity_game.hpp"

namespace genplan::testing {

inline ltl::Formula random_formula(std::mt19937_64& rng, const ltl::Alphabet& sigma, int depth) {
  using ltl::Formula;
  std::uniform_int_distribution<int> pick_letter(0, static_cast<int>(sigma.size()) - 1);
  if (depth == 0 || std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
    int r = std::uniform_int_distribution<int>(0, 9)(rng);
    if (r == 0) return Formula::truth();
    if (r == 1) return Formula::falsity();
    return Formula::letter(sigma.name(pick_letter(rng)));
  }
  auto sub = [&] { return random_formula(rng, sigma, depth - 1); };
  switch (std::uniform_int_distribution<int>(0, 9)(rng)) {
    case 0: return !sub();
    case 1: return sub() && sub();
    case 2: return sub() || sub();
    case 3: return sub().implies(sub());
    case 4: return sub().next();
    case 5: return sub().until(sub());
    case 6: return sub().release(sub());
    case 7: return sub().eventually();
    case 8: return sub().always();
    default: return sub().always().eventually();
  }
}

inline ltl::Word random_word(std::mt19937_64& rng, std::size_t alphabet_size, std::size_t max_prefix,
                             std::size_t max_cycle) {
  std::size_t prefix = std::uniform_int_distribution<std::size_t>(0, max_prefix)(rng);
  std::size_t cycle = std::uniform_int_distribution<std::size_t>(1, max_cycle)(rng);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(alphabet_size) - 1);
  ltl::Word w;
  for (std::size_t i = 0; i < prefix + cycle; ++i) w.letters.push_back(letter(rng));
  w.loop_start = prefix;
  return w;
}

/// Calls visit on every word with |prefix| <= max_prefix and 1 <= |cycle| <= max_cycle.
inline void for_each_word(std::size_t alphabet_size, std::size_t max_prefix, std::size_t max_cycle,
                          const std::function<void(const ltl::Word&)>& visit) {
  for (std::size_t total = 1; total <= max_prefix + max_cycle; ++total) {
    ltl::Word w;
    w.letters.assign(total, 0);
    while (true) {
      for (std::size_t prefix = 0; prefix <= max_prefix && prefix < total; ++prefix) {
        if (total - prefix > max_cycle) continue;
        w.loop_start = prefix;
        visit(w);
      }
      std::size_t i = 0;
      while (i < total && w.letters[i] == static_cast<int>(alphabet_size) - 1) w.letters[i++] = 0;
      if (i == total) break;
      ++w.letters[i];
    }
  }
}

inline omega::ParityGame random_game(std::mt19937_64& rng, int max_nodes, int max_priority) {
  omega::ParityGame g;
  int n = std::uniform_int_distribution<int>(1, max_nodes)(rng);
  for (int v = 0; v < n; ++v)
    g.add_node(std::uniform_int_distribution<int>(0, 1)(rng),
               std::uniform_int_distribution<int>(0, max_priority - 1)(rng));
  for (int v = 0; v < n; ++v) {
    int degree = std::uniform_int_distribution<int>(1, std::min(3, n))(rng);
    std::vector<int> targets(n);
    for (int i = 0; i < n; ++i) targets[i] = i;
    std::shuffle(targets.begin(), targets.end(), rng);
    g.succ[v].assign(targets.begin(), targets.begin() + degree);
  }
  g.initial = {0};
  return g;
}

/// Winner per node by enumerating every positional strategy of the
/// controller against every positional strategy of the environment.
inline std::vector<int> brute_force_winners(const omega::ParityGame& g) {
  const int n = static_cast<int>(g.size());
  std::vector<int> controller_nodes, environment_nodes;
  for (int v = 0; v < n; ++v) (g.owner[v] == omega::kController ? controller_nodes : environment_nodes).push_back(v);

  auto for_each_choice = [&](const std::vector<int>& nodes, std::vector<int>& choice, auto&& body) {
    std::vector<std::size_t> idx(nodes.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < nodes.size(); ++i) choice[nodes[i]] = g.succ[nodes[i]][idx[i]];
      if (!body()) return;
      std::size_t i = 0;
      while (i < nodes.size() && idx[i] + 1 == g.succ[nodes[i]].size()) idx[i++] = 0;
      if (i == nodes.size()) return;
      ++idx[i];
    }
  };
  auto play_even = [&](const std::vector<int>& choice, int start) {
    std::vector<int> seen(n, -1), order;
    int v = start;
    while (seen[v] < 0) {
      seen[v] = static_cast<int>(order.size());
      order.push_back(v);
      v = choice[v];
    }
    int best = -1;
    for (std::size_t i = seen[v]; i < order.size(); ++i) best = std::max(best, g.priority[order[i]]);
    return best % 2 == 0;
  };

  std::vector<int> winner(n, omega::kEnvironment);
  for (int start = 0; start < n; ++start) {
    std::vector<int> choice(n, -1);
    bool controller_wins = false;
    for_each_choice(controller_nodes, choice, [&] {
      bool all_even = true;
      for_each_choice(environment_nodes, choice, [&] {
        if (!play_even(choice, start)) all_even = false;
        return all_even;
      });
      if (all_even) controller_wins = true;
      return !controller_wins;
    });
    winner[start] = controller_wins ? omega::kController : omega::kEnvironment;
  }
  return winner;
}

// Two-state abstraction of a counter: Inc makes X positive, Dec may or may not
// reach zero.
inline Pondp counter_projection() {
  Pondp p;
  p.states = {"X>0", "X=0"};
  p.observations = p.states;
  p.actions = {"Inc", "Dec"};
  p.init = {0};
  p.goal = {0, 1};
  p.obs = {0, 1};
  p.avail = {{0, 1}, {0, 1}};
  p.succ = {{{0, {0}}, {1, {0, 1}}}, {{0, {0}}, {1, {1}}}};
  p.labels = {{"X", {"X=0"}, {"Inc"}, {"Dec"}}};
  return p;
}

// Concrete counter with values 0..bound, Inc capped at bound.
inline Pondp counter_instance(int x0, int bound) {
  Pondp p;
  p.observations = {"X>0", "X=0"};
  p.actions = {"Inc", "Dec"};
  for (int x = 0; x <= bound; ++x) {
    p.states.push_back("X=" + std::to_string(x));
    p.goal.push_back(x == 0);
    p.obs.push_back(x == 0 ? 1 : 0);
    p.avail.push_back({0, 1});
    p.succ.push_back({{0, {std::min(x + 1, bound)}}, {1, {std::max(x - 1, 0)}}});
  }
  p.init = {x0};
  p.labels = {{"X", {"X=0"}, {"Inc"}, {"Dec"}}};
  return p;
}

inline Policy dec_when_positive() { return Policy::memoryless({"X>0", "X=0"}, {"Inc", "Dec"}, {{"X>0", "Dec"}}); }

// Five-state automaton for (qnp(X) -> F X=0) over X>0, X=0, Inc, Dec, written
// out by hand: any X=0 leads to an accepting sink, otherwise the priority
// records the last letter (X>0: 1, Dec: 2, Inc: 3).
inline omega::Dpw hand_dpw() {
  omega::Dpw d;
  d.alphabet = ltl::Alphabet({"X>0", "X=0", "Inc", "Dec"});
  d.initial = 0;
  const std::vector<int> row{1, 4, 2, 3};
  d.delta = {row, row, row, row, {4, 4, 4, 4}};
  d.priority = {1, 1, 3, 2, 2};
  return d;
}

}  // namespace genplan::testing
