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

#include "genplan/parity_game.hpp"

#include <algorithm>
#include <array>
#include <deque>

#include "genplan/error.hpp"
#include "genplan/graph.hpp"

namespace genplan::omega {

int ParityGame::add_node(int who, int prio, std::string name) {
  owner.push_back(who);
  priority.push_back(prio);
  succ.emplace_back();
  label.push_back(std::move(name));
  return static_cast<int>(owner.size()) - 1;
}

void check_game(const ParityGame& g) {
  const std::size_t n = g.size();
  if (g.priority.size() != n || g.succ.size() != n) throw Error(Errc::InvalidInput, "parity game tables disagree in size");
  for (std::size_t v = 0; v < n; ++v) {
    if (g.succ[v].empty()) throw Error(Errc::InvalidInput, "node " + std::to_string(v) + " has no successor");
    for (int w : g.succ[v])
      if (w < 0 || static_cast<std::size_t>(w) >= n) throw Error(Errc::InvalidInput, "edge target out of range");
    if (g.owner[v] != kController && g.owner[v] != kEnvironment) throw Error(Errc::InvalidInput, "bad owner");
  }
}

namespace {

class Zielonka {
 public:
  explicit Zielonka(const ParityGame& g) : g_(g), pred_(g.size()), strategy_(g.size(), -1) {
    for (std::size_t v = 0; v < g.size(); ++v)
      for (int w : g.succ[v]) pred_[w].push_back(static_cast<int>(v));
  }

  ParitySolution run() {
    std::vector<char> all(g_.size(), 1);
    auto won = solve(all);
    ParitySolution s;
    s.winner.assign(g_.size(), kController);
    for (std::size_t v = 0; v < g_.size(); ++v)
      if (won[kEnvironment][v]) s.winner[v] = kEnvironment;
    s.strategy = strategy_;
    for (std::size_t v = 0; v < g_.size(); ++v)
      if (g_.owner[v] != s.winner[v]) s.strategy[v] = -1;
    return s;
  }

 private:
  using Set = std::vector<char>;

  int first_succ_in(int v, const Set& target) const {
    for (int w : g_.succ[v])
      if (target[w]) return w;
    return -1;
  }

  // Attractor of `target` for `player` inside `arena`; sets the player's
  // strategy on attracted nodes.
  Set attractor(const Set& arena, const Set& target, int player) {
    Set attr = target;
    std::vector<int> count(g_.size(), 0);
    std::deque<int> queue;
    for (std::size_t v = 0; v < g_.size(); ++v) {
      if (!arena[v]) continue;
      if (attr[v]) queue.push_back(static_cast<int>(v));
      for (int w : g_.succ[v])
        if (arena[w]) ++count[v];
    }
    while (!queue.empty()) {
      int w = queue.front();
      queue.pop_front();
      for (int v : pred_[w]) {
        if (!arena[v] || attr[v]) continue;
        if (g_.owner[v] == player) {
          strategy_[v] = first_succ_in(v, attr);
          attr[v] = 1;
          queue.push_back(v);
        } else if (--count[v] == 0) {
          attr[v] = 1;
          queue.push_back(v);
        }
      }
    }
    return attr;
  }

  std::array<Set, 2> solve(const Set& arena) {
    std::array<Set, 2> won{Set(g_.size(), 0), Set(g_.size(), 0)};
    int top = -1;
    for (std::size_t v = 0; v < g_.size(); ++v)
      if (arena[v]) top = std::max(top, g_.priority[v]);
    if (top < 0) return won;
    const int i = top % 2;
    Set top_nodes(g_.size(), 0);
    for (std::size_t v = 0; v < g_.size(); ++v)
      if (arena[v] && g_.priority[v] == top) top_nodes[v] = 1;
    Set a = attractor(arena, top_nodes, i);
    Set rest(g_.size(), 0);
    for (std::size_t v = 0; v < g_.size(); ++v) rest[v] = arena[v] && !a[v];
    auto sub = solve(rest);
    bool opponent_empty = std::none_of(sub[1 - i].begin(), sub[1 - i].end(), [](char c) { return c; });
    if (opponent_empty) {
      won[i] = arena;
      for (std::size_t v = 0; v < g_.size(); ++v)
        if (top_nodes[v] && g_.owner[v] == i) strategy_[v] = first_succ_in(static_cast<int>(v), arena);
      return won;
    }
    Set b = attractor(arena, sub[1 - i], 1 - i);
    Set rest2(g_.size(), 0);
    for (std::size_t v = 0; v < g_.size(); ++v) rest2[v] = arena[v] && !b[v];
    auto sub2 = solve(rest2);
    won[i] = sub2[i];
    won[1 - i] = sub2[1 - i];
    for (std::size_t v = 0; v < g_.size(); ++v)
      if (b[v]) won[1 - i][v] = 1;
    return won;
  }

  const ParityGame& g_;
  std::vector<std::vector<int>> pred_;
  std::vector<int> strategy_;
};

}  // namespace

ParitySolution solve_parity(const ParityGame& g) {
  check_game(g);
  return Zielonka(g).run();
}

bool verify_strategy(const ParityGame& g, const ParitySolution& s, int player) {
  const int n = static_cast<int>(g.size());
  std::vector<char> region(n, 0);
  for (int v = 0; v < n; ++v) region[v] = s.winner[v] == player;
  graph::Adjacency adj(n);
  for (int v = 0; v < n; ++v) {
    if (!region[v]) continue;
    if (g.owner[v] == player) {
      int w = s.strategy[v];
      if (w < 0 || std::find(g.succ[v].begin(), g.succ[v].end(), w) == g.succ[v].end() || !region[w]) return false;
      adj[v].push_back(w);
    } else {
      for (int w : g.succ[v]) {
        if (!region[w]) return false;
        adj[v].push_back(w);
      }
    }
  }
  std::vector<int> bad_priorities;
  for (int v = 0; v < n; ++v)
    if (region[v] && g.priority[v] % 2 != player) bad_priorities.push_back(g.priority[v]);
  std::sort(bad_priorities.begin(), bad_priorities.end());
  bad_priorities.erase(std::unique(bad_priorities.begin(), bad_priorities.end()), bad_priorities.end());
  for (int c : bad_priorities) {
    std::vector<char> keep(n, 0);
    for (int v = 0; v < n; ++v) keep[v] = region[v] && g.priority[v] <= c;
    auto scc = graph::strongly_connected_components(adj, keep);
    for (int v = 0; v < n; ++v)
      if (keep[v] && g.priority[v] == c && graph::on_cycle(adj, scc, v)) return false;
  }
  return true;
}

}  // namespace genplan::omega
