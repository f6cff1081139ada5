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

#include "search.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "genplan/graph.hpp"

namespace genplan::detail {

namespace {

// BFS path from `from` to a node in `targets` (possibly `from` itself, via a
// cycle) using only nodes in `inside`; returns the nodes after `from` up to
// and including the target.
std::vector<int> bfs_path(const graph::Adjacency& adj, int from, const std::vector<char>& targets,
                          const std::vector<char>& inside) {
  std::vector<int> parent(adj.size(), -2);
  std::deque<int> queue{from};
  parent[from] = -1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[v]) {
      if (!inside[w]) continue;
      if (targets[w]) {
        std::vector<int> path{w};
        for (int x = v; x != from; x = parent[x]) path.push_back(x);
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (parent[w] != -2) continue;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  return {};
}

}  // namespace

Lasso walk_to_lasso(const SearchGraph& g, std::vector<int> prefix, std::vector<int> cycle) {
  // Rotate so that the loop starts at a state node.
  if (g.action[cycle[0]] >= 0) {
    prefix.push_back(cycle[0]);
    std::rotate(cycle.begin(), cycle.begin() + 1, cycle.end());
  }
  Lasso l;
  l.level = Level::State;
  for (int v : prefix) {
    if (g.action[v] < 0) l.states.push_back(g.state[v]);
    else l.actions.push_back(g.action[v]);
  }
  l.loop_start = l.states.size();
  for (int v : cycle) {
    if (g.action[v] < 0) l.states.push_back(g.state[v]);
    else l.actions.push_back(g.action[v]);
  }
  return l;
}

std::optional<Trajectory> path_to(const SearchGraph& g, int target, const std::vector<char>& allowed) {
  const std::size_t n = g.size();
  std::vector<int> parent(n, -2);
  std::deque<int> queue;
  for (int s : g.sources)
    if ((allowed.empty() || allowed[s]) && parent[s] == -2) {
      parent[s] = -1;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == target) {
      std::vector<int> nodes;
      for (int x = v; x != -1; x = parent[x]) nodes.push_back(x);
      std::reverse(nodes.begin(), nodes.end());
      Trajectory t;
      for (int x : nodes) {
        if (g.action[x] < 0) t.states.push_back(g.state[x]);
        else t.actions.push_back(g.action[x]);
      }
      return t;
    }
    for (int w : g.succ[v])
      if ((allowed.empty() || allowed[w]) && parent[w] == -2) {
        parent[w] = v;
        queue.push_back(w);
      }
  }
  return std::nullopt;
}

std::optional<Lasso> find_lasso(const SearchGraph& g, const Pondp& p, const LassoQuery& q) {
  const int n = static_cast<int>(g.size());
  std::vector<char> allowed = q.allowed.empty() ? std::vector<char>(n, 1) : q.allowed;
  graph::Adjacency adj(g.succ.begin(), g.succ.end());
  std::vector<int> sources;
  for (int s : g.sources)
    if (allowed[s]) sources.push_back(s);
  const std::vector<char> reach = graph::reachable(adj, sources, allowed);

  std::vector<int> levels;
  if (q.parity) {
    for (int v = 0; v < n; ++v)
      if (reach[v] && g.priority[v] % 2 == 0) levels.push_back(g.priority[v]);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    std::reverse(levels.begin(), levels.end());
  } else {
    levels.push_back(-1);
  }

  for (int c : levels) {
    std::vector<char> keep(n, 0);
    for (int v = 0; v < n; ++v)
      keep[v] = reach[v] && (q.cycle_allowed.empty() || q.cycle_allowed[v]) && (c < 0 || g.priority[v] <= c);
    for (;;) {
      graph::SccDecomposition scc = graph::strongly_connected_components(adj, keep);
      std::vector<std::vector<int>> members(scc.count);
      for (int v = 0; v < n; ++v)
        if (keep[v]) members[scc.component[v]].push_back(v);
      bool changed = false;
      // Components are visited in increasing order of their smallest node for
      // deterministic witnesses.
      std::vector<int> order(scc.count);
      for (int i = 0; i < scc.count; ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](int a, int b) { return members[a][0] < members[b][0]; });
      for (int comp_id : order) {
        const auto& comp = members[comp_id];
        if (comp.size() == 1 && !graph::on_cycle(adj, scc, comp[0])) continue;
        int anchor = -1;
        for (int v : comp)
          if (c < 0 ? g.action[v] < 0 : g.priority[v] == c) {
            anchor = v;
            break;
          }
        if (anchor < 0) continue;
        if (q.fair) {
          // Outcomes of each (state, action) that stay inside the component.
          std::map<std::pair<int, int>, std::set<int>> outcomes;
          for (int v : comp) {
            if (g.action[v] < 0) continue;
            auto& out = outcomes[{g.state[v], g.action[v]}];
            for (int w : g.succ[v])
              if (keep[w] && scc.component[w] == comp_id) out.insert(g.state[w]);
          }
          std::set<std::pair<int, int>> unfair;
          for (const auto& [sa, out] : outcomes) {
            const auto& all = p.succ[sa.first].at(sa.second);
            if (out.size() != all.size()) unfair.insert(sa);
          }
          if (!unfair.empty()) {
            for (int v : comp)
              if (g.action[v] >= 0 && unfair.count({g.state[v], g.action[v]})) keep[v] = 0;
            changed = true;
            continue;
          }
        }
        // Witness: reach the anchor, then return to it. Fair witnesses cover
        // every internal edge so that all outcomes recur.
        std::vector<char> inside(n, 0);
        for (int v : comp) inside[v] = 1;
        std::vector<char> target(n, 0);
        target[anchor] = 1;
        std::vector<int> prefix_nodes;
        {
          std::vector<int> parent(n, -2);
          std::deque<int> queue;
          for (int s : sources)
            if (parent[s] == -2) {
              parent[s] = -1;
              queue.push_back(s);
            }
          while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            if (v == anchor) break;
            for (int w : g.succ[v])
              if (reach[w] && parent[w] == -2) {
                parent[w] = v;
                queue.push_back(w);
              }
          }
          for (int x = anchor; x != -1; x = parent[x]) prefix_nodes.push_back(x);
          std::reverse(prefix_nodes.begin(), prefix_nodes.end());
          prefix_nodes.pop_back();  // the anchor starts the cycle
        }
        std::vector<int> cycle{anchor};
        if (!q.fair) {
          auto back = bfs_path(adj, anchor, target, inside);
          cycle.insert(cycle.end(), back.begin(), back.end());
        } else {
          int cur = anchor;
          std::set<std::pair<int, int>> covered;
          auto walk = [&](const std::vector<int>& path) {
            for (int x : path) {
              covered.emplace(cur, x);
              cycle.push_back(x);
              cur = x;
            }
          };
          for (int u : comp)
            for (int w : g.succ[u]) {
              if (!inside[w] || covered.count({u, w})) continue;
              if (cur != u) {
                std::vector<char> tu(n, 0);
                tu[u] = 1;
                walk(bfs_path(adj, cur, tu, inside));
              }
              walk({w});
            }
          if (cur != anchor) walk(bfs_path(adj, cur, target, inside));
        }
        cycle.pop_back();  // closing occurrence of the anchor
        return walk_to_lasso(g, std::move(prefix_nodes), std::move(cycle));
      }
      if (!changed) break;
    }
  }
  return std::nullopt;
}

}  // namespace genplan::detail
