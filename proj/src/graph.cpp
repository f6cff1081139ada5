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

#include "genplan/graph.hpp"

#include <algorithm>
#include <deque>

namespace genplan::graph {

SccDecomposition strongly_connected_components(const Adjacency& adj, const std::vector<char>& keep) {
  const int n = static_cast<int>(adj.size());
  auto kept = [&](int v) { return keep.empty() || keep[v]; };
  SccDecomposition out;
  out.component.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  int counter = 0;
  struct Frame {
    int v;
    std::size_t edge;
  };
  std::vector<Frame> call;
  for (int root = 0; root < n; ++root) {
    if (!kept(root) || index[root] != -1) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      int v = f.v;
      if (f.edge < adj[v].size()) {
        int w = adj[v][f.edge++];
        if (!kept(w)) continue;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          out.component[w] = out.count;
        } while (w != v);
        ++out.count;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }
  return out;
}

bool on_cycle(const Adjacency& adj, const SccDecomposition& scc, int v) {
  const int c = scc.component[v];
  if (c < 0) return false;
  for (int w : adj[v]) {
    if (w == v) return true;
    if (scc.component[w] == c) return true;
  }
  return false;
}

std::vector<char> reachable(const Adjacency& adj, const std::vector<int>& sources, const std::vector<char>& keep) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> todo;
  for (int s : sources) {
    if ((keep.empty() || keep[s]) && !seen[s]) {
      seen[s] = 1;
      todo.push_back(s);
    }
  }
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    for (int w : adj[v]) {
      if ((keep.empty() || keep[w]) && !seen[w]) {
        seen[w] = 1;
        todo.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<int> shortest_path(const Adjacency& adj, const std::vector<int>& sources, int target,
                               const std::vector<char>& allowed) {
  std::vector<int> parent(adj.size(), -2);
  std::deque<int> queue;
  for (int s : sources) {
    if ((allowed.empty() || allowed[s]) && parent[s] == -2) {
      parent[s] = -1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == target) {
      std::vector<int> path;
      for (int x = v; x != -1; x = parent[x]) path.push_back(x);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int w : adj[v]) {
      if ((allowed.empty() || allowed[w]) && parent[w] == -2) {
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  return {};
}

}  // namespace genplan::graph
