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

#include <cstddef>
#include <vector>

namespace genplan::graph {

using Adjacency = std::vector<std::vector<int>>;

struct SccDecomposition {
  std::vector<int> component;  // node -> component id, -1 if filtered out
  int count = 0;
};

/// Tarjan's algorithm restricted to nodes with keep[v] (all nodes if keep is
/// empty). Edges to filtered-out nodes are ignored.
SccDecomposition strongly_connected_components(const Adjacency& adj, const std::vector<char>& keep = {});

/// True if v lies on a cycle inside its own component.
bool on_cycle(const Adjacency& adj, const SccDecomposition& scc, int v);

/// Nodes reachable from the sources through nodes with keep[v] (all if empty).
std::vector<char> reachable(const Adjacency& adj, const std::vector<int>& sources, const std::vector<char>& keep = {});

/// Shortest path from any source to target (inclusive) through allowed nodes,
/// empty if none.
std::vector<int> shortest_path(const Adjacency& adj, const std::vector<int>& sources, int target,
                               const std::vector<char>& allowed = {});

}  // namespace genplan::graph
