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

#include "genplan/dpw.hpp"

#include "genplan/graph.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

namespace genplan::omega {

std::vector<int> Dpw::priorities() const {
  std::vector<int> p(priority.begin(), priority.end());
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  return p;
}

void check_dpw(const Dpw& d) {
  if (d.delta.empty()) throw Error(Errc::InvalidInput, "DPW has no states");
  if (d.priority.size() != d.delta.size()) throw Error(Errc::InvalidInput, "DPW priority table size mismatch");
  if (d.initial < 0 || static_cast<std::size_t>(d.initial) >= d.delta.size())
    throw Error(Errc::InvalidInput, "DPW initial state out of range");
  for (const auto& row : d.delta) {
    if (row.size() != d.alphabet.size()) throw Error(Errc::InvalidInput, "DPW transition function is not total");
    for (int t : row)
      if (t < 0 || static_cast<std::size_t>(t) >= d.delta.size())
        throw Error(Errc::InvalidInput, "DPW transition target out of range");
  }
  for (int p : d.priority)
    if (p < 0) throw Error(Errc::InvalidInput, "negative priority");
}

namespace {

// Safra tree with nodes named 0..k-1. Names order nodes by age: a parent is
// older than its children and an older sibling has a smaller name.
struct SafraTree {
  std::vector<int> parent;              // parent[0] == -1 for the root
  std::vector<std::vector<int>> label;  // sorted NBA states

  bool operator==(const SafraTree&) const = default;
};

struct TreeHash {
  std::size_t operator()(const SafraTree& t) const {
    std::size_t h = t.parent.size();
    auto mix = [&](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (int p : t.parent) mix(static_cast<std::size_t>(p + 1));
    for (const auto& l : t.label) {
      mix(l.size());
      for (int q : l) mix(static_cast<std::size_t>(q));
    }
    return h;
  }
};

struct Step {
  SafraTree tree;
  int green = std::numeric_limits<int>::max();    // smallest name marked (1-based)
  int removed = std::numeric_limits<int>::max();  // smallest name removed (1-based)
};

std::vector<int> set_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_intersection(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Step safra_step(const ltl::Nba& a, const SafraTree& t, int letter) {
  Step out;
  std::vector<int> parent = t.parent;
  std::vector<std::vector<int>> label = t.label;
  const int k = static_cast<int>(parent.size());

  // 1. spawn a youngest child carrying the accepting states of each node
  for (int v = 0; v < k; ++v) {
    std::vector<int> acc;
    for (int q : label[v])
      if (a.accepting[q]) acc.push_back(q);
    if (!acc.empty()) {
      parent.push_back(v);
      label.push_back(std::move(acc));
    }
  }
  const int m = static_cast<int>(parent.size());

  // 2. powerset successor
  for (int v = 0; v < m; ++v) {
    std::vector<int> next;
    for (int q : label[v]) next.insert(next.end(), a.delta[q][letter].begin(), a.delta[q][letter].end());
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    label[v] = std::move(next);
  }

  // 3. horizontal merge in preorder, children by ascending name
  std::vector<std::vector<int>> children(m);
  for (int v = 1; v < m; ++v) children[parent[v]].push_back(v);
  std::vector<int> order;
  {
    std::vector<int> stack;
    if (m > 0) stack.push_back(0);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) stack.push_back(*it);
    }
  }
  for (int v : order) {
    if (v == 0) continue;
    label[v] = set_intersection(label[v], label[parent[v]]);
  }
  // Older siblings are processed first in preorder; remove their states.
  for (int v : order) {
    std::vector<int> claimed;
    for (int c : children[v]) {
      label[c] = set_intersection(label[c], label[v]);
      label[c] = set_minus(label[c], claimed);
      claimed = set_union(claimed, label[c]);
    }
  }

  // 4. drop empty nodes, 5. collapse nodes covered by their children
  std::vector<char> alive(m, 0);
  for (int v : order) alive[v] = !label[v].empty() && (v == 0 || alive[parent[v]]);
  for (int v : order) {
    if (!alive[v] || children[v].empty()) continue;
    std::vector<int> covered;
    bool any_child = false;
    for (int c : children[v]) {
      if (!alive[c]) continue;
      any_child = true;
      covered = set_union(covered, label[c]);
    }
    if (any_child && covered == label[v]) {
      out.green = std::min(out.green, v + 1);
      std::vector<int> stack(children[v].begin(), children[v].end());
      while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        alive[c] = 0;
        stack.insert(stack.end(), children[c].begin(), children[c].end());
      }
    }
  }
  for (int v = 0; v < m; ++v)
    if (!alive[v]) {
      out.removed = std::min(out.removed, v + 1);
    }

  // 6. compact names preserving their order
  std::vector<int> rename(m, -1);
  int next_name = 0;
  for (int v = 0; v < m; ++v)
    if (alive[v]) rename[v] = next_name++;
  out.tree.parent.resize(next_name);
  out.tree.label.resize(next_name);
  for (int v = 0; v < m; ++v) {
    if (!alive[v]) continue;
    out.tree.parent[rename[v]] = v == 0 ? -1 : rename[parent[v]];
    out.tree.label[rename[v]] = std::move(label[v]);
  }
  return out;
}

}  // namespace

Dpw nba_to_dpw(const ltl::Nba& a, std::size_t budget) {
  const int n_letters = static_cast<int>(a.alphabet.size());
  // Transition priorities use the min-even convention: 2g for the smallest
  // green name g, 2r-1 for the smallest removed name r, whichever is smaller,
  // and an odd neutral value when neither occurs.
  const int max_names = static_cast<int>(a.num_states()) * 2 + 2;
  const int neutral = 2 * max_names + 3;

  SafraTree init;
  if (!a.initial.empty()) {
    init.parent = {-1};
    init.label = {a.initial};
  }
  std::unordered_map<SafraTree, int, TreeHash> tree_ids;
  std::vector<SafraTree> trees;
  std::vector<std::vector<std::pair<int, int>>> edges;  // [tree][letter] -> (tree, min-priority)
  auto intern = [&](SafraTree t) {
    auto [it, inserted] = tree_ids.emplace(t, static_cast<int>(trees.size()));
    if (inserted) {
      if (trees.size() >= budget) throw Error(Errc::SizeBudgetExceeded, "determinization exceeds the size budget");
      trees.push_back(std::move(t));
      edges.emplace_back();
    }
    return it->second;
  };
  intern(init);
  for (std::size_t i = 0; i < trees.size(); ++i) {
    std::vector<std::pair<int, int>> row(n_letters);
    for (int l = 0; l < n_letters; ++l) {
      Step s = safra_step(a, trees[i], l);
      int pri = neutral;
      if (s.green != std::numeric_limits<int>::max()) pri = 2 * s.green;
      if (s.removed != std::numeric_limits<int>::max()) pri = std::min(pri, 2 * s.removed - 1);
      row[l] = {intern(std::move(s.tree)), pri};
    }
    edges[i] = std::move(row);
  }

  // Move priorities onto states: a state is (tree, priority of the entering
  // transition). Max-parity value = neutral + 1 - min-parity value.
  Dpw out;
  out.alphabet = a.alphabet;
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> states;
  auto get = [&](int tree, int min_pri) {
    auto [it, inserted] = ids.emplace(std::make_pair(tree, min_pri), static_cast<int>(states.size()));
    if (inserted) {
      if (states.size() >= budget) throw Error(Errc::SizeBudgetExceeded, "DPW exceeds the size budget");
      states.emplace_back(tree, min_pri);
      out.delta.emplace_back(n_letters);
      out.priority.push_back(neutral + 1 - min_pri);
    }
    return it->second;
  };
  out.initial = get(0, neutral);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const int tree = states[i].first;
    for (int l = 0; l < n_letters; ++l) {
      auto [target, pri] = edges[tree][l];
      out.delta[i][l] = get(target, pri);
    }
  }
  return minimize(out);
}

Dpw ltl_to_dpw(const ltl::Formula& f, const Alphabet& sigma, std::size_t budget) {
  return nba_to_dpw(ltl::ltl_to_nba(f, sigma, budget), budget);
}

bool dpw_accepts(const Dpw& d, const Word& w) {
  ltl::check_word(w, d.alphabet);
  const std::size_t len = w.size();
  thread_local std::vector<int> first_seen, run;  // reused between calls
  first_seen.assign(d.num_states() * len, -1);     // (state, position) -> step
  run.clear();
  int q = d.initial;
  std::size_t pos = 0;
  for (int i = 0;; ++i) {
    int& seen = first_seen[static_cast<std::size_t>(q) * len + pos];
    if (seen >= 0) {
      int best = -1;
      for (std::size_t j = seen; j < run.size(); ++j) best = std::max(best, d.priority[run[j]]);
      return best % 2 == 0;
    }
    seen = i;
    run.push_back(q);
    q = d.delta[q][w.letters[pos]];
    pos = w.next(pos);
  }
}

namespace {

// Lowest priorities that keep the parity of the maximum on every cycle:
// within each SCC the top-priority states get the smallest value of the right
// parity above what the rest of the SCC needs (computed recursively).
void normalize_scc(const graph::Adjacency& adj, const std::vector<int>& prio, const std::vector<int>& nodes,
                   std::vector<int>& out) {
  std::vector<char> keep(adj.size(), 0);
  for (int v : nodes) keep[v] = 1;
  graph::SccDecomposition scc = graph::strongly_connected_components(adj, keep);
  std::vector<std::vector<int>> members(scc.count);
  for (int v : nodes) members[scc.component[v]].push_back(v);
  for (const auto& comp : members) {
    if (comp.size() == 1 && !graph::on_cycle(adj, scc, comp[0])) continue;
    int top_prio = -1;
    for (int v : comp) top_prio = std::max(top_prio, prio[v]);
    std::vector<int> rest;
    for (int v : comp)
      if (prio[v] != top_prio) rest.push_back(v);
    if (!rest.empty()) normalize_scc(adj, prio, rest, out);
    int below = -1;
    for (int v : rest) below = std::max(below, out[v]);
    const int value = below < 0 ? top_prio % 2 : (below % 2 == top_prio % 2 ? below : below + 1);
    for (int v : comp)
      if (prio[v] == top_prio || out[v] < 0) out[v] = value;
  }
}

Dpw normalize_priorities(const Dpw& d) {
  const int n = static_cast<int>(d.num_states());
  graph::Adjacency adj(n);
  for (int q = 0; q < n; ++q) {
    adj[q] = d.delta[q];
    std::sort(adj[q].begin(), adj[q].end());
    adj[q].erase(std::unique(adj[q].begin(), adj[q].end()), adj[q].end());
  }
  std::vector<int> all(n), out(n, -1);
  for (int q = 0; q < n; ++q) all[q] = q;
  normalize_scc(adj, d.priority, all, out);
  // States on no cycle are free; copying a successor's value helps merging.
  // Tarjan numbers components sinks first, so successors are already final.
  graph::SccDecomposition scc = graph::strongly_connected_components(adj);
  std::vector<std::vector<int>> members(scc.count);
  for (int q = 0; q < n; ++q) members[scc.component[q]].push_back(q);
  for (const auto& comp : members)
    for (int q : comp)
      if (out[q] < 0) out[q] = std::max(0, out[d.delta[q][0]]);
  Dpw r = d;
  r.priority = std::move(out);
  return r;
}

Dpw moore_minimize(const Dpw& d) {
  const int n = static_cast<int>(d.num_states());
  const int n_letters = static_cast<int>(d.alphabet.size());
  // reachable part
  std::vector<int> reach_id(n, -1), reach;
  reach_id[d.initial] = 0;
  reach.push_back(d.initial);
  for (std::size_t i = 0; i < reach.size(); ++i)
    for (int t : d.delta[reach[i]])
      if (reach_id[t] == -1) {
        reach_id[t] = static_cast<int>(reach.size());
        reach.push_back(t);
      }
  const int m = static_cast<int>(reach.size());

  // priority compaction: merge neighbouring values of equal parity
  std::vector<int> values;
  for (int q : reach) values.push_back(d.priority[q]);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::map<int, int> compact;
  int current = -1;
  for (int v : values) {
    if (current == -1) current = v % 2;
    else if ((current % 2) != (v % 2)) ++current;
    compact[v] = current;
  }

  std::vector<int> block(m);
  for (int i = 0; i < m; ++i) block[i] = compact[d.priority[reach[i]]];
  int n_blocks = -1;
  for (;;) {
    std::map<std::vector<int>, int> sig_ids;
    std::vector<int> next(m);
    for (int i = 0; i < m; ++i) {
      std::vector<int> sig;
      sig.reserve(n_letters + 1);
      sig.push_back(block[i]);
      for (int l = 0; l < n_letters; ++l) sig.push_back(block[reach_id[d.delta[reach[i]][l]]]);
      next[i] = sig_ids.emplace(std::move(sig), static_cast<int>(sig_ids.size())).first->second;
    }
    const int count = static_cast<int>(sig_ids.size());
    block = std::move(next);
    if (count == n_blocks) break;
    n_blocks = count;
  }
  // Number blocks in BFS order from the initial state for stable output.
  Dpw out;
  out.alphabet = d.alphabet;
  std::vector<int> rep(n_blocks, -1), new_id(n_blocks, -1), order;
  for (int i = 0; i < m; ++i)
    if (rep[block[i]] == -1) rep[block[i]] = i;
  auto visit = [&](int b) {
    if (new_id[b] == -1) {
      new_id[b] = static_cast<int>(order.size());
      order.push_back(b);
    }
    return new_id[b];
  };
  out.initial = visit(block[0]);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int i = rep[order[k]];
    out.delta.emplace_back(n_letters);
    out.priority.push_back(compact[d.priority[reach[i]]]);
    for (int l = 0; l < n_letters; ++l) out.delta[k][l] = visit(block[reach_id[d.delta[reach[i]][l]]]);
  }
  return out;
}

}  // namespace

Dpw minimize(const Dpw& d) {
  Dpw current = moore_minimize(d);
  for (int round = 0; round < 16; ++round) {
    Dpw next = moore_minimize(normalize_priorities(current));
    if (next.num_states() == current.num_states() && next.priority == current.priority) return next;
    current = std::move(next);
  }
  return current;
}

Dpw complement(const Dpw& d) {
  Dpw out = d;
  for (int& p : out.priority) ++p;
  return out;
}

Dpw relabel(const Dpw& d, const Alphabet& target, const std::vector<int>& source_letter_of_target) {
  if (source_letter_of_target.size() != target.size())
    throw Error(Errc::InvalidInput, "relabel map does not cover the target alphabet");
  Dpw out;
  out.alphabet = target;
  out.initial = d.initial;
  const int sink = static_cast<int>(d.num_states());
  int odd = 1;
  for (int p : d.priority) odd = std::max(odd, p % 2 ? p : p + 1);
  out.priority = d.priority;
  out.priority.push_back(odd);
  out.delta.assign(d.num_states() + 1, std::vector<int>(target.size(), sink));
  for (std::size_t q = 0; q < d.num_states(); ++q)
    for (std::size_t l = 0; l < target.size(); ++l)
      if (source_letter_of_target[l] >= 0) out.delta[q][l] = d.delta[q][source_letter_of_target[l]];
  return minimize(out);
}

}  // namespace genplan::omega
