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

#include "genplan/verify.hpp"

#include <deque>
#include <functional>
#include <map>
#include <tuple>

#include "genplan/graph.hpp"
#include "genplan/synthesis.hpp"
#include "search.hpp"

namespace genplan {

namespace {

std::string check_policy_shape(const Policy& mu) {
  const int m = static_cast<int>(mu.memory_states.size());
  const int o = static_cast<int>(mu.observations.size());
  if (m == 0) return "policy has no memory states";
  if (mu.initial < 0 || mu.initial >= m) return "initial memory state out of range";
  if (static_cast<int>(mu.update.size()) != m || static_cast<int>(mu.output.size()) != m)
    return "update/output tables do not cover the memory states";
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(mu.update[i].size()) != o || static_cast<int>(mu.output[i].size()) != o)
      return "update/output tables do not cover the observations";
    for (int j = 0; j < o; ++j) {
      if (mu.update[i][j] < 0 || mu.update[i][j] >= m) return "update leaves the memory states";
      if (mu.output[i][j] < -1 || mu.output[i][j] >= static_cast<int>(mu.actions.size()))
        return "output names an unknown action";
    }
  }
  return {};
}

// Product of p with the policy memory and an optional DPW. Goal state nodes
// and dead ends have no successors.
struct Product {
  detail::SearchGraph graph;
  std::vector<char> goal;       // per node: state node at a goal state
  std::vector<char> dead_end;   // per node: non-goal state node where the policy stops
  int invalid_node = -1;        // state node where the policy picks an unavailable action
  std::string invalid_reason;
};

Product build_product(const Pondp& p, const Policy& mu, const BoundPolicy& b, const omega::Dpw* d, Level level,
                      bool stop_at_goal, std::size_t budget) {
  Product out;
  auto& g = out.graph;
  const int offset = static_cast<int>(level == Level::State ? p.states.size() : p.observations.size());
  auto letter = [&](int s) { return level == Level::State ? s : p.obs[s]; };
  std::map<std::tuple<int, int, int>, int> ids;
  std::deque<std::tuple<int, int, int>> todo;
  auto get = [&](int s, int m, int q) {
    auto [it, inserted] = ids.emplace(std::make_tuple(s, m, q), 0);
    if (inserted) {
      if (g.size() >= budget) throw Error(Errc::SizeBudgetExceeded, "policy product exceeds the size budget");
      it->second = g.add(s, -1, d ? d->priority[d->step(q, letter(s))] : 0);
      out.goal.push_back(p.goal[s]);
      out.dead_end.push_back(0);
      todo.emplace_back(s, m, q);
    }
    return it->second;
  };
  for (int s : p.init) g.sources.push_back(get(s, mu.initial, d ? d->initial : 0));
  while (!todo.empty()) {
    auto [s, m, q] = todo.front();
    todo.pop_front();
    const int v = ids.at({s, m, q});
    if (stop_at_goal && p.goal[s]) continue;
    const int a = b.output(m, p.obs[s]);
    if (a == -1) {
      if (!p.goal[s]) out.dead_end[v] = 1;
      continue;
    }
    if (a == -2 || !p.available(s, a)) {
      if (out.invalid_node < 0) {
        out.invalid_node = v;
        const int pa = mu.output[m][b.obs_of_problem[p.obs[s]]];
        out.invalid_reason = "policy selects " + mu.actions[pa] + ", unavailable in " + p.states[s];
      }
      continue;
    }
    const int m2 = b.update(m, p.obs[s]);
    const int q1 = d ? d->step(q, letter(s)) : 0;
    const int q2 = d ? d->step(q1, offset + a) : 0;
    const int u = g.add(s, a, d ? d->priority[q2] : 0);
    out.goal.push_back(0);
    out.dead_end.push_back(0);
    g.succ[v].push_back(u);
    for (int t : p.succ[s].at(a)) {
      const int w = get(t, m2, q2);
      g.succ[u].push_back(w);
    }
  }
  return out;
}

std::vector<char> non_goal(const Product& prod) {
  std::vector<char> allowed(prod.graph.size());
  for (std::size_t v = 0; v < allowed.size(); ++v) allowed[v] = !prod.goal[v];
  return allowed;
}

Verdict negative(std::string reason) {
  Verdict v;
  v.kind = VerdictKind::NotASolution;
  v.reason = std::move(reason);
  return v;
}

// Lassos formed by a simple path plus one back edge, through non-goal nodes.
std::optional<Lasso> explicit_search(const Product& prod, const Pondp& p, const TrajectoryConstraint& c,
                                     std::size_t max_length) {
  const auto& g = prod.graph;
  std::vector<int> path;
  std::vector<int> position(g.size(), -1);
  std::optional<Lasso> found;
  std::function<void(int)> dfs = [&](int v) {
    if (found) return;
    position[v] = static_cast<int>(path.size());
    path.push_back(v);
    for (int w : g.succ[v]) {
      if (found) break;
      if (prod.goal[w]) continue;
      if (position[w] >= 0) {
        std::vector<int> prefix(path.begin(), path.begin() + position[w]);
        std::vector<int> cycle(path.begin() + position[w], path.end());
        Lasso l = detail::walk_to_lasso(g, prefix, cycle);
        if (satisfies(c, l, p)) found = l;
      } else if (path.size() < 2 * max_length) {
        dfs(w);
      }
    }
    path.pop_back();
    position[v] = -1;
  };
  for (int s : g.sources)
    if (!prod.goal[s] && !found) dfs(s);
  return found;
}

}  // namespace

Verdict check_solution(const Pondp& p, const Policy& mu, const SolutionMode& mode, const CheckOptions& opts) {
  using Kind = SolutionMode::Kind;
  if (std::string why = check_policy_shape(mu); !why.empty()) {
    Verdict v;
    v.kind = VerdictKind::InvalidPolicy;
    v.reason = why;
    return v;
  }
  BoundPolicy b = bind(mu, p);
  {
    // Validity is a property of every mu-trajectory, including those that
    // continue past the goal.
    Product full = build_product(p, mu, b, nullptr, Level::Observation, false, opts.budget);
    if (full.invalid_node >= 0) {
      Verdict v;
      v.kind = VerdictKind::InvalidPolicy;
      v.reason = full.invalid_reason;
      v.finite_counterexample = detail::path_to(full.graph, full.invalid_node);
      return v;
    }
  }

  std::optional<omega::Dpw> dpw;
  Level level = Level::Observation;
  const bool ltl_mode = mode.kind == Kind::Under && mode.constraint.kind == TrajectoryConstraint::Kind::Ltl;
  if (ltl_mode) {
    level = mode.constraint.level;
    ltl::Alphabet sigma = trajectory_alphabet(p, level);
    try {
      ltl::check_letters(mode.constraint.formula, sigma);
    } catch (const Error& e) {
      throw Error(Errc::AlphabetMismatch, e.what());
    }
    if (auto vars = qnp_constraint_variables(mode.constraint, p))
      dpw = omega::qnp_constraint_dpw(p, *vars);
    else
      dpw = omega::ltl_to_dpw(mode.constraint.formula, sigma, opts.budget);
  }
  Product prod = build_product(p, mu, b, dpw ? &*dpw : nullptr, level, true, opts.budget);
  const std::vector<char> allowed = non_goal(prod);

  for (std::size_t v = 0; v < prod.graph.size(); ++v)
    if (prod.dead_end[v]) {
      Verdict out = negative("policy stops at non-goal state " + p.states[prod.graph.state[v]]);
      out.finite_counterexample = detail::path_to(prod.graph, static_cast<int>(v), allowed);
      return out;
    }

  detail::LassoQuery q;
  q.allowed = allowed;
  std::optional<Lasso> bad;
  switch (mode.kind) {
    case Kind::Strong:
      bad = detail::find_lasso(prod.graph, p, q);
      break;
    case Kind::Fair: {
      // Nodes that cannot reach the goal form a closed set; any bottom
      // component inside it yields a fair lasso that avoids the goal.
      const auto& g = prod.graph;
      graph::Adjacency rev(g.size());
      std::vector<int> goals;
      for (std::size_t v = 0; v < g.size(); ++v) {
        if (prod.goal[v]) goals.push_back(static_cast<int>(v));
        for (int w : g.succ[v]) rev[w].push_back(static_cast<int>(v));
      }
      std::vector<char> can_reach = graph::reachable(rev, goals);
      std::vector<char> stuck(g.size());
      for (std::size_t v = 0; v < g.size(); ++v) stuck[v] = allowed[v] && !can_reach[v];
      q.cycle_allowed = stuck;
      q.fair = true;
      bad = detail::find_lasso(g, p, q);
      break;
    }
    case Kind::Under:
      switch (mode.constraint.kind) {
        case TrajectoryConstraint::Kind::Ltl:
          q.parity = true;
          bad = detail::find_lasso(prod.graph, p, q);
          break;
        case TrajectoryConstraint::Kind::Fairness:
          q.fair = true;
          bad = detail::find_lasso(prod.graph, p, q);
          break;
        case TrajectoryConstraint::Kind::Explicit:
          bad = explicit_search(prod, p, mode.constraint, opts.explicit_max_length);
          break;
      }
      break;
  }
  if (bad) {
    Verdict out = negative(mode.kind == Kind::Under ? "non-goal-reaching trajectory satisfies " + mode.constraint.name
                                                    : "non-goal-reaching trajectory");
    out.lasso_counterexample = std::move(bad);
    return out;
  }
  Verdict out;
  switch (mode.kind) {
    case Kind::Strong: out.kind = VerdictKind::StrongSolution; break;
    case Kind::Fair: out.kind = VerdictKind::FairSolution; break;
    case Kind::Under:
      out.kind = VerdictKind::SolvesUnderConstraint;
      out.constraint = mode.constraint.name;
      break;
  }
  return out;
}

}  // namespace genplan
