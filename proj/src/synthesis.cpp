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

#include "genplan/synthesis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace genplan::omega {

namespace {

std::vector<std::string> goal_observations(const Fondp& p) {
  std::set<std::string> out;
  for (std::size_t s = 0; s < p.num_states(); ++s)
    if (p.goal[s]) out.insert(p.observations[p.obs[s]]);
  if (p.class_info)
    for (const auto& o : p.class_info->goal_observations)
      if (p.find_obs(o)) out.insert(o);
  return {out.begin(), out.end()};
}

// Variables of a constraint named "qnp(X) && qnp(Y) ...", or nullopt.
std::map<std::pair<int, int>, int> controller_nodes(const SynthesisGame& game) {
  std::map<std::pair<int, int>, int> out;
  for (std::size_t u = 0; u < game.nodes.size(); ++u)
    if (game.nodes[u].kind == GameNode::Kind::Controller)
      out[{game.nodes[u].state, game.nodes[u].dpw_state}] = static_cast<int>(u);
  return out;
}

}  // namespace

ltl::Formula synthesis_objective(const Fondp& p, const TrajectoryConstraint& psi) {
  ltl::Formula goal = ltl::Formula::any_of(goal_observations(p)).eventually();
  ltl::Formula c = constraint_formula(psi, p, Level::Observation);
  if (c.op() == ltl::Op::True) return goal;
  return c.implies(goal);
}

SynthesisGame build_parity_game(const Fondp& p, const Dpw& d, std::size_t budget) {
  if (!is_fully_observable(p)) throw Error(Errc::InvalidInput, "synthesis needs a fully observable problem");
  const ltl::Alphabet sigma = trajectory_alphabet(p, Level::Observation);
  if (!(d.alphabet == sigma)) throw Error(Errc::AlphabetMismatch, "automaton alphabet differs from the problem's");
  const int offset = static_cast<int>(p.observations.size());

  SynthesisGame out;
  auto& g = out.game;
  const std::vector<int> pri = d.priorities();
  const int top = pri.empty() ? 0 : pri.back();
  out.win_sink = g.add_node(kController, top % 2 == 0 ? top : top + 1, "win");
  out.nodes.push_back({GameNode::Kind::Win});
  g.succ[out.win_sink].push_back(out.win_sink);
  out.lose_sink = g.add_node(kEnvironment, top % 2 == 1 ? top : top + 1, "lose");
  out.nodes.push_back({GameNode::Kind::Lose});
  g.succ[out.lose_sink].push_back(out.lose_sink);

  std::map<std::pair<int, int>, int> controller;
  std::deque<std::pair<int, int>> todo;
  auto get = [&](int s, int q) {
    auto [it, inserted] = controller.emplace(std::make_pair(s, q), 0);
    if (inserted) {
      if (g.size() >= budget) throw Error(Errc::SizeBudgetExceeded, "synthesis game exceeds the size budget");
      it->second = g.add_node(kController, d.priority[q], p.states[s] + " q" + std::to_string(q));
      out.nodes.push_back({GameNode::Kind::Controller, s, q, -1});
      todo.emplace_back(s, q);
    }
    return it->second;
  };
  for (int s : p.init) g.initial.push_back(get(s, d.step(d.initial, p.obs[s])));
  while (!todo.empty()) {
    auto [s, q] = todo.front();
    todo.pop_front();
    const int v = controller.at({s, q});
    if (p.goal[s]) {
      g.succ[v].push_back(out.win_sink);
      continue;
    }
    if (p.avail[s].empty()) {
      g.succ[v].push_back(out.lose_sink);
      continue;
    }
    for (int a : p.avail[s]) {
      const int q2 = d.step(q, offset + a);
      const int u = g.add_node(kEnvironment, d.priority[q2], p.states[s] + " " + p.actions[a] + " q" + std::to_string(q2));
      out.nodes.push_back({GameNode::Kind::Environment, s, q2, a});
      g.succ[v].push_back(u);
      for (int t : p.succ[s].at(a)) {
        const int w = get(t, d.step(q2, p.obs[t]));
        g.succ[u].push_back(w);
      }
    }
  }
  return out;
}

namespace {

// Index appearance record over the variables. With a goal sink the automaton
// accepts qnp constraints -> F goal, without it the words violating them.
Dpw appearance_record(const Pondp& p, const std::vector<std::string>& variables, bool goal_sink) {
  Dpw d;
  d.alphabet = trajectory_alphabet(p, Level::Observation);
  const int n = static_cast<int>(variables.size());
  const int letters = static_cast<int>(d.alphabet.size());
  const int offset = static_cast<int>(p.observations.size());

  // Per letter: variables whose constraint is hurt (increment or zero) and
  // variables that are decremented.
  std::vector<std::vector<char>> hit(letters, std::vector<char>(n, 0)), good(letters, std::vector<char>(n, 0));
  std::vector<char> goal(letters, 0);
  if (goal_sink)
    for (const auto& o : goal_observations(p)) goal[p.obs_id(o)] = 1;
  for (int i = 0; i < n; ++i) {
    const VariableLabels* l = p.find_labels(variables[i]);
    if (!l) throw Error(Errc::InvalidInput, "no labels for variable " + variables[i]);
    for (const auto& o : l->zero_observations)
      if (auto id = p.find_obs(o)) hit[*id][i] = 1;
    for (const auto& a : l->inc_actions)
      if (auto id = p.find_action(a)) hit[offset + *id][i] = 1;
    for (const auto& a : l->dec_actions)
      if (auto id = p.find_action(a)) good[offset + *id][i] = 1;
  }

  // States: initial, goal sink, then (record, priority of the last step).
  std::vector<int> record(n);
  std::iota(record.begin(), record.end(), 0);
  std::map<std::pair<std::vector<int>, int>, int> ids;
  std::vector<std::pair<std::vector<int>, int>> states;
  d.delta.assign(2, std::vector<int>(letters, -1));
  d.priority = {1, 2};
  d.initial = 0;
  const int sink = 1;
  std::fill(d.delta[sink].begin(), d.delta[sink].end(), sink);
  auto get = [&](const std::vector<int>& r, int prio) {
    auto [it, inserted] = ids.emplace(std::make_pair(r, prio), 0);
    if (inserted) {
      it->second = static_cast<int>(d.delta.size());
      d.delta.emplace_back(letters, -1);
      d.priority.push_back(prio);
      states.emplace_back(r, prio);
    }
    return it->second;
  };
  auto fill = [&](int q, const std::vector<int>& r) {
    for (int x = 0; x < letters; ++x) {
      if (goal[x]) {
        d.delta[q][x] = sink;
        continue;
      }
      // Hit variables move to the front; h is the last old position hit,
      // g the last new position of a decremented variable.
      std::vector<int> next;
      int h = 0;
      for (int pos = 0; pos < n; ++pos)
        if (hit[x][r[pos]]) {
          next.push_back(r[pos]);
          h = pos + 1;
        }
      for (int pos = 0; pos < n; ++pos)
        if (!hit[x][r[pos]]) next.push_back(r[pos]);
      int gpos = 0;
      for (int pos = 0; pos < n; ++pos)
        if (good[x][next[pos]] && !hit[x][next[pos]]) gpos = pos + 1;
      const int prio = gpos > h ? 2 * gpos : 2 * h + 1;
      d.delta[q][x] = get(next, prio);
    }
  };
  fill(d.initial, record);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::vector<int> r = states[i].first;
    fill(ids.at(states[i]), r);
  }
  check_dpw(d);
  return d;
}

}  // namespace

Dpw qnp_dpw_direct(const Fondp& p, const std::vector<std::string>& variables) {
  return appearance_record(p, variables, true);
}

Dpw qnp_constraint_dpw(const Pondp& p, const std::vector<std::string>& variables) {
  return complement(appearance_record(p, variables, false));
}

SynthesisResult synthesize(const Fondp& p, const TrajectoryConstraint& psi, const SynthesisOptions& opts) {
  SynthesisResult r;
  r.objective = synthesis_objective(p, psi);
  const ltl::Alphabet sigma = trajectory_alphabet(p, Level::Observation);
  auto vars = opts.direct_qnp_dpw ? qnp_constraint_variables(psi, p) : std::nullopt;
  r.dpw = vars ? qnp_dpw_direct(p, *vars) : ltl_to_dpw(r.objective, sigma, opts.budget);
  r.game = build_parity_game(p, r.dpw, opts.budget);
  const ParityGame& g = r.game.game;
  r.solution = solve_parity(g);

  for (int v : g.initial)
    if (r.solution.winner[v] != kController) {
      r.realizable = false;
      r.reason = "environment wins from " + p.states[r.game.nodes[v].state];
      for (std::size_t u = 0; u < g.size(); ++u) {
        const GameNode& node = r.game.nodes[u];
        if (node.kind != GameNode::Kind::Environment || r.solution.winner[u] != kEnvironment) continue;
        const GameNode& to = r.game.nodes[r.solution.strategy[u]];
        r.counterstrategy.push_back(p.states[node.state] + " " + p.actions[node.action] + " q" +
                                    std::to_string(node.dpw_state) + " -> " + p.states[to.state]);
      }
      return r;
    }
  r.realizable = true;

  // Memory is the automaton state before an observation is read. Collect the
  // (memory, state) pairs met when following the strategy.
  const Dpw& d = r.dpw;
  const int offset = static_cast<int>(p.observations.size());
  const auto controller_node = controller_nodes(r.game);
  std::map<std::pair<int, int>, int> action_at;  // (memory, state) -> action, -1 to stop
  std::set<int> memories;
  std::deque<std::pair<int, int>> todo;
  auto visit = [&](int m, int s) {
    if (action_at.count({m, s})) return;
    memories.insert(m);
    const int q = d.step(m, p.obs[s]);
    int a = -1;
    if (!p.goal[s]) a = r.game.nodes[r.solution.strategy[controller_node.at({s, q})]].action;
    action_at[{m, s}] = a;
    if (a >= 0) todo.emplace_back(m, s);
  };
  for (int s : p.init) visit(d.initial, s);
  while (!todo.empty()) {
    auto [m, s] = todo.front();
    todo.pop_front();
    const int a = action_at.at({m, s});
    const int m2 = d.step(d.step(m, p.obs[s]), offset + a);
    for (int t : p.succ[s].at(a)) visit(m2, t);
  }

  Policy& mu = r.policy;
  std::map<int, int> memory_index;
  for (int m : memories) {
    memory_index[m] = static_cast<int>(mu.memory_states.size());
    mu.memory_states.push_back("q" + std::to_string(m));
  }
  mu.initial = memory_index.at(d.initial);
  mu.observations = p.observations;
  mu.actions = p.actions;
  const std::size_t k = mu.memory_states.size(), o = p.observations.size();
  mu.update.assign(k, std::vector<int>(o, 0));
  mu.output.assign(k, std::vector<int>(o, -1));
  for (const auto& [ms, a] : action_at) {
    auto [m, s] = ms;
    const int row = memory_index.at(m);
    mu.output[row][p.obs[s]] = a;
    if (a >= 0) {
      const int m2 = d.step(d.step(m, p.obs[s]), offset + a);
      mu.update[row][p.obs[s]] = memory_index.at(m2);
    }
  }
  return r;
}

Refutation refute(const Fondp& p, const SynthesisResult& r, const Policy& mu) {
  if (r.realizable) throw Error(Errc::InvalidInput, "the objective is realizable");
  const ParityGame& g = r.game.game;
  const Dpw& d = r.dpw;
  const int offset = static_cast<int>(p.observations.size());
  BoundPolicy b = bind(mu, p);
  const auto controller_node = controller_nodes(r.game);

  int start = -1;
  for (int v : g.initial)
    if (r.solution.winner[v] == kEnvironment) {
      start = r.game.nodes[v].state;
      break;
    }
  // The play: (state, policy memory, automaton state after the observation).
  std::vector<int> states, actions;
  std::map<std::tuple<int, int, int>, std::size_t> seen;
  int s = start, m = mu.initial, q = d.step(d.initial, p.obs[start]);
  Refutation out;
  for (;;) {
    auto [it, inserted] = seen.emplace(std::make_tuple(s, m, q), states.size());
    if (!inserted) {
      out.lasso = Lasso{states, actions, it->second, Level::State};
      return out;
    }
    states.push_back(s);
    const int a = p.goal[s] ? -1 : b.output(m, p.obs[s]);
    if (a < 0) {
      out.finite = Trajectory{states, actions, Level::State};
      return out;
    }
    if (!p.available(s, a)) throw Error(Errc::InvalidPolicy, "policy selects an unavailable action");
    actions.push_back(a);
    const int v = controller_node.at({s, q});
    const int q2 = d.step(q, offset + a);
    int env = -1;
    for (int u : g.succ[v])
      if (r.game.nodes[u].action == a) env = u;
    int t = -1;
    if (r.solution.winner[env] == kEnvironment) {
      t = r.game.nodes[r.solution.strategy[env]].state;
    } else {
      // The policy left the environment's region, which a losing controller
      // cannot do; fall back to the first outcome.
      t = p.succ[s].at(a).front();
    }
    m = b.update(m, p.obs[s]);
    s = t;
    q = d.step(q2, p.obs[s]);
  }
}

}  // namespace genplan::omega
