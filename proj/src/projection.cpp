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

#include "genplan/projection.hpp"

#include <algorithm>
#include <set>

#include "genplan/constraints.hpp"

namespace genplan {

ProjectionResult observation_projection(const PondpClass& cls) {
  auto problems = validate_class(cls);
  if (!problems.empty())
    throw Error(Errc::InvalidClass, problems.front().invariant + " (" + problems.front().witness + ")");
  ProjectionResult out;
  Fondp& po = out.fondp;
  po.states = cls.observations;
  po.observations = cls.observations;
  po.actions = cls.actions;
  const int n = static_cast<int>(po.states.size());
  po.obs.resize(n);
  for (int i = 0; i < n; ++i) po.obs[i] = i;
  po.goal.assign(n, 0);
  for (const auto& g : cls.goal_observations) po.goal[po.state_id(g)] = 1;

  std::set<int> init;
  std::vector<std::map<int, std::set<int>>> succ(n);
  for (std::size_t mi = 0; mi < cls.members.size(); ++mi) {
    const Pondp& m = cls.members[mi];
    std::vector<int> to_abstract(m.states.size());
    for (std::size_t s = 0; s < m.states.size(); ++s) to_abstract[s] = po.state_id(m.observations[m.obs[s]]);
    for (int s : m.init) init.insert(to_abstract[s]);
    for (std::size_t s = 0; s < m.states.size(); ++s)
      for (const auto& [a, targets] : m.succ[s]) {
        const int pa = po.action_id(m.actions[a]);
        for (int t : targets) {
          const int from = to_abstract[s], to = to_abstract[t];
          if (succ[from][pa].insert(to).second)
            out.provenance[{po.states[from], po.actions[pa], po.states[to]}] = Provenance{mi, m.states[s], m.states[t]};
        }
      }
  }
  po.init.assign(init.begin(), init.end());
  po.avail.resize(n);
  po.succ.resize(n);
  ClassInfo info;
  info.goal_observations = cls.goal_observations;
  for (int o = 0; o < n; ++o) {
    auto it = cls.avail_by_obs.find(po.states[o]);
    if (it == cls.avail_by_obs.end()) continue;
    for (const auto& name : it->second) {
      const int a = po.action_id(name);
      auto found = succ[o].find(a);
      if (found == succ[o].end()) {
        out.diagnostics.push_back({"empty successor set", name + "|" + po.states[o]});
        continue;
      }
      po.avail[o].push_back(a);
      po.succ[o][a].assign(found->second.begin(), found->second.end());
      info.avail_by_obs[po.states[o]].push_back(name);
    }
    std::sort(po.avail[o].begin(), po.avail[o].end());
  }
  po.class_info = info;
  for (const auto& m : cls.members)
    for (const auto& l : m.labels)
      if (!po.find_labels(l.variable)) po.labels.push_back(l);
  return out;
}

namespace {

int abstract_id(const Pondp& p, int s, const Pondp* projection) {
  return projection ? projection->state_id(p.observations[p.obs[s]]) : p.obs[s];
}

}  // namespace

Trajectory lift_trajectory(const Pondp& p, const Trajectory& t, const Pondp* projection) {
  check_trajectory(p, t);
  Trajectory out = t;
  for (int& s : out.states) s = abstract_id(p, s, projection);
  if (projection)
    for (int& a : out.actions) a = projection->action_id(p.actions[a]);
  out.level = Level::Observation;
  return out;
}

Lasso lift_trajectory(const Pondp& p, const Lasso& l, const Pondp* projection) {
  check_trajectory(p, l);
  Lasso out = l;
  for (int& s : out.states) s = abstract_id(p, s, projection);
  if (projection)
    for (int& a : out.actions) a = projection->action_id(p.actions[a]);
  out.level = Level::Observation;
  return out;
}

Pondp restrict_to_reachable(const Pondp& p) {
  const int n = static_cast<int>(p.states.size());
  std::vector<int> id(n, -1), order;
  for (int s : p.init)
    if (id[s] < 0) {
      id[s] = static_cast<int>(order.size());
      order.push_back(s);
    }
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const auto& [a, targets] : p.succ[order[i]])
      for (int t : targets)
        if (id[t] < 0) {
          id[t] = static_cast<int>(order.size());
          order.push_back(t);
        }
  // Keep the original relative order of states for readability.
  std::vector<int> kept = order;
  std::sort(kept.begin(), kept.end());
  for (std::size_t i = 0; i < kept.size(); ++i) id[kept[i]] = static_cast<int>(i);
  Pondp r;
  r.observations = p.observations;
  r.actions = p.actions;
  r.class_info = p.class_info;
  r.labels = p.labels;
  r.metadata = p.metadata;
  const bool identity_obs = is_fully_observable(p);
  for (int s : kept) {
    r.states.push_back(p.states[s]);
    r.goal.push_back(p.goal[s]);
    r.obs.push_back(p.obs[s]);
    r.avail.push_back(p.avail[s]);
    std::map<int, std::vector<int>> next;
    for (const auto& [a, targets] : p.succ[s]) {
      auto& out = next[a];
      for (int t : targets) out.push_back(id[t]);
      std::sort(out.begin(), out.end());
    }
    r.succ.push_back(std::move(next));
  }
  for (int s : p.init) r.init.push_back(id[s]);
  std::sort(r.init.begin(), r.init.end());
  r.init.erase(std::unique(r.init.begin(), r.init.end()), r.init.end());
  if (identity_obs) {
    r.observations = r.states;
    for (std::size_t i = 0; i < r.states.size(); ++i) r.obs[i] = static_cast<int>(i);
  }
  return r;
}

bool same_structure(const Pondp& a, const Pondp& b) {
  if (std::set(a.states.begin(), a.states.end()) != std::set(b.states.begin(), b.states.end())) return false;
  if (std::set(a.actions.begin(), a.actions.end()) != std::set(b.actions.begin(), b.actions.end())) return false;
  auto names = [](const Pondp& p, const std::vector<int>& ids) {
    std::set<std::string> out;
    for (int s : ids) out.insert(p.states[s]);
    return out;
  };
  if (names(a, a.init) != names(b, b.init)) return false;
  for (std::size_t s = 0; s < a.states.size(); ++s) {
    const int t = b.state_id(a.states[s]);
    if (static_cast<bool>(a.goal[s]) != static_cast<bool>(b.goal[t])) return false;
    if (a.avail[s].size() != b.avail[t].size()) return false;
    for (const auto& [act, targets] : a.succ[s]) {
      auto other = b.find_action(a.actions[act]);
      if (!other || !b.available(t, *other)) return false;
      if (names(a, targets) != names(b, b.succ[t].at(*other))) return false;
    }
  }
  return true;
}

}  // namespace genplan
