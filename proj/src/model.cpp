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

#include "genplan/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace genplan {

namespace {

int find_name(const std::vector<std::string>& names, const std::string& name, const char* what) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw Error(Errc::InvalidInput, std::string("unknown ") + what + " '" + name + "'");
  return static_cast<int>(it - names.begin());
}

std::optional<int> try_find(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<int>(it - names.begin());
}

}  // namespace

int Pondp::state_id(const std::string& name) const { return find_name(states, name, "state"); }
int Pondp::obs_id(const std::string& name) const { return find_name(observations, name, "observation"); }
int Pondp::action_id(const std::string& name) const { return find_name(actions, name, "action"); }
std::optional<int> Pondp::find_action(const std::string& name) const { return try_find(actions, name); }
std::optional<int> Pondp::find_obs(const std::string& name) const { return try_find(observations, name); }

bool Pondp::available(int s, int a) const {
  const auto& av = avail[s];
  return std::binary_search(av.begin(), av.end(), a);
}

const VariableLabels* Pondp::find_labels(const std::string& variable) const {
  for (const auto& l : labels)
    if (l.variable == variable) return &l;
  return nullptr;
}

bool is_fully_observable(const Pondp& p) {
  if (p.states != p.observations) return false;
  for (std::size_t s = 0; s < p.states.size(); ++s)
    if (p.obs[s] != static_cast<int>(s)) return false;
  return true;
}

std::vector<Diagnostic> validate(const Pondp& p, const PondpClass* cls) {
  std::vector<Diagnostic> out;
  auto report = [&](std::string inv, std::string witness) { out.push_back({std::move(inv), std::move(witness)}); };
  const int n = static_cast<int>(p.states.size());
  const int n_obs = static_cast<int>(p.observations.size());
  const int n_act = static_cast<int>(p.actions.size());
  auto unique_names = [&](const std::vector<std::string>& names, const char* what) {
    std::set<std::string> seen;
    for (const auto& s : names)
      if (!seen.insert(s).second) report(std::string("duplicate ") + what, s);
  };
  unique_names(p.states, "state");
  unique_names(p.observations, "observation");
  unique_names(p.actions, "action");
  if (p.init.empty()) report("empty initial set", "init");
  for (int s : p.init)
    if (s < 0 || s >= n) report("initial state outside states", std::to_string(s));
  if (static_cast<int>(p.goal.size()) != n) report("goal table size", std::to_string(p.goal.size()));
  if (static_cast<int>(p.obs.size()) != n) {
    report("observation function not total", std::to_string(p.obs.size()));
    return out;
  }
  if (static_cast<int>(p.avail.size()) != n || static_cast<int>(p.succ.size()) != n) {
    report("availability or successor table size", std::to_string(p.avail.size()));
    return out;
  }
  for (int s = 0; s < n; ++s) {
    const std::string& sn = p.states[s];
    if (p.obs[s] < 0 || p.obs[s] >= n_obs) report("observation outside observations", sn);
    for (int a : p.avail[s]) {
      if (a < 0 || a >= n_act) {
        report("available action outside actions", sn);
        continue;
      }
      auto it = p.succ[s].find(a);
      if (it == p.succ[s].end() || it->second.empty())
        report("empty successor set", p.actions[a] + "|" + sn);
      else
        for (int t : it->second)
          if (t < 0 || t >= n) report("successor outside states", p.actions[a] + "|" + sn);
    }
    for (const auto& [a, targets] : p.succ[s])
      if (!p.available(s, a))
        report("successor defined for unavailable action",
               (a >= 0 && a < n_act ? p.actions[a] : std::to_string(a)) + "|" + sn);
  }

  std::optional<ClassInfo> info = p.class_info;
  if (cls) info = ClassInfo{cls->goal_observations, cls->avail_by_obs};
  if (cls) {
    if (std::set(cls->actions.begin(), cls->actions.end()) != std::set(p.actions.begin(), p.actions.end()))
      report("actions differ from the class", "actions");
    if (std::set(cls->observations.begin(), cls->observations.end()) !=
        std::set(p.observations.begin(), p.observations.end()))
      report("observations differ from the class", "observations");
  }
  if (info && static_cast<int>(p.goal.size()) == n) {
    std::set<std::string> goal_obs(info->goal_observations.begin(), info->goal_observations.end());
    for (int s = 0; s < n; ++s) {
      if (p.obs[s] < 0 || p.obs[s] >= n_obs) continue;
      const std::string& o = p.observations[p.obs[s]];
      bool observed_goal = goal_obs.count(o) > 0;
      if (p.goal[s] && !observed_goal) report("goal not observable", p.states[s]);
      if (!p.goal[s] && observed_goal) report("goal observation on non-goal state", p.states[s]);
      std::set<std::string> expected;
      if (auto it = info->avail_by_obs.find(o); it != info->avail_by_obs.end())
        expected.insert(it->second.begin(), it->second.end());
      std::set<std::string> actual;
      for (int a : p.avail[s])
        if (a >= 0 && a < n_act) actual.insert(p.actions[a]);
      if (expected != actual) report("precondition not observable", p.states[s]);
    }
  }
  return out;
}

std::vector<Diagnostic> validate_class(const PondpClass& cls) {
  std::vector<Diagnostic> out;
  std::set<std::string> obs(cls.observations.begin(), cls.observations.end());
  std::set<std::string> acts(cls.actions.begin(), cls.actions.end());
  for (const auto& g : cls.goal_observations)
    if (!obs.count(g)) out.push_back({"goal observation outside observations", g});
  for (const auto& [o, as] : cls.avail_by_obs) {
    if (!obs.count(o)) out.push_back({"precondition for unknown observation", o});
    for (const auto& a : as)
      if (!acts.count(a)) out.push_back({"precondition names unknown action", o + ":" + a});
  }
  if (cls.members.empty()) out.push_back({"class has no members", "members"});
  for (std::size_t i = 0; i < cls.members.size(); ++i)
    for (auto& d : validate(cls.members[i], &cls))
      out.push_back({d.invariant, "member " + std::to_string(i) + ": " + d.witness});
  return out;
}

namespace {

void fail_trajectory(const std::string& why) { throw Error(Errc::NotATrajectory, why); }

void check_steps(const Pondp& p, const std::vector<int>& states, const std::vector<int>& actions,
                 std::size_t n_steps, std::size_t loop_start, bool lasso) {
  const int n = static_cast<int>(p.states.size());
  for (int s : states)
    if (s < 0 || s >= n) fail_trajectory("state index out of range");
  if (states.empty()) fail_trajectory("empty trajectory");
  if (std::find(p.init.begin(), p.init.end(), states[0]) == p.init.end())
    fail_trajectory("first state " + p.states[states[0]] + " is not initial");
  for (std::size_t i = 0; i < n_steps; ++i) {
    const int s = states[i];
    const int a = actions[i];
    const int t = lasso && i + 1 == states.size() ? states[loop_start] : states[i + 1];
    if (a < 0 || a >= static_cast<int>(p.actions.size()) || !p.available(s, a))
      fail_trajectory("action unavailable at step " + std::to_string(i));
    const auto& next = p.succ[s].at(a);
    if (!std::binary_search(next.begin(), next.end(), t))
      fail_trajectory("no transition " + p.states[s] + " -" + p.actions[a] + "-> " + p.states[t]);
  }
}

}  // namespace

void check_trajectory(const Pondp& p, const Trajectory& t) {
  if (t.states.size() != t.actions.size() + 1) fail_trajectory("states and actions do not alternate");
  check_steps(p, t.states, t.actions, t.actions.size(), 0, false);
}

void check_trajectory(const Pondp& p, const Lasso& l) {
  if (l.states.size() != l.actions.size() || l.states.empty()) fail_trajectory("lasso needs one action per state");
  if (l.loop_start >= l.states.size()) fail_trajectory("loop start outside the lasso");
  check_steps(p, l.states, l.actions, l.actions.size(), l.loop_start, true);
}

Policy Policy::memoryless(std::vector<std::string> observations, std::vector<std::string> actions,
                          const std::map<std::string, std::string>& choice) {
  Policy mu;
  mu.memory_states = {"m0"};
  mu.observations = std::move(observations);
  mu.actions = std::move(actions);
  mu.update.assign(1, std::vector<int>(mu.observations.size(), 0));
  mu.output.assign(1, std::vector<int>(mu.observations.size(), -1));
  for (const auto& [o, a] : choice)
    mu.output[0][find_name(mu.observations, o, "observation")] = find_name(mu.actions, a, "action");
  return mu;
}

std::map<std::string, std::string> Policy::as_map(int memory) const {
  std::map<std::string, std::string> out;
  for (std::size_t o = 0; o < observations.size(); ++o)
    if (output[memory][o] >= 0) out[observations[o]] = actions[output[memory][o]];
  return out;
}

std::optional<std::string> Policy::decide(const std::vector<std::string>& seen) const {
  if (seen.empty()) throw Error(Errc::InvalidInput, "policy needs a nonempty observation sequence");
  int m = initial;
  for (std::size_t i = 0; i + 1 < seen.size(); ++i) m = update[m][find_name(observations, seen[i], "observation")];
  int a = output[m][find_name(observations, seen.back(), "observation")];
  if (a < 0) return std::nullopt;
  return actions[a];
}

BoundPolicy bind(const Policy& mu, const Pondp& p) {
  BoundPolicy b;
  b.policy = &mu;
  b.obs_of_problem.assign(p.observations.size(), -1);
  for (std::size_t o = 0; o < p.observations.size(); ++o)
    if (auto i = try_find(mu.observations, p.observations[o])) b.obs_of_problem[o] = *i;
  b.action_of_policy.assign(mu.actions.size(), -1);
  for (std::size_t a = 0; a < mu.actions.size(); ++a)
    if (auto i = p.find_action(mu.actions[a])) b.action_of_policy[a] = *i;
  return b;
}

int BoundPolicy::output(int memory, int problem_obs) const {
  const int o = obs_of_problem[problem_obs];
  if (o < 0) return -1;
  const int a = policy->output[memory][o];
  if (a < 0) return -1;
  return action_of_policy[a] < 0 ? -2 : action_of_policy[a];
}

int BoundPolicy::update(int memory, int problem_obs) const {
  const int o = obs_of_problem[problem_obs];
  return o < 0 ? memory : policy->update[memory][o];
}

std::string verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::StrongSolution: return "STRONG_SOLUTION";
    case VerdictKind::FairSolution: return "FAIR_SOLUTION";
    case VerdictKind::SolvesUnderConstraint: return "SOLVES_UNDER_CONSTRAINT";
    case VerdictKind::NotASolution: return "NOT_A_SOLUTION";
    case VerdictKind::InvalidPolicy: return "INVALID_POLICY";
  }
  return "?";
}

std::string run_kind_name(RunKind k) {
  switch (k) {
    case RunKind::Finite: return "finite";
    case RunKind::Lasso: return "lasso";
    case RunKind::Truncated: return "truncated";
  }
  return "?";
}

const std::vector<int>& step(const Pondp& p, int s, int a) {
  if (s < 0 || s >= static_cast<int>(p.states.size())) throw Error(Errc::InvalidInput, "state out of range");
  if (a < 0 || a >= static_cast<int>(p.actions.size()) || !p.available(s, a))
    throw Error(Errc::UnavailableAction,
                (a >= 0 && a < static_cast<int>(p.actions.size()) ? p.actions[a] : std::to_string(a)) +
                    " is not available in " + p.states[s]);
  return p.succ[s].at(a);
}

Resolver Resolver::seeded(std::uint64_t seed) {
  Resolver r;
  r.mode_ = Mode::Seeded;
  r.rng_.seed(seed);
  return r;
}

Resolver Resolver::scripted(std::vector<std::string> choices, bool repeat) {
  Resolver r;
  r.mode_ = Mode::Scripted;
  r.script_ = std::move(choices);
  r.repeat_ = repeat;
  return r;
}

std::size_t Resolver::choose(const std::vector<std::string>& candidates) {
  if (candidates.empty()) throw Error(Errc::InvalidInput, "nothing to choose from");
  if (candidates.size() == 1) return 0;
  if (mode_ == Mode::Seeded) return std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng_);
  if (next_ >= script_.size()) {
    if (!repeat_ || script_.empty()) throw Error(Errc::ResolverExhausted, "scripted resolver ran out of choices");
    next_ = 0;
  }
  const std::string& want = script_[next_++];
  auto it = std::find(candidates.begin(), candidates.end(), want);
  if (it == candidates.end()) throw Error(Errc::InvalidInput, "scripted choice '" + want + "' is not a successor");
  return static_cast<std::size_t>(it - candidates.begin());
}

RunResult run_policy(const Pondp& p, const Policy& mu, Resolver& resolver, const RunOptions& opts) {
  BoundPolicy b = bind(mu, p);
  auto names = [&](const std::vector<int>& ids) {
    std::vector<std::string> out;
    for (int s : ids) out.push_back(p.states[s]);
    return out;
  };
  RunResult r;
  std::vector<int> states, actions, memory;
  std::map<std::pair<int, int>, std::size_t> seen;
  int s = p.init[resolver.choose(names(p.init))];
  int m = mu.initial;
  for (;;) {
    if (opts.detect_lasso) {
      auto [it, inserted] = seen.emplace(std::make_pair(s, m), states.size());
      if (!inserted) {
        r.kind = RunKind::Lasso;
        r.lasso = Lasso{states, actions, it->second, Level::State};
        r.memory = memory;
        r.goal_reached = is_goal_reaching(p, r.lasso);
        return r;
      }
    }
    states.push_back(s);
    memory.push_back(m);
    const bool at_goal = p.goal[s] != 0;
    int a = -1;
    if (!(opts.stop_at_goal && at_goal)) {
      a = b.output(m, p.obs[s]);
      if (a == -2 || (a >= 0 && !p.available(s, a))) {
        const std::string name = a == -2 ? mu.actions[mu.output[m][b.obs_of_problem[p.obs[s]]]] : p.actions[a];
        throw Error(Errc::InvalidPolicy, "policy selects " + name + ", unavailable in " + p.states[s]);
      }
    }
    if (a < 0 || actions.size() >= opts.max_steps) {
      r.kind = a < 0 ? RunKind::Finite : RunKind::Truncated;
      r.trajectory = Trajectory{states, actions, Level::State};
      r.memory = memory;
      r.goal_reached = is_goal_reaching(p, r.trajectory);
      return r;
    }
    const auto& next = p.succ[s].at(a);
    const int t = next[resolver.choose(names(next))];
    m = b.update(m, p.obs[s]);
    actions.push_back(a);
    s = t;
  }
}

bool is_goal_reaching(const Pondp& p, const Trajectory& t) {
  check_trajectory(p, t);
  return std::any_of(t.states.begin(), t.states.end(), [&](int s) { return p.goal[s] != 0; });
}

bool is_goal_reaching(const Pondp& p, const Lasso& l) {
  check_trajectory(p, l);
  return std::any_of(l.states.begin(), l.states.end(), [&](int s) { return p.goal[s] != 0; });
}

bool is_fair(const Pondp& p, const Lasso& l) {
  check_trajectory(p, l);
  std::set<std::tuple<int, int, int>> on_cycle;
  for (std::size_t i = l.loop_start; i < l.size(); ++i) on_cycle.emplace(l.states[i], l.actions[i], l.states[l.next(i)]);
  for (const auto& [s, a, t] : on_cycle)
    for (int sibling : p.succ[s].at(a))
      if (!on_cycle.count({s, a, sibling})) return false;
  return true;
}

}  // namespace genplan
