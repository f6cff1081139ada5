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

#include "genplan/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace genplan::io {

namespace {

[[noreturn]] void bad(const std::string& why) { throw Error(Errc::InvalidInput, why); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::string> names(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) bad(std::string("field '") + key + "' must be a list");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) bad(std::string("field '") + key + "' must hold strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

int index_of(const std::vector<std::string>& xs, const std::string& x, const char* what) {
  auto it = std::find(xs.begin(), xs.end(), x);
  if (it == xs.end()) bad(std::string("unknown ") + what + " '" + x + "'");
  return static_cast<int>(it - xs.begin());
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Json problem_to_json(const Pondp& p) {
  Json j;
  j["states"] = p.states;
  Json init = Json::array();
  for (int s : p.init) init.push_back(p.states[s]);
  j["init"] = init;
  j["observations"] = p.observations;
  j["actions"] = p.actions;
  Json goals = Json::array();
  for (std::size_t s = 0; s < p.num_states(); ++s)
    if (p.goal[s]) goals.push_back(p.states[s]);
  j["goal_states"] = goals;
  Json obs = Json::object(), avail = Json::object(), succ = Json::object();
  for (std::size_t s = 0; s < p.num_states(); ++s) {
    obs[p.states[s]] = p.observations[p.obs[s]];
    Json av = Json::array();
    for (int a : p.avail[s]) av.push_back(p.actions[a]);
    avail[p.states[s]] = av;
    for (const auto& [a, targets] : p.succ[s]) {
      Json ts = Json::array();
      for (int t : targets) ts.push_back(p.states[t]);
      succ[p.actions[a] + "|" + p.states[s]] = ts;
    }
  }
  j["obs"] = obs;
  j["avail"] = avail;
  j["succ"] = succ;
  if (p.class_info) {
    Json c;
    c["goal_observations"] = p.class_info->goal_observations;
    Json by = Json::object();
    for (const auto& [o, acts] : p.class_info->avail_by_obs) by[o] = acts;
    c["avail_by_obs"] = by;
    j["class"] = c;
  }
  if (!p.labels.empty()) {
    Json ls = Json::array();
    for (const auto& l : p.labels)
      ls.push_back({{"variable", l.variable},
                    {"zero_observations", l.zero_observations},
                    {"inc_actions", l.inc_actions},
                    {"dec_actions", l.dec_actions}});
    j["labels"] = ls;
  }
  if (!p.metadata.empty()) {
    Json m = Json::object();
    for (const auto& [k, v] : p.metadata) m[k] = v;
    j["metadata"] = m;
  }
  return j;
}

Pondp problem_from_json(const Json& j) {
  try {
    Pondp p;
    p.states = names(j, "states");
    p.observations = names(j, "observations");
    p.actions = names(j, "actions");
    for (const auto& s : names(j, "init")) p.init.push_back(index_of(p.states, s, "state"));
    std::sort(p.init.begin(), p.init.end());
    p.goal.assign(p.states.size(), 0);
    for (const auto& s : names(j, "goal_states")) p.goal[index_of(p.states, s, "state")] = 1;
    const Json& obs = field(j, "obs");
    const Json& avail = field(j, "avail");
    const Json& succ = field(j, "succ");
    p.obs.assign(p.states.size(), -1);
    p.avail.assign(p.states.size(), {});
    p.succ.assign(p.states.size(), {});
    for (std::size_t s = 0; s < p.states.size(); ++s) {
      const std::string& name = p.states[s];
      if (!obs.contains(name)) bad("state '" + name + "' has no observation");
      p.obs[s] = index_of(p.observations, obs.at(name).get<std::string>(), "observation");
      if (avail.contains(name))
        for (const auto& a : avail.at(name)) p.avail[s].push_back(index_of(p.actions, a.get<std::string>(), "action"));
      std::sort(p.avail[s].begin(), p.avail[s].end());
    }
    for (const auto& [key, targets] : succ.items()) {
      const std::size_t bar = key.find('|');
      if (bar == std::string::npos) bad("successor key '" + key + "' is not 'action|state'");
      const int a = index_of(p.actions, key.substr(0, bar), "action");
      const int s = index_of(p.states, key.substr(bar + 1), "state");
      auto& ts = p.succ[s][a];
      for (const auto& t : targets) ts.push_back(index_of(p.states, t.get<std::string>(), "state"));
      std::sort(ts.begin(), ts.end());
    }
    if (j.contains("class")) {
      ClassInfo c;
      c.goal_observations = names(j.at("class"), "goal_observations");
      for (const auto& [o, acts] : field(j.at("class"), "avail_by_obs").items())
        c.avail_by_obs[o] = acts.get<std::vector<std::string>>();
      p.class_info = c;
    }
    if (j.contains("labels"))
      for (const auto& l : j.at("labels"))
        p.labels.push_back({field(l, "variable").get<std::string>(), names(l, "zero_observations"),
                            names(l, "inc_actions"), names(l, "dec_actions")});
    if (j.contains("metadata"))
      for (const auto& [k, v] : j.at("metadata").items()) p.metadata[k] = v.get<std::string>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("malformed problem: ") + e.what());
  }
}

Json policy_to_json(const Policy& mu) {
  Json j;
  j["memory_states"] = mu.memory_states;
  j["initial"] = mu.memory_states.at(mu.initial);
  j["observations"] = mu.observations;
  j["actions"] = mu.actions;
  Json update = Json::array(), output = Json::array();
  for (std::size_t m = 0; m < mu.memory_states.size(); ++m)
    for (std::size_t o = 0; o < mu.observations.size(); ++o) {
      if (mu.output[m][o] >= 0) output.push_back({mu.memory_states[m], mu.observations[o], mu.actions[mu.output[m][o]]});
      if (mu.update[m][o] != 0)
        update.push_back({mu.memory_states[m], mu.observations[o], mu.memory_states[mu.update[m][o]]});
    }
  j["update"] = update;
  j["output"] = output;
  return j;
}

Policy policy_from_json(const Json& j) {
  try {
    Policy mu;
    mu.memory_states = names(j, "memory_states");
    if (mu.memory_states.empty()) bad("policy has no memory states");
    mu.initial = index_of(mu.memory_states, field(j, "initial").get<std::string>(), "memory state");
    mu.observations = names(j, "observations");
    mu.actions = names(j, "actions");
    const std::size_t k = mu.memory_states.size(), o = mu.observations.size();
    // Unlisted updates go to the first memory state.
    mu.update.assign(k, std::vector<int>(o, 0));
    mu.output.assign(k, std::vector<int>(o, -1));
    for (const auto& t : field(j, "update")) {
      if (!t.is_array() || t.size() != 3) bad("update entries are [memory, observation, memory]");
      mu.update[index_of(mu.memory_states, t[0].get<std::string>(), "memory state")]
               [index_of(mu.observations, t[1].get<std::string>(), "observation")] =
          index_of(mu.memory_states, t[2].get<std::string>(), "memory state");
    }
    for (const auto& t : field(j, "output")) {
      if (!t.is_array() || t.size() != 3) bad("output entries are [memory, observation, action]");
      mu.output[index_of(mu.memory_states, t[0].get<std::string>(), "memory state")]
               [index_of(mu.observations, t[1].get<std::string>(), "observation")] =
          index_of(mu.actions, t[2].get<std::string>(), "action");
    }
    return mu;
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("malformed policy: ") + e.what());
  }
}

Json dpw_to_json(const omega::Dpw& d) {
  Json j;
  Json states = Json::array();
  for (std::size_t q = 0; q < d.num_states(); ++q) states.push_back("q" + std::to_string(q));
  j["states"] = states;
  j["alphabet"] = d.alphabet.letters();
  j["delta"] = d.delta;
  j["initial"] = d.initial;
  j["priority"] = d.priority;
  return j;
}

omega::Dpw dpw_from_json(const Json& j) {
  try {
    omega::Dpw d;
    d.alphabet = ltl::Alphabet(names(j, "alphabet"));
    d.delta = field(j, "delta").get<std::vector<std::vector<int>>>();
    d.initial = field(j, "initial").get<int>();
    d.priority = field(j, "priority").get<std::vector<int>>();
    omega::check_dpw(d);
    return d;
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("malformed automaton: ") + e.what());
  }
}

namespace {

std::vector<std::string> state_names(const Pondp& p, const std::vector<int>& states, Level level) {
  std::vector<std::string> out;
  for (int s : states) out.push_back(level == Level::State ? p.states.at(s) : p.observations.at(s));
  return out;
}

std::vector<std::string> action_names(const Pondp& p, const std::vector<int>& actions) {
  std::vector<std::string> out;
  for (int a : actions) out.push_back(p.actions.at(a));
  return out;
}

}  // namespace

Json trajectory_to_json(const Pondp& p, const Trajectory& t) {
  return {{"kind", "finite"}, {"states", state_names(p, t.states, t.level)}, {"actions", action_names(p, t.actions)}};
}

Json lasso_to_json(const Pondp& p, const Lasso& l) {
  return {{"kind", "lasso"},
          {"states", state_names(p, l.states, l.level)},
          {"actions", action_names(p, l.actions)},
          {"loop_start", l.loop_start}};
}

Json verdict_to_json(const Pondp& p, const Verdict& v) {
  Json j;
  j["verdict"] = verdict_name(v.kind);
  if (!v.constraint.empty()) j["constraint"] = v.constraint;
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (v.lasso_counterexample) j["counterexample"] = lasso_to_json(p, *v.lasso_counterexample);
  if (v.finite_counterexample) j["counterexample"] = trajectory_to_json(p, *v.finite_counterexample);
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot write " + path);
  out << text;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

std::string problem_to_dot(const Pondp& p) {
  std::ostringstream os;
  os << "digraph problem {\n  rankdir=LR;\n";
  for (std::size_t s = 0; s < p.num_states(); ++s) {
    os << "  s" << s << " [label=" << quote(p.states[s]) << (p.goal[s] ? ", shape=doublecircle" : ", shape=circle");
    if (std::find(p.init.begin(), p.init.end(), static_cast<int>(s)) != p.init.end()) os << ", style=bold";
    os << "];\n";
  }
  for (std::size_t s = 0; s < p.num_states(); ++s)
    for (const auto& [a, targets] : p.succ[s])
      for (int t : targets) os << "  s" << s << " -> s" << t << " [label=" << quote(p.actions[a]) << "];\n";
  os << "}\n";
  return os.str();
}

std::string lasso_to_dot(const Pondp& p, const Lasso& l) {
  std::ostringstream os;
  os << "digraph lasso {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < l.size(); ++i) {
    const std::string& name = l.level == Level::State ? p.states[l.states[i]] : p.observations[l.states[i]];
    os << "  n" << i << " [label=" << quote(name) << (i == l.loop_start ? ", style=bold" : "") << "];\n";
  }
  for (std::size_t i = 0; i < l.size(); ++i)
    os << "  n" << i << " -> n" << l.next(i) << " [label=" << quote(p.actions[l.actions[i]]) << "];\n";
  os << "}\n";
  return os.str();
}

std::string dpw_to_dot(const omega::Dpw& d) {
  std::ostringstream os;
  os << "digraph dpw {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::size_t q = 0; q < d.num_states(); ++q)
    os << "  q" << q << " [label=\"q" << q << " / " << d.priority[q] << "\"];\n";
  os << "  init -> q" << d.initial << ";\n";
  for (std::size_t q = 0; q < d.num_states(); ++q) {
    // One edge per target, labelled with all letters leading there.
    std::map<int, std::vector<std::string>> grouped;
    for (std::size_t x = 0; x < d.alphabet.size(); ++x) grouped[d.delta[q][x]].push_back(d.alphabet.name(static_cast<int>(x)));
    for (const auto& [t, letters] : grouped) {
      std::string label;
      for (const auto& l : letters) label += (label.empty() ? "" : ", ") + l;
      os << "  q" << q << " -> q" << t << " [label=" << quote(label) << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string game_to_dot(const omega::ParityGame& g) {
  std::ostringstream os;
  os << "digraph game {\n";
  for (std::size_t v = 0; v < g.size(); ++v) {
    std::string label = (v < g.label.size() && !g.label[v].empty() ? g.label[v] : "v" + std::to_string(v)) + " / " +
                        std::to_string(g.priority[v]);
    os << "  v" << v << " [label=" << quote(label) << ", shape=" << (g.owner[v] == omega::kController ? "circle" : "box")
       << "];\n";
  }
  for (std::size_t v = 0; v < g.size(); ++v)
    for (int w : g.succ[v]) os << "  v" << v << " -> v" << w << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace genplan::io
