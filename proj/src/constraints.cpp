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

#include "genplan/constraints.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>

#include "search.hpp"

namespace genplan {

TrajectoryConstraint TrajectoryConstraint::ltl(std::string name, ltl::Formula f, Level level) {
  TrajectoryConstraint c;
  c.kind = Kind::Ltl;
  c.name = std::move(name);
  c.formula = std::move(f);
  c.level = level;
  return c;
}

TrajectoryConstraint TrajectoryConstraint::all() { return ltl("all", ltl::Formula::truth()); }

TrajectoryConstraint TrajectoryConstraint::fairness() {
  TrajectoryConstraint c;
  c.kind = Kind::Fairness;
  c.name = "fairness";
  c.level = Level::State;
  return c;
}

TrajectoryConstraint TrajectoryConstraint::explicit_predicate(std::string name,
                                                              std::function<bool(const Pondp&, const Lasso&)> predicate,
                                                              Level level) {
  TrajectoryConstraint c;
  c.kind = Kind::Explicit;
  c.name = std::move(name);
  c.predicate = std::move(predicate);
  c.level = level;
  return c;
}

ltl::Alphabet trajectory_alphabet(const Pondp& p, Level level) {
  std::vector<std::string> letters = level == Level::State ? p.states : p.observations;
  std::set<std::string> seen(letters.begin(), letters.end());
  for (const auto& a : p.actions) {
    if (seen.count(a))
      throw Error(Errc::AlphabetMismatch, "action '" + a + "' collides with an observation or state name");
    letters.push_back(a);
  }
  return ltl::Alphabet(std::move(letters));
}

Lasso lift_lasso(const Pondp& p, const Lasso& l) {
  if (l.level == Level::Observation) return l;
  Lasso out = l;
  for (int& s : out.states) {
    if (s < 0 || s >= static_cast<int>(p.obs.size())) throw Error(Errc::NotATrajectory, "state index out of range");
    s = p.obs[s];
  }
  out.level = Level::Observation;
  return out;
}

ltl::Word lasso_word(const Pondp& p, const Lasso& l, Level level, const ltl::Alphabet& sigma) {
  if (l.states.size() != l.actions.size() || l.states.empty() || l.loop_start >= l.states.size())
    throw Error(Errc::AlphabetMismatch, "malformed lasso");
  if (l.level == Level::Observation && level == Level::State)
    throw Error(Errc::AlphabetMismatch, "observation lasso cannot be read with state letters");
  const bool lift = l.level == Level::State && level == Level::Observation;
  const auto& names = level == Level::State ? p.states : p.observations;
  ltl::Word w;
  for (std::size_t i = 0; i < l.size(); ++i) {
    int s = l.states[i];
    const int a = l.actions[i];
    if (s < 0 || s >= static_cast<int>(lift ? p.obs.size() : names.size()))
      throw Error(Errc::AlphabetMismatch, "lasso symbol out of range");
    if (lift) s = p.obs[s];
    if (a < 0 || a >= static_cast<int>(p.actions.size())) throw Error(Errc::AlphabetMismatch, "lasso action out of range");
    auto sl = sigma.find(names[s]);
    auto al = sigma.find(p.actions[a]);
    if (!sl || !al) throw Error(Errc::AlphabetMismatch, "lasso symbol outside the alphabet");
    w.letters.push_back(*sl);
    w.letters.push_back(*al);
  }
  w.loop_start = 2 * l.loop_start;
  return w;
}

bool satisfies(const TrajectoryConstraint&, const Trajectory&, const Pondp&) { return true; }

bool satisfies(const TrajectoryConstraint& c, const Lasso& l, const Pondp& p) {
  switch (c.kind) {
    case TrajectoryConstraint::Kind::Ltl: {
      ltl::Alphabet sigma = trajectory_alphabet(p, c.level);
      try {
        ltl::check_letters(c.formula, sigma);
      } catch (const Error& e) {
        throw Error(Errc::AlphabetMismatch, e.what());
      }
      return ltl::eval_lasso(c.formula, lasso_word(p, l, c.level, sigma), sigma);
    }
    case TrajectoryConstraint::Kind::Fairness:
      if (l.level == Level::Observation && !is_fully_observable(p))
        throw Error(Errc::AlphabetMismatch, "fairness is defined on state-level lassos");
      return is_fair(p, l);
    case TrajectoryConstraint::Kind::Explicit:
      if (c.level == Level::Observation) return c.predicate(p, lift_lasso(p, l));
      if (l.level == Level::Observation && !is_fully_observable(p))
        throw Error(Errc::AlphabetMismatch, "state-level predicate given an observation lasso");
      return c.predicate(p, l);
  }
  return false;
}

ltl::Formula qnp_formula(const VariableLabels& labels) {
  using ltl::Formula;
  Formula inc = Formula::any_of(labels.inc_actions);
  Formula dec = Formula::any_of(labels.dec_actions);
  Formula zero = Formula::any_of(labels.zero_observations);
  Formula antecedent = (!inc).always().eventually() && dec.eventually().always();
  return antecedent.implies(zero.eventually().always());
}

namespace {

const VariableLabels& labels_of(const Pondp& p, const std::string& variable) {
  const VariableLabels* l = p.find_labels(variable);
  if (!l) throw Error(Errc::UnknownVariable, "no variable '" + variable + "' in the problem alphabet");
  return *l;
}

}  // namespace

TrajectoryConstraint qnp_constraint(const Pondp& p, const std::string& variable) {
  return TrajectoryConstraint::ltl("qnp(" + variable + ")", qnp_formula(labels_of(p, variable)));
}

TrajectoryConstraint qnp_strong_constraint(const Pondp& p, const std::string& variable) {
  using ltl::Formula;
  const VariableLabels& l = labels_of(p, variable);
  std::vector<std::string> positive;
  for (const auto& o : p.observations)
    if (std::find(l.zero_observations.begin(), l.zero_observations.end(), o) == l.zero_observations.end())
      positive.push_back(o);
  Formula inc = Formula::any_of(l.inc_actions);
  Formula dec = Formula::any_of(l.dec_actions);
  Formula antecedent = (!inc).always().eventually() && dec.eventually().always();
  return TrajectoryConstraint::ltl("qnp_strong(" + variable + ")",
                                   antecedent.implies((!Formula::any_of(positive)).always().eventually()));
}

std::vector<TrajectoryConstraint> qnp_constraints(const Pondp& p, const std::vector<std::string>& variables) {
  std::vector<TrajectoryConstraint> out;
  for (const auto& v : variables) out.push_back(qnp_constraint(p, v));
  return out;
}

TrajectoryConstraint conjoin(const std::vector<TrajectoryConstraint>& cs) {
  if (cs.empty()) return TrajectoryConstraint::all();
  if (cs.size() == 1) return cs[0];
  ltl::Formula f = cs[0].formula;
  std::string name = cs[0].name;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].kind != TrajectoryConstraint::Kind::Ltl || cs[i].level != cs[0].level)
      throw Error(Errc::NotLtlExpressible, "only LTL constraints at one level can be conjoined");
    if (i > 0) {
      f = f && cs[i].formula;
      name += " && " + cs[i].name;
    }
  }
  return TrajectoryConstraint::ltl(name, f, cs[0].level);
}

std::optional<std::vector<std::string>> qnp_constraint_variables(const TrajectoryConstraint& c, const Pondp& p) {
  if (c.kind != TrajectoryConstraint::Kind::Ltl || c.level != Level::Observation) return std::nullopt;
  std::vector<std::string> vars;
  std::string rest = c.name;
  for (;;) {
    const std::size_t cut = rest.find(" && ");
    const std::string part = rest.substr(0, cut);
    if (part.size() < 6 || part.compare(0, 4, "qnp(") != 0 || part.back() != ')') return std::nullopt;
    vars.push_back(part.substr(4, part.size() - 5));
    if (cut == std::string::npos) break;
    rest = rest.substr(cut + 4);
  }
  for (const auto& v : vars)
    if (!p.find_labels(v)) return std::nullopt;
  if (conjoin(qnp_constraints(p, vars)).formula.to_string() != c.formula.to_string()) return std::nullopt;
  return vars;
}

TrajectoryConstraint fairness_constraint(const Pondp&) { return TrajectoryConstraint::fairness(); }

ltl::Formula fairness_formula(const Pondp& p, std::size_t max_pairs) {
  using ltl::Formula;
  std::vector<Formula> conjuncts;
  for (std::size_t s = 0; s < p.states.size(); ++s)
    for (const auto& [a, targets] : p.succ[s]) {
      if (targets.size() < 2) continue;
      if (conjuncts.size() == max_pairs)
        throw Error(Errc::NotLtlExpressible, "fairness over more than " + std::to_string(max_pairs) +
                                                 " nondeterministic pairs exceeds the encoding budget");
      Formula here = Formula::letter(p.states[s]);
      Formula act = Formula::letter(p.actions[a]);
      Formula taken = (here && act.next()).eventually().always();
      Formula outcomes = Formula::truth();
      bool first = true;
      for (int t : targets) {
        Formula o = (here && (act && Formula::letter(p.states[t]).next()).next()).eventually().always();
        outcomes = first ? o : (outcomes && o);
        first = false;
      }
      conjuncts.push_back(taken.implies(outcomes));
    }
  if (conjuncts.empty()) return Formula::truth();
  Formula f = conjuncts[0];
  for (std::size_t i = 1; i < conjuncts.size(); ++i) f = f && conjuncts[i];
  return f;
}

namespace {

ltl::Formula expand_observations(const ltl::Formula& f, const Pondp& p) {
  using ltl::Formula;
  using ltl::Op;
  const ltl::Node& n = f.node();
  auto sub = [&](const ltl::NodePtr& c) { return expand_observations(Formula(c), p); };
  switch (n.op) {
    case Op::True:
    case Op::False: return f;
    case Op::Letter: {
      auto o = p.find_obs(n.letter);
      if (!o) return f;
      std::vector<std::string> states;
      for (std::size_t s = 0; s < p.states.size(); ++s)
        if (p.obs[s] == *o) states.push_back(p.states[s]);
      return Formula::any_of(states);
    }
    case Op::Not: return !sub(n.lhs);
    case Op::And: return sub(n.lhs) && sub(n.rhs);
    case Op::Or: return sub(n.lhs) || sub(n.rhs);
    case Op::Implies: return sub(n.lhs).implies(sub(n.rhs));
    case Op::Next: return sub(n.lhs).next();
    case Op::Until: return sub(n.lhs).until(sub(n.rhs));
    case Op::Release: return sub(n.lhs).release(sub(n.rhs));
    case Op::Eventually: return sub(n.lhs).eventually();
    case Op::Always: return sub(n.lhs).always();
  }
  return f;
}

}  // namespace

ltl::Formula constraint_formula(const TrajectoryConstraint& c, const Pondp& p, Level level,
                                std::size_t max_fair_pairs) {
  switch (c.kind) {
    case TrajectoryConstraint::Kind::Ltl:
      if (c.level == level) return c.formula;
      if (c.level == Level::Observation) return expand_observations(c.formula, p);
      throw Error(Errc::NotLtlExpressible, "state-level constraint cannot be read over observations");
    case TrajectoryConstraint::Kind::Fairness:
      if (level != Level::State) throw Error(Errc::NotLtlExpressible, "fairness needs state letters");
      return fairness_formula(p, max_fair_pairs);
    case TrajectoryConstraint::Kind::Explicit:
      throw Error(Errc::NotLtlExpressible, "explicit constraint '" + c.name + "' has no formula");
  }
  return {};
}

TrajectoryConstraint parse_constraint(const std::string& text, const Pondp& p) {
  static const std::regex builtin(R"(^\s*(qnp|qnp_strong)\s*\(\s*([^)\s]+)\s*\)\s*$)");
  static const std::regex word(R"(^\s*(\w+)\s*$)");
  std::vector<std::string> terms;
  for (std::size_t start = 0;;) {
    std::size_t pos = text.find("&&", start);
    terms.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 2;
  }
  auto as_builtin = [&](const std::string& t) -> std::optional<TrajectoryConstraint> {
    std::smatch m;
    if (std::regex_match(t, m, builtin))
      return m[1] == "qnp" ? qnp_constraint(p, m[2]) : qnp_strong_constraint(p, m[2]);
    if (std::regex_match(t, m, word)) {
      if (m[1] == "fairness") return TrajectoryConstraint::fairness();
      if (m[1] == "all") return TrajectoryConstraint::all();
    }
    return std::nullopt;
  };
  bool any_builtin = false;
  for (const auto& t : terms) any_builtin = any_builtin || as_builtin(t).has_value();
  ltl::Alphabet sigma = trajectory_alphabet(p, Level::Observation);
  if (!any_builtin) return TrajectoryConstraint::ltl(text, ltl::parse(text, &sigma));
  std::vector<TrajectoryConstraint> parts;
  for (const auto& t : terms) {
    if (auto b = as_builtin(t)) {
      parts.push_back(*b);
    } else {
      parts.push_back(TrajectoryConstraint::ltl(t, ltl::parse(t, &sigma)));
    }
  }
  if (parts.size() == 1) return parts[0];
  for (const auto& c : parts)
    if (c.kind == TrajectoryConstraint::Kind::Fairness)
      throw Error(Errc::NotLtlExpressible, "fairness cannot be conjoined with other constraints");
  return conjoin(parts);
}

namespace {

// Product of every trajectory of p with d. State node (s, q) has the
// priority of d after reading s's letter; action node (s, q', a) the
// priority after reading a.
detail::SearchGraph trajectory_product(const Pondp& p, const omega::Dpw& d, Level level, std::size_t budget) {
  detail::SearchGraph g;
  const int letters_before_actions = static_cast<int>(level == Level::State ? p.states.size() : p.observations.size());
  auto state_letter = [&](int s) { return level == Level::State ? s : p.obs[s]; };
  std::map<std::pair<int, int>, int> state_nodes;
  std::vector<std::pair<int, int>> todo;
  auto get = [&](int s, int q) {
    auto [it, inserted] = state_nodes.emplace(std::make_pair(s, q), 0);
    if (inserted) {
      if (g.size() >= budget) throw Error(Errc::SizeBudgetExceeded, "trajectory product exceeds the size budget");
      it->second = g.add(s, -1, d.priority[d.step(q, state_letter(s))]);
      todo.emplace_back(s, q);
    }
    return it->second;
  };
  for (int s : p.init) g.sources.push_back(get(s, d.initial));
  while (!todo.empty()) {
    auto [s, q] = todo.back();
    todo.pop_back();
    const int v = state_nodes.at({s, q});
    const int q1 = d.step(q, state_letter(s));
    for (int a : p.avail[s]) {
      const int q2 = d.step(q1, letters_before_actions + a);
      const int u = g.add(s, a, d.priority[q2]);
      g.succ[v].push_back(u);
      for (int t : p.succ[s].at(a)) {
        const int w = get(t, q2);
        g.succ[u].push_back(w);
      }
    }
  }
  return g;
}

}  // namespace

Implication implies(const TrajectoryConstraint& c, const TrajectoryConstraint& c_prime, const Pondp& p,
                    std::size_t budget) {
  using Kind = TrajectoryConstraint::Kind;
  if (c.kind == Kind::Explicit || c_prime.kind == Kind::Explicit)
    throw Error(Errc::NotLtlExpressible, "implication needs LTL-expressible constraints");
  const bool need_state = c_prime.kind == Kind::Fairness || (c.kind == Kind::Ltl && c.level == Level::State) ||
                          (c_prime.kind == Kind::Ltl && c_prime.level == Level::State);
  const Level level = need_state ? Level::State : Level::Observation;
  ltl::Formula f = !constraint_formula(c_prime, p, level);
  if (c.kind == Kind::Ltl) f = constraint_formula(c, p, level) && f;
  ltl::Alphabet sigma = trajectory_alphabet(p, level);
  omega::Dpw d = omega::ltl_to_dpw(f, sigma, budget);
  detail::SearchGraph g = trajectory_product(p, d, level, budget);
  detail::LassoQuery q;
  q.parity = true;
  q.fair = c.kind == Kind::Fairness;
  Implication out;
  if (auto l = detail::find_lasso(g, p, q)) {
    out.holds = false;
    out.witness = std::move(l);
  }
  return out;
}

}  // namespace genplan
