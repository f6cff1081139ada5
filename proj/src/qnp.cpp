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

#include "genplan/qnp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace genplan::qnp {

namespace {

constexpr double kEps = 1e-9;

struct Token {
  std::string text;
  int line = 0;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '{' || c == '}' || c == '[' || c == ']' || c == ',') {
      out.push_back({std::string(1, c), line});
      ++i;
    } else {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
             std::string("{}[],#").find(text[j]) == std::string::npos)
        ++j;
      out.push_back({text.substr(i, j - i), line});
      i = j;
    }
  }
  return out;
}

const std::set<std::string> kTopLevel = {"fluents", "vars", "init", "init_values", "action", "goal", "semantics"};
const std::set<std::string> kClauses = {"pre", "add", "del", "inc", "dec"};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Qnp run() {
    Qnp q;
    while (!done()) {
      Token t = take();
      if (t.text == "fluents") {
        for (auto& n : names()) q.fluents.push_back(n);
      } else if (t.text == "vars") {
        for (auto& n : names()) q.variables.push_back(n);
      } else if (t.text == "init") {
        for (auto& lit : names()) {
          bool positive = lit[0] != '!';
          std::string name = positive ? lit : lit.substr(1);
          if (name.empty() || is_numeric(name)) fail(t, "init lists fluent literals only");
          q.init[name] = positive;
        }
      } else if (t.text == "init_values") {
        std::string var = take_name("variable");
        expect("in");
        InitValues iv;
        Token open = take();
        if (open.text == "{") {
          if (peek() != "}")
            for (;;) {
              iv.values.push_back(number());
              Token sep = take();
              if (sep.text == "}") break;
              if (sep.text != ",") fail(sep, "expected ',' or '}'");
            }
          else
            take();
        } else if (open.text == "[") {
          iv.interval = true;
          iv.lo = number();
          expect(",");
          iv.hi = number();
          expect("]");
        } else {
          fail(open, "expected '{' or '['");
        }
        if (q.init_values.count(var)) fail(open, "duplicate init_values for " + var);
        q.init_values[var] = iv;
      } else if (t.text == "action") {
        Action a;
        a.name = take_name("action name", true);
        while (!done() && kClauses.count(peek())) {
          Token clause = take();
          for (auto& item : names()) {
            if (clause.text == "pre") add_literal(a.pre, item, clause);
            else if (clause.text == "add") a.add.push_back(item);
            else if (clause.text == "del") a.del.push_back(item);
            else {
              Effect e = clause.text == "inc" ? Effect::Inc : Effect::Dec;
              auto [it, inserted] = a.effects.emplace(item, e);
              if (!inserted && it->second != e)
                throw Error(Errc::SemanticError, "action " + a.name + " both increments and decrements " + item);
            }
          }
        }
        q.actions.push_back(std::move(a));
      } else if (t.text == "goal") {
        for (auto& item : names()) add_literal(q.goal, item, t);
      } else if (t.text == "semantics") {
        std::string var = take_name("variable");
        Semantics s;
        Token mode = take();
        if (mode.text == "unit") {
          s.mode = Semantics::Mode::Unit;
        } else if (mode.text == "two_valued") {
          s.mode = Semantics::Mode::TwoValued;
        } else if (mode.text == "steps") {
          s.mode = Semantics::Mode::Steps;
          expect("[");
          s.lo = number();
          expect(",");
          s.hi = number();
          expect("]");
          if (!done() && peek() == "grid") {
            take();
            s.grid = number();
          }
        } else {
          fail(mode, "unknown semantics '" + mode.text + "'");
        }
        q.semantics[var] = s;
      } else {
        fail(t, "unexpected '" + t.text + "'");
      }
    }
    return q;
  }

 private:
  static bool is_numeric(const std::string& s) {
    return s.size() > 2 && (s.compare(s.size() - 2, 2, "=0") == 0 || s.compare(s.size() - 2, 2, ">0") == 0);
  }

  void add_literal(Condition& c, const std::string& item, const Token& where) {
    if (is_numeric(item)) {
      std::string var = item.substr(0, item.size() - 2);
      bool zero = item[item.size() - 2] == '=';
      auto [it, inserted] = c.zero.emplace(var, zero);
      if (!inserted && it->second != zero) fail(where, "both " + var + "=0 and " + var + ">0 required");
      return;
    }
    bool positive = item[0] != '!';
    std::string name = positive ? item : item.substr(1);
    if (name.empty()) fail(where, "empty literal");
    auto [it, inserted] = c.fluents.emplace(name, positive);
    if (!inserted && it->second != positive) fail(where, "contradictory literals on " + name);
  }

  bool done() const { return pos_ >= tokens_.size(); }
  const std::string& peek() const { return tokens_[pos_].text; }
  Token take() {
    if (done()) throw Error(Errc::ParseError, "unexpected end of input");
    return tokens_[pos_++];
  }
  void expect(const std::string& text) {
    Token t = take();
    if (t.text != text) fail(t, "expected '" + text + "'");
  }
  std::string take_name(const char* what, bool allow_clause_words = false) {
    Token t = take();
    if (kTopLevel.count(t.text) || (!allow_clause_words && kClauses.count(t.text)) || (t.text.size() == 1 && std::ispunct(static_cast<unsigned char>(t.text[0]))))
      fail(t, std::string("expected ") + what);
    return t.text;
  }
  std::vector<std::string> names() {
    std::vector<std::string> out;
    while (!done() && !kTopLevel.count(peek()) && !kClauses.count(peek())) {
      Token t = take();
      if (t.text == ",") continue;
      if (t.text.size() == 1 && std::ispunct(static_cast<unsigned char>(t.text[0]))) fail(t, "unexpected '" + t.text + "'");
      out.push_back(t.text);
    }
    return out;
  }
  double number() {
    Token t = take();
    try {
      std::size_t used = 0;
      double v = std::stod(t.text, &used);
      if (used != t.text.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      fail(t, "expected a number, got '" + t.text + "'");
    }
    return 0;
  }
  [[noreturn]] void fail(const Token& t, const std::string& why) const {
    throw Error(Errc::ParseError, "line " + std::to_string(t.line) + ": " + why);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  if (std::abs(v - std::round(v)) < kEps) return std::to_string(static_cast<long long>(std::llround(v)));
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

bool InitValues::zero_possible() const {
  if (interval) return lo <= kEps;
  return std::any_of(values.begin(), values.end(), [](double v) { return std::abs(v) <= kEps; });
}

bool InitValues::positive_possible() const {
  if (interval) return hi > kEps;
  return std::any_of(values.begin(), values.end(), [](double v) { return v > kEps; });
}

bool InitValues::contains(double v) const {
  if (interval) return v >= lo - kEps && v <= hi + kEps;
  return std::any_of(values.begin(), values.end(), [&](double x) { return std::abs(x - v) <= kEps; });
}

const Action* Qnp::find_action(const std::string& name) const {
  for (const auto& a : actions)
    if (a.name == name) return &a;
  return nullptr;
}

const Semantics& Qnp::semantics_of(const std::string& variable) const {
  static const Semantics unit;
  auto it = semantics.find(variable);
  return it == semantics.end() ? unit : it->second;
}

void validate(Qnp& q) {
  auto fail = [](const std::string& why) { throw Error(Errc::SemanticError, why); };
  std::set<std::string> fluents, vars, actions;
  for (const auto& f : q.fluents)
    if (!fluents.insert(f).second) fail("duplicate fluent " + f);
  for (const auto& v : q.variables) {
    if (!vars.insert(v).second) fail("duplicate variable " + v);
    if (fluents.count(v)) fail(v + " is both a fluent and a variable");
  }
  auto check_condition = [&](const Condition& c, const std::string& where) {
    for (const auto& [f, _] : c.fluents)
      if (!fluents.count(f)) fail(where + " uses undeclared fluent " + f);
    for (const auto& [v, _] : c.zero)
      if (!vars.count(v)) fail(where + " uses undeclared variable " + v);
  };
  for (const auto& [f, _] : q.init)
    if (!fluents.count(f)) fail("init uses undeclared fluent " + f);
  for (const auto& v : q.variables) {
    auto it = q.init_values.find(v);
    if (it == q.init_values.end()) fail("no init_values for " + v);
    const InitValues& iv = it->second;
    if (iv.interval ? (iv.lo < 0 || iv.hi < iv.lo) : iv.values.empty())
      fail("empty or negative init_values for " + v);
    for (double x : iv.values)
      if (x < 0) fail("negative initial value for " + v);
  }
  for (const auto& [v, _] : q.init_values)
    if (!vars.count(v)) fail("init_values for undeclared variable " + v);
  for (const auto& [v, s] : q.semantics) {
    if (!vars.count(v)) fail("semantics for undeclared variable " + v);
    if (s.grid <= 0) fail("grid of " + v + " must be positive");
    if (s.mode == Semantics::Mode::Steps && (s.lo < 0 || s.hi < s.lo || s.hi <= 0))
      fail("step range of " + v + " must satisfy 0 <= lo <= hi, hi > 0");
  }
  check_condition(q.goal, "goal");
  q.diagnostics.clear();
  for (const auto& a : q.actions) {
    if (!actions.insert(a.name).second) fail("duplicate action " + a.name);
    check_condition(a.pre, "action " + a.name);
    for (const auto& f : a.add)
      if (!fluents.count(f)) fail("action " + a.name + " adds undeclared fluent " + f);
    for (const auto& f : a.del)
      if (!fluents.count(f)) fail("action " + a.name + " deletes undeclared fluent " + f);
    int decrements = 0;
    for (const auto& [v, e] : a.effects) {
      if (!vars.count(v)) fail("action " + a.name + " changes undeclared variable " + v);
      if (e == Effect::Dec) {
        ++decrements;
        auto it = a.pre.zero.find(v);
        if (it == a.pre.zero.end() || it->second)
          q.diagnostics.push_back("action " + a.name + " decrements " + v + " without precondition " + v + ">0");
      }
    }
    if (decrements > 1) q.diagnostics.push_back("action " + a.name + " decrements more than one variable");
  }
}

Qnp parse(const std::string& text) {
  Qnp q = Parser(tokenize(text)).run();
  validate(q);
  return q;
}

std::string to_text(const Qnp& q) {
  std::ostringstream os;
  auto join = [&](const std::vector<std::string>& xs) {
    for (const auto& x : xs) os << ' ' << x;
  };
  auto condition = [&](const Condition& c) {
    for (const auto& [f, v] : c.fluents) os << ' ' << (v ? "" : "!") << f;
    for (const auto& [x, z] : c.zero) os << ' ' << x << (z ? "=0" : ">0");
  };
  if (!q.fluents.empty()) {
    os << "fluents";
    join(q.fluents);
    os << '\n';
  }
  os << "vars";
  join(q.variables);
  os << '\n';
  if (!q.init.empty()) {
    os << "init";
    for (const auto& [f, v] : q.init) os << ' ' << (v ? "" : "!") << f;
    os << '\n';
  }
  for (const auto& v : q.variables) {
    const InitValues& iv = q.init_values.at(v);
    os << "init_values " << v << " in ";
    if (iv.interval) {
      os << '[' << format_number(iv.lo) << ", " << format_number(iv.hi) << "]\n";
    } else {
      os << '{';
      for (std::size_t i = 0; i < iv.values.size(); ++i) os << (i ? ", " : "") << format_number(iv.values[i]);
      os << "}\n";
    }
  }
  for (const auto& a : q.actions) {
    os << "action " << a.name;
    if (!a.pre.empty()) {
      os << "\n  pre";
      condition(a.pre);
    }
    if (!a.add.empty()) {
      os << "\n  add";
      join(a.add);
    }
    if (!a.del.empty()) {
      os << "\n  del";
      join(a.del);
    }
    for (Effect e : {Effect::Inc, Effect::Dec}) {
      std::vector<std::string> vs;
      for (const auto& [v, x] : a.effects)
        if (x == e) vs.push_back(v);
      if (!vs.empty()) {
        os << "\n  " << (e == Effect::Inc ? "inc" : "dec");
        join(vs);
      }
    }
    os << '\n';
  }
  os << "goal";
  condition(q.goal);
  os << '\n';
  for (const auto& [v, s] : q.semantics) {
    os << "semantics " << v << ' ';
    switch (s.mode) {
      case Semantics::Mode::Unit: os << "unit"; break;
      case Semantics::Mode::TwoValued: os << "two_valued"; break;
      case Semantics::Mode::Steps:
        os << "steps [" << format_number(s.lo) << ", " << format_number(s.hi) << "] grid " << format_number(s.grid);
        break;
    }
    os << '\n';
  }
  return os.str();
}

std::string observation_name(const Qnp& q, const std::vector<char>& fluents, const std::vector<char>& positive) {
  std::string out;
  for (std::size_t i = 0; i < q.fluents.size(); ++i) {
    if (!out.empty()) out += ',';
    out += (fluents[i] ? "" : "!") + q.fluents[i];
  }
  for (std::size_t i = 0; i < q.variables.size(); ++i) {
    if (!out.empty()) out += ',';
    out += q.variables[i] + (positive[i] ? ">0" : "=0");
  }
  return out;
}

bool holds(const Qnp& q, const Condition& c, const std::vector<char>& fluents, const std::vector<char>& positive) {
  for (const auto& [f, v] : c.fluents) {
    auto i = std::find(q.fluents.begin(), q.fluents.end(), f) - q.fluents.begin();
    if (static_cast<bool>(fluents[i]) != v) return false;
  }
  for (const auto& [x, zero] : c.zero) {
    auto i = std::find(q.variables.begin(), q.variables.end(), x) - q.variables.begin();
    if (static_cast<bool>(positive[i]) == zero) return false;
  }
  return true;
}

namespace {

// Concrete state: fluent truth values and variable values in grid units.
struct Concrete {
  std::vector<char> fluents;
  std::vector<long long> values;
  bool operator<(const Concrete& o) const { return std::tie(fluents, values) < std::tie(o.fluents, o.values); }
};

enum class Naming { Values, Boolean };

struct Builder {
  const Qnp& q;
  std::vector<Semantics> sem;
  std::vector<long long> cap;  // per variable, in grid units; <0 = unbounded
  Naming naming = Naming::Values;
  bool capped = false;

  std::vector<char> positive(const Concrete& c) const {
    std::vector<char> out(c.values.size());
    for (std::size_t i = 0; i < c.values.size(); ++i) out[i] = c.values[i] > 0;
    return out;
  }

  std::string name(const Concrete& c) const {
    if (naming == Naming::Boolean) return observation_name(q, c.fluents, positive(c));
    std::string out;
    for (std::size_t i = 0; i < q.fluents.size(); ++i) {
      if (!out.empty()) out += ',';
      out += (c.fluents[i] ? "" : "!") + q.fluents[i];
    }
    for (std::size_t i = 0; i < q.variables.size(); ++i) {
      if (!out.empty()) out += ',';
      out += q.variables[i] + "=" + format_number(static_cast<double>(c.values[i]) * sem[i].grid);
    }
    return out;
  }

  std::vector<long long> step_range(std::size_t i) const {
    const Semantics& s = sem[i];
    long long lo = static_cast<long long>(std::ceil(s.lo / s.grid - kEps));
    long long hi = static_cast<long long>(std::floor(s.hi / s.grid + kEps));
    std::vector<long long> out;
    for (long long k = lo; k <= hi; ++k) out.push_back(k);
    return out;
  }

  std::vector<long long> outcomes(std::size_t i, long long x, Effect e) {
    std::set<long long> out;
    const Semantics& s = sem[i];
    if (s.mode == Semantics::Mode::TwoValued) {
      if (e == Effect::Inc) out.insert(1);
      else if (x > 0) out.insert({0, x});
      else out.insert(0);
    } else {
      std::vector<long long> steps = s.mode == Semantics::Mode::Unit ? std::vector<long long>{1} : step_range(i);
      for (long long d : steps) {
        if (e == Effect::Dec) {
          out.insert(std::max(0LL, x - d));
        } else {
          if (x == 0 && d == 0) continue;
          long long v = x + d;
          if (cap[i] >= 0 && v > cap[i]) {
            v = cap[i];
            capped = true;
          }
          out.insert(v);
        }
      }
    }
    return {out.begin(), out.end()};
  }

  std::vector<Concrete> successors(const Concrete& c, const Action& a) {
    Concrete base = c;
    for (const auto& f : a.del) base.fluents[index(q.fluents, f)] = 0;
    for (const auto& f : a.add) base.fluents[index(q.fluents, f)] = 1;
    std::vector<Concrete> out{base};
    for (const auto& [v, e] : a.effects) {
      const std::size_t i = index(q.variables, v);
      std::vector<Concrete> next;
      for (const auto& partial : out)
        for (long long x : outcomes(i, c.values[i], e)) {
          Concrete t = partial;
          t.values[i] = x;
          next.push_back(std::move(t));
        }
      out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(), [](const Concrete& x, const Concrete& y) {
                return !(x < y) && !(y < x);
              }), out.end());
    return out;
  }

  static std::size_t index(const std::vector<std::string>& names, const std::string& n) {
    return static_cast<std::size_t>(std::find(names.begin(), names.end(), n) - names.begin());
  }

  // Every boolean valuation in a fixed order: fluents true first, then X=0 first.
  std::vector<std::pair<std::vector<char>, std::vector<char>>> valuations() const {
    const std::size_t nf = q.fluents.size(), nv = q.variables.size();
    if (nf + nv > 20) throw Error(Errc::SizeBudgetExceeded, "too many boolean atoms to enumerate observations");
    std::vector<std::pair<std::vector<char>, std::vector<char>>> out;
    for (std::size_t bits = 0; bits < (std::size_t{1} << (nf + nv)); ++bits) {
      std::vector<char> f(nf), p(nv);
      for (std::size_t i = 0; i < nf; ++i) f[i] = !((bits >> (nf + nv - 1 - i)) & 1);
      for (std::size_t i = 0; i < nv; ++i) p[i] = (bits >> (nv - 1 - i)) & 1;
      out.emplace_back(std::move(f), std::move(p));
    }
    return out;
  }

  Pondp build(const std::vector<Concrete>& initial, bool all_observations, std::size_t budget = kDefaultBudget) {
    Pondp p;
    for (const auto& a : q.actions) p.actions.push_back(a.name);
    std::map<Concrete, int> ids;
    std::vector<Concrete> states;
    auto get = [&](const Concrete& c) {
      auto [it, inserted] = ids.emplace(c, static_cast<int>(states.size()));
      if (inserted) {
        if (states.size() >= budget) throw Error(Errc::SizeBudgetExceeded, "instance exceeds the size budget");
        states.push_back(c);
      }
      return it->second;
    };
    for (const auto& c : initial) p.init.push_back(get(c));
    std::vector<std::map<int, std::vector<int>>> succ;
    std::vector<std::vector<int>> avail;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const Concrete c = states[i];
      const std::vector<char> pos = positive(c);
      std::vector<int> av;
      std::map<int, std::vector<int>> next;
      for (std::size_t a = 0; a < q.actions.size(); ++a) {
        if (!holds(q, q.actions[a].pre, c.fluents, pos)) continue;
        av.push_back(static_cast<int>(a));
        auto& targets = next[static_cast<int>(a)];
        for (const auto& t : successors(c, q.actions[a])) targets.push_back(get(t));
        std::sort(targets.begin(), targets.end());
      }
      avail.push_back(std::move(av));
      succ.push_back(std::move(next));
    }
    std::sort(p.init.begin(), p.init.end());
    p.init.erase(std::unique(p.init.begin(), p.init.end()), p.init.end());
    p.avail = std::move(avail);
    p.succ = std::move(succ);

    ClassInfo info;
    if (all_observations) {
      for (const auto& [f, pos] : valuations()) p.observations.push_back(observation_name(q, f, pos));
    }
    std::map<std::string, int> obs_id;
    for (std::size_t i = 0; i < p.observations.size(); ++i) obs_id[p.observations[i]] = static_cast<int>(i);
    for (const auto& c : states) {
      p.states.push_back(name(c));
      const std::vector<char> pos = positive(c);
      p.goal.push_back(holds(q, q.goal, c.fluents, pos));
      const std::string o = observation_name(q, c.fluents, pos);
      if (!all_observations) {
        obs_id[o] = static_cast<int>(p.observations.size());
        p.observations.push_back(o);
      }
      p.obs.push_back(obs_id.at(o));
    }
    // Class metadata over the observation set.
    for (const auto& o : p.observations) {
      std::vector<char> f(q.fluents.size()), pos(q.variables.size());
      std::stringstream ss(o);
      std::string tok;
      std::size_t k = 0;
      while (std::getline(ss, tok, ',')) {
        if (k < f.size()) f[k] = tok[0] != '!';
        else pos[k - f.size()] = tok.back() == '0' && tok[tok.size() - 2] == '>';
        ++k;
      }
      if (holds(q, q.goal, f, pos)) info.goal_observations.push_back(o);
      auto& av = info.avail_by_obs[o];
      for (const auto& a : q.actions)
        if (holds(q, a.pre, f, pos)) av.push_back(a.name);
    }
    p.class_info = std::move(info);
    for (const auto& v : q.variables) {
      VariableLabels l;
      l.variable = v;
      const std::size_t i = index(q.variables, v);
      for (const auto& o : p.observations) {
        // The variable's token sits after the fluent tokens.
        std::stringstream ss(o);
        std::string tok;
        std::size_t k = 0;
        while (std::getline(ss, tok, ',')) {
          if (k == q.fluents.size() + i && tok == v + "=0") l.zero_observations.push_back(o);
          ++k;
        }
      }
      for (const auto& a : q.actions) {
        auto it = a.effects.find(v);
        if (it == a.effects.end()) continue;
        (it->second == Effect::Inc ? l.inc_actions : l.dec_actions).push_back(a.name);
      }
      p.labels.push_back(std::move(l));
    }
    return p;
  }
};

Builder make_builder(const Qnp& q) {
  Builder b{q, {}, {}, Naming::Values, false};
  for (const auto& v : q.variables) {
    b.sem.push_back(q.semantics_of(v));
    b.cap.push_back(-1);
  }
  return b;
}

std::vector<char> initial_fluents(const Qnp& q) {
  std::vector<char> f(q.fluents.size(), 0);
  for (std::size_t i = 0; i < q.fluents.size(); ++i) {
    auto it = q.init.find(q.fluents[i]);
    f[i] = it != q.init.end() && it->second;
  }
  return f;
}

// Initial states of the boolean abstraction: every combination of the
// possible zero/positive values.
std::vector<Concrete> boolean_initial_states(const Qnp& q) {
  std::vector<Concrete> out{{initial_fluents(q), {}}};
  for (const auto& v : q.variables) {
    const InitValues& iv = q.init_values.at(v);
    std::vector<Concrete> next;
    for (const auto& c : out) {
      if (iv.zero_possible()) {
        next.push_back(c);
        next.back().values.push_back(0);
      }
      if (iv.positive_possible()) {
        next.push_back(c);
        next.back().values.push_back(1);
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

Instance instantiate(const Qnp& q, const std::map<std::string, double>& values, double bound) {
  Builder b = make_builder(q);
  Concrete init{initial_fluents(q), {}};
  for (std::size_t i = 0; i < q.variables.size(); ++i) {
    const std::string& v = q.variables[i];
    auto it = values.find(v);
    if (it == values.end()) throw Error(Errc::OutOfRange, "no initial value for " + v);
    const double x = it->second;
    if (!q.init_values.at(v).contains(x)) throw Error(Errc::OutOfRange, v + "=" + format_number(x) + " is not allowed");
    const double grid = b.sem[i].mode == Semantics::Mode::TwoValued ? 1.0 : b.sem[i].grid;
    const long long k = std::llround(x / grid);
    if (std::abs(static_cast<double>(k) * grid - x) > kEps)
      throw Error(Errc::OutOfRange, v + "=" + format_number(x) + " is off the value grid");
    const long long cap = static_cast<long long>(std::floor(bound / grid + kEps));
    if (k > cap) throw Error(Errc::BoundTooSmall, "bound " + format_number(bound) + " is below " + v + "=" + format_number(x));
    if (cap < 1)
      for (const auto& a : q.actions)
        if (a.effects.count(v) && a.effects.at(v) == Effect::Inc)
          throw Error(Errc::BoundTooSmall, "bound leaves no room to increment " + v);
    b.cap[i] = cap;
    init.values.push_back(k);
  }
  Instance out;
  out.problem = b.build({init}, true);
  out.capped = b.capped;
  out.problem.metadata["capped"] = b.capped ? "true" : "false";
  out.problem.metadata["bound"] = format_number(bound);
  return out;
}

Pondp two_valued_instance(const Qnp& q) {
  Builder b = make_builder(q);
  for (auto& s : b.sem) s = Semantics{Semantics::Mode::TwoValued, 1, 1, 1};
  for (auto& c : b.cap) c = 1;
  return b.build(boolean_initial_states(q), true);
}

PondpClass instance_class(const Qnp& q, const std::vector<std::map<std::string, double>>& choices, double bound) {
  PondpClass cls;
  for (const auto& c : choices) cls.members.push_back(instantiate(q, c, bound).problem);
  if (cls.members.empty()) throw Error(Errc::InvalidInput, "no initial values chosen");
  const Pondp& first = cls.members.front();
  cls.actions = first.actions;
  cls.observations = first.observations;
  cls.goal_observations = first.class_info->goal_observations;
  cls.avail_by_obs = first.class_info->avail_by_obs;
  return cls;
}

Fondp syntactic_projection(const Qnp& q) {
  Builder b = make_builder(q);
  for (auto& s : b.sem) s = Semantics{Semantics::Mode::TwoValued, 1, 1, 1};
  for (auto& c : b.cap) c = 1;
  b.naming = Naming::Boolean;
  return b.build(boolean_initial_states(q), false);
}

bool similar(const Qnp& a, const Qnp& b) {
  if (a.fluents != b.fluents || a.variables != b.variables || a.actions != b.actions || !(a.goal == b.goal))
    return false;
  auto truth = [](const Qnp& q, const std::string& f) {
    auto it = q.init.find(f);
    return it != q.init.end() && it->second;
  };
  for (const auto& f : a.fluents)
    if (truth(a, f) != truth(b, f)) return false;
  for (const auto& v : a.variables) {
    const InitValues& x = a.init_values.at(v);
    const InitValues& y = b.init_values.at(v);
    if (x.zero_possible() != y.zero_possible() || x.positive_possible() != y.positive_possible()) return false;
  }
  return true;
}

Qnp close_qnp(const Qnp& q) {
  for (const auto& a : q.actions) {
    int decrements = 0;
    for (const auto& [v, e] : a.effects) {
      if (e != Effect::Dec) continue;
      ++decrements;
      auto it = a.pre.zero.find(v);
      if (it == a.pre.zero.end() || it->second)
        throw Error(Errc::NotClosureEligible, "action " + a.name + " decrements " + v + " without precondition " + v + ">0");
    }
    if (decrements > 1) throw Error(Errc::NotClosureEligible, "action " + a.name + " decrements several variables");
  }
  Qnp out = q;
  for (const auto& v : q.variables) {
    const std::string flag = "q_" + v;
    if (std::find(out.fluents.begin(), out.fluents.end(), flag) != out.fluents.end())
      throw Error(Errc::NotClosureEligible, "fluent " + flag + " already exists");
    out.fluents.push_back(flag);
    out.init[flag] = false;
  }
  for (auto& a : out.actions)
    for (const auto& [v, e] : a.effects) a.pre.fluents["q_" + v] = e == Effect::Dec;
  for (const auto& v : q.variables) {
    Action set;
    set.name = "set(" + v + ")";
    set.add = {"q_" + v};
    Action unset;
    unset.name = "unset(" + v + ")";
    unset.pre.zero[v] = true;
    unset.del = {"q_" + v};
    out.actions.push_back(std::move(set));
    out.actions.push_back(std::move(unset));
  }
  validate(out);
  return out;
}

NamedRun simulate(const Qnp& q, const std::map<std::string, double>& values, const Policy& mu, Resolver& resolver,
                  const RunOptions& opts) {
  Builder b = make_builder(q);
  Concrete c{initial_fluents(q), {}};
  for (std::size_t i = 0; i < q.variables.size(); ++i) {
    const std::string& v = q.variables[i];
    auto it = values.find(v);
    if (it == values.end()) throw Error(Errc::OutOfRange, "no initial value for " + v);
    if (!q.init_values.at(v).contains(it->second))
      throw Error(Errc::OutOfRange, v + "=" + format_number(it->second) + " is not allowed");
    c.values.push_back(std::llround(it->second / b.sem[i].grid));
  }
  std::map<std::string, int> policy_obs;
  for (std::size_t o = 0; o < mu.observations.size(); ++o) policy_obs[mu.observations[o]] = static_cast<int>(o);

  NamedRun run;
  std::map<std::pair<std::string, int>, std::size_t> seen;
  int m = mu.initial;
  for (;;) {
    const std::string name = b.name(c);
    const std::vector<char> pos = b.positive(c);
    if (opts.detect_lasso) {
      auto [it, inserted] = seen.emplace(std::make_pair(name, m), run.states.size());
      if (!inserted) {
        run.kind = RunKind::Lasso;
        run.loop_start = it->second;
        return run;
      }
    }
    run.states.push_back(name);
    const bool at_goal = holds(q, q.goal, c.fluents, pos);
    run.goal_reached = run.goal_reached || at_goal;
    if (opts.stop_at_goal && at_goal) {
      run.kind = RunKind::Finite;
      return run;
    }
    auto o = policy_obs.find(observation_name(q, c.fluents, pos));
    const int pa = o == policy_obs.end() ? -1 : mu.output[m][o->second];
    if (pa < 0) {
      run.kind = RunKind::Finite;
      return run;
    }
    const Action* a = q.find_action(mu.actions[pa]);
    if (!a || !holds(q, a->pre, c.fluents, pos))
      throw Error(Errc::InvalidPolicy, "policy selects " + mu.actions[pa] + ", unavailable in " + name);
    if (run.actions.size() >= opts.max_steps) {
      run.kind = RunKind::Truncated;
      return run;
    }
    std::vector<Concrete> next = b.successors(c, *a);
    std::vector<std::string> names;
    for (const auto& t : next) names.push_back(b.name(t));
    m = mu.update[m][o->second];
    run.actions.push_back(a->name);
    c = next[resolver.choose(names)];
  }
}

std::map<std::string, double> sample_initial_values(const Qnp& q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::map<std::string, double> out;
  for (const auto& v : q.variables) {
    const InitValues& iv = q.init_values.at(v);
    const double grid = q.semantics_of(v).grid;
    if (!iv.interval) {
      out[v] = iv.values[std::uniform_int_distribution<std::size_t>(0, iv.values.size() - 1)(rng)];
    } else {
      const long long lo = static_cast<long long>(std::ceil(iv.lo / grid - kEps));
      const long long hi = static_cast<long long>(std::floor(iv.hi / grid + kEps));
      if (hi < lo) throw Error(Errc::OutOfRange, "no grid value inside the initial interval of " + v);
      out[v] = static_cast<double>(std::uniform_int_distribution<long long>(lo, hi)(rng)) * grid;
    }
  }
  return out;
}

}  // namespace genplan::qnp
