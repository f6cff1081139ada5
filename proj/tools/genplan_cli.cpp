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

// Command-line front end: genplan <command> [options].
//
// Exit codes: 0 success, 1 negative answer (UNREALIZABLE, UNSOLVABLE,
// NOT_A_SOLUTION), 2 malformed input or other errors.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "genplan/constraints.hpp"
#include "genplan/fond.hpp"
#include "genplan/io.hpp"
#include "genplan/projection.hpp"
#include "genplan/qnp.hpp"
#include "genplan/synthesis.hpp"
#include "genplan/verify.hpp"

using namespace genplan;
using io::Json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::size_t budget = kDefaultBudget;
  std::string format = "json";
  bool verbose = false;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// "X=20,Y=30"
std::map<std::string, double> parse_values(const std::string& text) {
  std::map<std::string, double> out;
  if (text.empty()) return out;
  for (const auto& item : split(text, ',')) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw Error(Errc::InvalidInput, "expected VAR=value, got '" + item + "'");
    try {
      out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(Errc::InvalidInput, "bad value in '" + item + "'");
    }
  }
  return out;
}

Pondp load_problem(const std::string& path) {
  if (ends_with(path, ".qnp")) return qnp::syntactic_projection(qnp::parse(io::read_file(path)));
  return io::problem_from_json(io::parse_json(io::read_file(path)));
}

Policy load_policy(const std::string& path) { return io::policy_from_json(io::parse_json(io::read_file(path))); }

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

void save(const std::string& path, const Json& j) {
  if (!path.empty()) io::write_file(path, j.dump(2) + "\n");
}

void log(const Globals& g, const std::string& what) {
  if (g.verbose) std::cerr << "genplan: " << what << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  if (const char* env = std::getenv("GENPLAN_BUDGET")) {
    try {
      g.budget = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "genplan: ignoring malformed GENPLAN_BUDGET\n";
    }
  }

  CLI::App app{"Generalized planning with trajectory constraints"};
  app.require_subcommand(1);
  app.add_option("--seed", g.seed, "Seed for nondeterministic choices")->capture_default_str();
  app.add_option("--budget", g.budget, "Cap on automaton and product sizes (env GENPLAN_BUDGET)")->capture_default_str();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "dot"}))->capture_default_str();
  app.add_flag("--verbose", g.verbose, "Progress messages on stderr");

  std::string input, output, policy_path, constraint_text, mode = "fair", init_text, alphabet_text;
  std::vector<std::string> members;
  double bound = 16;
  bool close = false, direct = true;
  std::size_t max_steps = 100000;

  auto* project = app.add_subcommand("project", "Observation projection of a class of problems");
  project->add_option("class", input, "Class file (.json) or QNP (.qnp)")->required();
  project->add_option("--member", members, "Initial values of a QNP member, X=1,Y=2 (repeatable)");
  project->add_option("--bound", bound, "Value bound for QNP members")->capture_default_str();
  project->add_option("-o,--output", output, "Write the projection here");

  auto* synth = app.add_subcommand("synthesize", "Synthesize a policy under a trajectory constraint");
  synth->add_option("problem", input, "Fully observable problem (.json or .qnp)")->required();
  synth->add_option("--constraint", constraint_text, "Constraint: LTL, fairness, all, qnp(X), ... joined by &&");
  synth->add_option("-o,--output", output, "Write the policy here");
  synth->add_flag("!--generic", direct, "Always go through the LTL pipeline, even for qnp constraints");

  auto* compile = app.add_subcommand("qnp2fond", "Compile a QNP to its boolean projection");
  compile->add_option("qnp", input, "QNP file")->required();
  compile->add_option("-o,--output", output, "Write the problem here");
  compile->add_flag("--close", close, "Close the QNP first");

  auto* plan = app.add_subcommand("plan", "Strong-cyclic planning");
  plan->add_option("problem", input, "Fully observable problem (.json or .qnp)")->required();
  plan->add_option("-o,--output", output, "Write the policy here");
  plan->add_flag("--close", close, "Close a .qnp input before planning");

  auto* verify = app.add_subcommand("verify", "Check a policy");
  verify->add_option("--mode", mode, "Solution notion")->check(CLI::IsMember({"fair", "strong", "constraint"}))->capture_default_str();
  verify->add_option("problem", input, "Problem (.json or .qnp)")->required();
  verify->add_option("policy", policy_path, "Policy file")->required();
  verify->add_option("constraint", constraint_text, "Constraint for --mode constraint");

  auto* simulate = app.add_subcommand("simulate", "Run a policy");
  simulate->add_option("problem", input, "Problem (.json) or QNP (.qnp)")->required();
  simulate->add_option("--policy", policy_path, "Policy file")->required();
  simulate->add_option("--init", init_text, "Initial QNP values, X=20,Y=30 (default: sampled with --seed)");
  simulate->add_option("--max-steps", max_steps, "Step limit")->capture_default_str();

  auto* ltl2dpw = app.add_subcommand("ltl2dpw", "Translate an LTL formula to a parity automaton");
  ltl2dpw->add_option("formula", constraint_text, "Formula")->required();
  ltl2dpw->add_option("--alphabet", alphabet_text, "Comma-separated letters");
  ltl2dpw->add_option("--problem", input, "Take the alphabet from a problem's observations and actions");

  auto* show = app.add_subcommand("show", "Graph export of a problem, policy product or automaton");
  show->add_option("file", input, "Problem (.json, .qnp) or automaton (.json with priority)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), 2);
  }

  try {
    if (*project) {
      PondpClass cls;
      if (ends_with(input, ".qnp")) {
        qnp::Qnp q = qnp::parse(io::read_file(input));
        std::vector<std::map<std::string, double>> choices;
        for (const auto& m : members) choices.push_back(parse_values(m));
        cls = qnp::instance_class(q, choices, bound);
      } else {
        Json j = io::parse_json(io::read_file(input));
        for (const auto& m : j.at("members")) cls.members.push_back(io::problem_from_json(m));
        cls.actions = j.at("actions").get<std::vector<std::string>>();
        cls.observations = j.at("observations").get<std::vector<std::string>>();
        cls.goal_observations = j.at("goal_observations").get<std::vector<std::string>>();
        for (const auto& [o, acts] : j.at("avail_by_obs").items())
          cls.avail_by_obs[o] = acts.get<std::vector<std::string>>();
      }
      ProjectionResult r = observation_projection(cls);
      save(output, io::problem_to_json(r.fondp));
      if (g.format == "dot") {
        std::cout << io::problem_to_dot(r.fondp);
        return 0;
      }
      Json diags = Json::array();
      for (const auto& d : r.diagnostics) diags.push_back({{"invariant", d.invariant}, {"witness", d.witness}});
      emit({{"command", "project"}, {"problem", io::problem_to_json(r.fondp)}, {"diagnostics", diags}});
      return 0;
    }

    if (*synth) {
      Pondp p = load_problem(input);
      TrajectoryConstraint psi =
          constraint_text.empty() ? TrajectoryConstraint::all() : parse_constraint(constraint_text, p);
      log(g, "objective for " + psi.name);
      omega::SynthesisResult r = omega::synthesize(p, psi, {g.budget, direct});
      log(g, "automaton has " + std::to_string(r.dpw.num_states()) + " states, game has " +
                 std::to_string(r.game.game.size()) + " nodes");
      if (!r.realizable) {
        if (g.format == "dot") {
          std::cout << io::game_to_dot(r.game.game);
          return 1;
        }
        emit({{"command", "synthesize"},
              {"result", "UNREALIZABLE"},
              {"reason", r.reason},
              {"counterstrategy", r.counterstrategy}});
        return 1;
      }
      Verdict v = check_solution(p, r.policy, SolutionMode::under(psi), {g.budget});
      save(output, io::policy_to_json(r.policy));
      if (g.format == "dot") {
        std::cout << io::dpw_to_dot(r.dpw);
        return v.solved() ? 0 : 1;
      }
      emit({{"command", "synthesize"},
            {"result", "REALIZABLE"},
            {"objective", r.objective.to_string()},
            {"dpw_states", r.dpw.num_states()},
            {"dpw_priorities", r.dpw.num_priorities()},
            {"game_nodes", r.game.game.size()},
            {"policy", io::policy_to_json(r.policy)},
            {"verification", io::verdict_to_json(p, v)}});
      return v.solved() ? 0 : 1;
    }

    if (*compile) {
      qnp::Qnp q = qnp::parse(io::read_file(input));
      for (const auto& d : q.diagnostics) log(g, d);
      if (close) q = qnp::close_qnp(q);
      Fondp p = qnp::syntactic_projection(q);
      save(output, io::problem_to_json(p));
      if (g.format == "dot") {
        std::cout << io::problem_to_dot(p);
        return 0;
      }
      emit({{"command", "qnp2fond"}, {"closed", close}, {"diagnostics", q.diagnostics}, {"problem", io::problem_to_json(p)}});
      return 0;
    }

    if (*plan) {
      Pondp p = ends_with(input, ".qnp") && close
                    ? qnp::syntactic_projection(qnp::close_qnp(qnp::parse(io::read_file(input))))
                    : load_problem(input);
      auto mu = strong_cyclic_plan(p);
      if (!mu) {
        emit({{"command", "plan"}, {"result", "UNSOLVABLE"}});
        return 1;
      }
      Verdict v = verify_strong_cyclic(p, *mu);
      save(output, io::policy_to_json(*mu));
      emit({{"command", "plan"},
            {"result", "SOLVED"},
            {"policy", io::policy_to_json(*mu)},
            {"verification", io::verdict_to_json(p, v)}});
      return v.solved() ? 0 : 1;
    }

    if (*verify) {
      Pondp p = load_problem(input);
      Policy mu = load_policy(policy_path);
      SolutionMode m = SolutionMode::fair();
      if (mode == "strong") {
        m = SolutionMode::strong();
      } else if (mode == "constraint") {
        if (constraint_text.empty()) throw Error(Errc::InvalidInput, "--mode constraint needs a constraint");
        m = SolutionMode::under(parse_constraint(constraint_text, p));
      }
      Verdict v = check_solution(p, mu, m, {g.budget});
      if (g.format == "dot" && v.lasso_counterexample) {
        std::cout << io::lasso_to_dot(p, *v.lasso_counterexample);
      } else {
        Json j{{"command", "verify"}};
        j.update(io::verdict_to_json(p, v));
        emit(j);
      }
      if (v.kind == VerdictKind::InvalidPolicy) return 2;
      return v.solved() ? 0 : 1;
    }

    if (*simulate) {
      Policy mu = load_policy(policy_path);
      RunOptions opts{max_steps, true, true};
      Resolver r = Resolver::seeded(g.seed);
      Json j{{"command", "simulate"}};
      bool goal = false;
      if (ends_with(input, ".qnp")) {
        qnp::Qnp q = qnp::parse(io::read_file(input));
        auto values = init_text.empty() ? qnp::sample_initial_values(q, g.seed) : parse_values(init_text);
        qnp::NamedRun run = qnp::simulate(q, values, mu, r, opts);
        Json init = Json::object();
        for (const auto& [k, v] : values) init[k] = v;
        j["init"] = init;
        j["kind"] = run_kind_name(run.kind);
        j["steps"] = run.actions.size();
        j["goal_reached"] = run.goal_reached;
        j["states"] = run.states;
        j["actions"] = run.actions;
        if (run.kind == RunKind::Lasso) j["loop_start"] = run.loop_start;
        goal = run.goal_reached;
      } else {
        Pondp p = load_problem(input);
        RunResult run = run_policy(p, mu, r, opts);
        j["kind"] = run_kind_name(run.kind);
        j["goal_reached"] = run.goal_reached;
        if (run.kind == RunKind::Lasso) {
          j["steps"] = run.lasso.actions.size();
          j["trace"] = io::lasso_to_json(p, run.lasso);
        } else {
          j["steps"] = run.trajectory.actions.size();
          j["trace"] = io::trajectory_to_json(p, run.trajectory);
        }
        goal = run.goal_reached;
      }
      emit(j);
      return goal ? 0 : 1;
    }

    if (*ltl2dpw) {
      ltl::Alphabet sigma;
      if (!input.empty()) sigma = trajectory_alphabet(load_problem(input), Level::Observation);
      else if (!alphabet_text.empty()) sigma = ltl::Alphabet(split(alphabet_text, ','));
      else throw Error(Errc::InvalidInput, "ltl2dpw needs --alphabet or --problem");
      ltl::Formula f = ltl::parse(constraint_text, &sigma);
      omega::Dpw d = omega::ltl_to_dpw(f, sigma, g.budget);
      if (g.format == "dot") std::cout << io::dpw_to_dot(d);
      else emit(io::dpw_to_json(d));
      return 0;
    }

    if (*show) {
      if (ends_with(input, ".qnp")) {
        std::cout << io::problem_to_dot(load_problem(input));
        return 0;
      }
      Json j = io::parse_json(io::read_file(input));
      if (j.contains("priority")) std::cout << io::dpw_to_dot(io::dpw_from_json(j));
      else std::cout << io::problem_to_dot(io::problem_from_json(j));
      return 0;
    }
  } catch (const Error& e) {
    emit({{"error", std::string(errc_name(e.code()))}, {"message", e.what()}});
    return 2;
  } catch (const nlohmann::json::exception& e) {
    emit({{"error", "INVALID_INPUT"}, {"message", e.what()}});
    return 2;
  }
  return 2;
}
