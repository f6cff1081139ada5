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

// Python bindings. Problems, policies, automata and verdicts cross the
// boundary as the same JSON documents the command-line tool reads and writes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "genplan/constraints.hpp"
#include "genplan/error.hpp"
#include "genplan/fond.hpp"
#include "genplan/io.hpp"
#include "genplan/ltl.hpp"
#include "genplan/parity_game.hpp"
#include "genplan/qnp.hpp"
#include "genplan/synthesis.hpp"
#include "genplan/verify.hpp"

namespace py = pybind11;
using namespace genplan;
using io::Json;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::object& o) {
  return io::parse_json(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Pondp problem(const py::object& o) { return io::problem_from_json(from_py(o)); }
Policy policy(const py::object& o) { return io::policy_from_json(from_py(o)); }

ltl::Word word(const ltl::Alphabet& sigma, const std::vector<std::string>& prefix,
               const std::vector<std::string>& cycle) {
  if (cycle.empty()) throw Error(Errc::InvalidInput, "the cycle of a lasso must not be empty");
  ltl::Word w;
  for (const auto& l : prefix) w.letters.push_back(sigma.index(l));
  for (const auto& l : cycle) w.letters.push_back(sigma.index(l));
  w.loop_start = prefix.size();
  return w;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Generalized planning with trajectory constraints";
  // Kept alive for the lifetime of the interpreter.
  static PyObject* error_type = py::exception<Error>(m, "GenplanError").release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = std::string(errc_name(e.code()));
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.def(
      "qnp_projection",
      [](const std::string& text, bool close) {
        qnp::Qnp q = qnp::parse(text);
        if (close) q = qnp::close_qnp(q);
        return to_py(io::problem_to_json(qnp::syntactic_projection(q)));
      },
      py::arg("text"), py::arg("close") = false, "FONDP abstraction of a QNP given in text form.");

  m.def(
      "qnp_instance",
      [](const std::string& text, const std::map<std::string, double>& values, double bound) {
        return to_py(io::problem_to_json(qnp::instantiate(qnp::parse(text), values, bound).problem));
      },
      py::arg("text"), py::arg("values"), py::arg("bound"));

  m.def(
      "simulate_qnp",
      [](const std::string& text, const std::map<std::string, double>& values, const py::object& mu,
         std::uint64_t seed, std::size_t max_steps) {
        Resolver r = Resolver::seeded(seed);
        Policy p = policy(mu);
        qnp::NamedRun run = qnp::simulate(qnp::parse(text), values, p, r, {max_steps, true, true});
        py::dict out;
        out["kind"] = run_kind_name(run.kind);
        out["states"] = run.states;
        out["actions"] = run.actions;
        out["goal_reached"] = run.goal_reached;
        return out;
      },
      py::arg("text"), py::arg("values"), py::arg("policy"), py::arg("seed") = 0, py::arg("max_steps") = 100000);

  m.def(
      "strong_cyclic_plan",
      [](const py::object& p) -> py::object {
        auto mu = genplan::strong_cyclic_plan(problem(p));
        if (!mu) return py::none();
        return to_py(io::policy_to_json(*mu));
      },
      py::arg("problem"), "Policy as a JSON document, or None if the problem is unsolvable.");

  m.def(
      "synthesize",
      [](const py::object& p, const std::string& constraint, bool generic) {
        Pondp prob = problem(p);
        TrajectoryConstraint c = constraint.empty() ? TrajectoryConstraint::all() : parse_constraint(constraint, prob);
        omega::SynthesisResult r = omega::synthesize(prob, c, {kDefaultBudget, !generic});
        py::dict out;
        out["realizable"] = r.realizable;
        out["policy"] = r.realizable ? to_py(io::policy_to_json(r.policy)) : py::none();
        out["reason"] = r.reason;
        out["dpw_states"] = r.dpw.num_states();
        return out;
      },
      py::arg("problem"), py::arg("constraint") = "", py::arg("generic") = false);

  m.def(
      "check_solution",
      [](const py::object& p, const py::object& mu, const std::string& mode, const std::string& constraint) {
        Pondp prob = problem(p);
        SolutionMode sm = SolutionMode::fair();
        if (mode == "strong")
          sm = SolutionMode::strong();
        else if (mode == "constraint")
          sm = SolutionMode::under(parse_constraint(constraint, prob));
        else if (mode != "fair")
          throw Error(Errc::InvalidInput, "unknown mode '" + mode + "'");
        return to_py(io::verdict_to_json(prob, check_solution(prob, policy(mu), sm)));
      },
      py::arg("problem"), py::arg("policy"), py::arg("mode") = "fair", py::arg("constraint") = "");

  m.def(
      "eval_lasso",
      [](const std::string& formula, const std::vector<std::string>& alphabet, const std::vector<std::string>& prefix,
         const std::vector<std::string>& cycle) {
        ltl::Alphabet sigma(alphabet);
        return ltl::eval_lasso(ltl::parse(formula, &sigma), word(sigma, prefix, cycle), sigma);
      },
      py::arg("formula"), py::arg("alphabet"), py::arg("prefix"), py::arg("cycle"));

  m.def(
      "ltl_to_dpw",
      [](const std::string& formula, const std::vector<std::string>& alphabet) {
        ltl::Alphabet sigma(alphabet);
        return to_py(io::dpw_to_json(omega::ltl_to_dpw(ltl::parse(formula, &sigma), sigma)));
      },
      py::arg("formula"), py::arg("alphabet"));

  m.def(
      "dpw_accepts",
      [](const py::object& dpw, const std::vector<std::string>& prefix, const std::vector<std::string>& cycle) {
        omega::Dpw d = io::dpw_from_json(from_py(dpw));
        return omega::dpw_accepts(d, word(d.alphabet, prefix, cycle));
      },
      py::arg("dpw"), py::arg("prefix"), py::arg("cycle"));

  m.def(
      "solve_parity",
      [](const std::vector<int>& owner, const std::vector<int>& priority, const std::vector<std::vector<int>>& succ) {
        omega::ParityGame g;
        g.owner = owner;
        g.priority = priority;
        g.succ = succ;
        g.label.resize(owner.size());
        omega::check_game(g);
        omega::ParitySolution s = omega::solve_parity(g);
        return std::make_pair(s.winner, s.strategy);
      },
      py::arg("owner"), py::arg("priority"), py::arg("succ"),
      "Winner (0 controller, 1 environment) and chosen successor per node.");
}
