// Python bindings for the malsched core.
//
// The module speaks JSON strings at the boundary: instances and traces are
// passed in and out in the same canonical JSON encoding the CLI uses, and
// report structs are serialized with the same keys the CLI prints.  The
// pure-Python package in python/malsched wraps these with dict-based helpers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <utility>

#include "malsched/adversary.hpp"
#include "malsched/bounds.hpp"
#include "malsched/bracket.hpp"
#include "malsched/engine.hpp"
#include "malsched/generators.hpp"
#include "malsched/io.hpp"
#include "malsched/model.hpp"
#include "malsched/reduction.hpp"
#include "malsched/schedulers.hpp"

namespace py = pybind11;
using json = nlohmann::json;
using namespace malsched;

namespace {

Instance parse_instance(const std::string& text) {
  Instance inst = instance_from_json(text);
  require_valid(inst);
  return inst;
}

json metrics_json(const Metrics& m) {
  json exact{{"flowtime", m.flowtime.str()},
             {"makespan", m.makespan.str()},
             {"setflowtime", m.setflowtime.str()}};
  json dec{{"flowtime", m.flowtime.decimal()},
           {"makespan", m.makespan.decimal()},
           {"setflowtime", m.setflowtime.decimal()}};
  return json{{"metrics", exact}, {"decimal", dec}};
}

json chain_report_json(const ChainReport& rep) {
  return json{{"alpha", rep.alpha.str()},
              {"setflow_ee_s", rep.setflow_ee_s.str()},
              {"setflow_ee_sprime", rep.setflow_ee_sprime.str()},
              {"flow_equi_j", rep.flow_equi_j.str()},
              {"flow_equi_jprime", rep.flow_equi_jprime.str()},
              {"par_jprime", rep.par_jprime.str()},
              {"seq_jprime", rep.seq_jprime.str()},
              {"c_edmonds", json::array({rep.c_edmonds.lo.str(), rep.c_edmonds.hi.str()})},
              {"l1", rep.l1},
              {"l2_event_identical", rep.l2_event_identical},
              {"l3", rep.l3},
              {"l4", rep.l4}};
}

json proof_report_json(const ProofBoundReport& rep) {
  return json{{"n", rep.n},
              {"alpha", rep.alpha.str()},
              {"par", rep.par.str()},
              {"seq", rep.seq.str()},
              {"a_measure", rep.a_measure.str()},
              {"abar_measure", rep.abar_measure.str()},
              {"makespan", rep.makespan.str()},
              {"multiplier", rep.multiplier},
              {"ceil_log", rep.ceil_log},
              {"q", json::array({rep.q.lo.str(), rep.q.hi.str()})},
              {"abar_ok", rep.abar_ok},
              {"a_ok_discrete", rep.a_ok_discrete},
              {"a_ok", rep.a_ok},
              {"measures_ok", rep.measures_ok},
              {"combined_ok", rep.combined_ok}};
}

json ratio_report_json(const RatioReport& rep) {
  return json{{"achieved", rep.achieved.str()},
              {"opt_lower", rep.opt_lower.str()},
              {"opt_upper", rep.opt_upper.str()},
              {"ratio_lower", rep.ratio_lower.str()},
              {"ratio_upper", rep.ratio_upper.str()},
              {"decimal",
               json{{"achieved", rep.achieved.decimal()},
                    {"opt_lower", rep.opt_lower.decimal()},
                    {"opt_upper", rep.opt_upper.decimal()},
                    {"ratio_lower", rep.ratio_lower.decimal()},
                    {"ratio_upper", rep.ratio_upper.decimal()}}}};
}

json reduce_report_json(const SubstitutionReport& rep) {
  json jobs = json::object();
  for (const auto& [key, phases] : rep.per_job_phase_lists) {
    json list = json::array();
    for (const auto& ph : phases)
      list.push_back(json{{"kind", is_sequential(ph) ? "seq" : "par"},
                          {"work", ph.work.str()}});
    jobs[key] = std::move(list);
  }
  return json{{"preserved_schedule", rep.preserved_schedule},
              {"reference_valid", rep.reference_valid},
              {"jobs", std::move(jobs)}};
}

}  // namespace

PYBIND11_MODULE(_malsched, m) {
  m.doc() =
      "Exact event-driven simulator for phase-structured malleable job sets. "
      "All entry points exchange canonical JSON strings; exact values are "
      "rational strings like '17/4'.";

  m.def(
      "validate_instance",
      [](const std::string& instance) { parse_instance(instance); },
      py::arg("instance"),
      "Parse an instance JSON string and raise ValueError if it is invalid.");

  m.def(
      "simulate",
      [](const std::string& instance, const std::string& scheduler,
         const std::string& speed) {
        Instance inst = parse_instance(instance);
        Policy policy = make_policy(policy_from_name(scheduler));
        return trace_to_json(simulate(inst, policy, Rational::parse(speed)));
      },
      py::arg("instance"), py::arg("scheduler") = "equi", py::arg("speed") = "1",
      "Run the named scheduler on an instance JSON string at the given speed "
      "and return the trace as JSON.");

  m.def(
      "metrics",
      [](const std::string& trace) {
        return metrics_json(compute_metrics(trace_from_json(trace))).dump();
      },
      py::arg("trace"),
      "Recompute flowtime/makespan/setflowtime for a trace JSON string.");

  m.def(
      "example_instance",
      [](long ell) { return instance_to_json(example_instance(ell)); },
      py::arg("ell"),
      "Build the layered lower-bound instance with ell^ell jobs in one set.");

  m.def(
      "adaptive_run",
      [](const std::string& scheduler, long ell, long speed) {
        Policy policy = make_policy(policy_from_name(scheduler));
        auto [inst, trace] = adaptive_run(policy, ell, speed);
        return py::make_tuple(instance_to_json(inst), trace_to_json(trace));
      },
      py::arg("scheduler"), py::arg("ell"), py::arg("speed") = 1,
      "Play the adaptive adversary against a named scheduler; returns "
      "(instance JSON, trace JSON) with makespan exactly ell+1.");

  m.def(
      "permuted_instance",
      [](long ell, std::uint64_t seed) {
        return instance_to_json(permuted_instance(ell, seed));
      },
      py::arg("ell"), py::arg("seed") = 0,
      "Seeded shuffle of ell^ell scaled copies of the layered instance.");

  m.def(
      "reduce_to_parseq",
      [](const std::string& instance, const std::string& trace_a,
         const std::string& trace_o) {
        Instance inst = parse_instance(instance);
        auto [reduced, rep] = reduce_to_parseq(inst, trace_from_json(trace_a),
                                               trace_from_json(trace_o));
        return py::make_tuple(instance_to_json(reduced),
                              reduce_report_json(rep).dump());
      },
      py::arg("instance"), py::arg("trace_a"), py::arg("trace_o"),
      "Chunk every job against an algorithm trace and a reference trace; "
      "returns (reduced instance JSON, report JSON).");

  m.def(
      "frontload",
      [](const std::string& instance) {
        return instance_to_json(frontload(parse_instance(instance)));
      },
      py::arg("instance"),
      "Merge each job of a par/seq instance into one par phase followed by "
      "one seq phase.");

  m.def(
      "collapse_sets_to_jobs",
      [](const std::string& instance, const std::string& trace,
         const std::string& alpha) {
        return instance_to_json(collapse_sets_to_jobs(
            parse_instance(instance), trace_from_json(trace),
            Rational::parse(alpha)));
      },
      py::arg("instance"), py::arg("trace"), py::arg("alpha"),
      "Collapse each job set of an equi-equi trace into a single job using "
      "the alpha-majority rule.");

  m.def(
      "substitute",
      [](const std::string& old_instance, const std::string& trace,
         const std::string& new_instance) {
        return trace_to_json(substitute(parse_instance(old_instance),
                                        trace_from_json(trace),
                                        parse_instance(new_instance)));
      },
      py::arg("old_instance"), py::arg("trace"), py::arg("new_instance"),
      "Replay a recorded allocation against structurally substituted jobs.");

  m.def(
      "makespan_lower_bound",
      [](const std::string& instance) {
        return makespan_lower_bound(parse_instance(instance)).str();
      },
      py::arg("instance"),
      "Exact clairvoyant makespan lower bound as a rational string.");

  m.def(
      "setflowtime_lower_bound",
      [](const std::string& instance) {
        return setflowtime_lower_bound(parse_instance(instance)).str();
      },
      py::arg("instance"),
      "Exact clairvoyant set-flowtime lower bound as a rational string.");

  m.def(
      "ratio_report",
      [](const std::string& instance, const std::string& scheduler,
         const std::string& objective, const std::string& speed) {
        RatioReport rep = ratio_report(
            parse_instance(instance), policy_from_name(scheduler),
            objective_from_name(objective), Rational::parse(speed));
        return ratio_report_json(rep).dump();
      },
      py::arg("instance"), py::arg("scheduler") = "equi",
      py::arg("objective") = "makespan", py::arg("speed") = "1",
      "Bracket the competitive ratio of a scheduler on an instance; returns "
      "a report JSON with exact rational strings.");

  m.def(
      "chain_check",
      [](const std::string& instance, const std::string& alpha) {
        return chain_report_json(
                   chain_check(parse_instance(instance), Rational::parse(alpha)))
            .dump();
      },
      py::arg("instance"), py::arg("alpha") = "1/2",
      "Evaluate the four-link flowtime comparison chain on a par/seq "
      "instance; returns a report JSON.");

  m.def(
      "proof_bound_check",
      [](const std::string& instance, const std::string& trace,
         const std::string& alpha) {
        return proof_report_json(proof_bound_check(parse_instance(instance),
                                                   trace_from_json(trace),
                                                   Rational::parse(alpha)))
            .dump();
      },
      py::arg("instance"), py::arg("trace"), py::arg("alpha"),
      "Split an equi trace on a single par/seq set into majority-sequential "
      "and majority-parallel time and check the makespan bound.");

  m.def(
      "par_first",
      [](const std::string& instance, const std::string& speed) {
        return trace_to_json(par_first(parse_instance(instance), Rational::parse(speed)));
      },
      py::arg("instance"), py::arg("speed") = "1",
      "Clairvoyant par-first reference schedule for a par/seq instance.");

  m.def(
      "par_first_setaware",
      [](const std::string& instance, const std::string& speed) {
        return trace_to_json(
            par_first_setaware(parse_instance(instance), Rational::parse(speed)));
      },
      py::arg("instance"), py::arg("speed") = "1",
      "Set-aware clairvoyant reference schedule (ascending par(S_i) order).");

  m.def(
      "serial_reference",
      [](const std::string& instance, const std::string& speed) {
        return trace_to_json(
            serial_reference(parse_instance(instance), Rational::parse(speed)));
      },
      py::arg("instance"), py::arg("speed") = "1",
      "Clairvoyant serial reference schedule for arbitrary speed-up shapes.");

  m.def(
      "seq_multiplier",
      [](unsigned long n, const std::string& alpha) {
        return seq_multiplier(n, Rational::parse(alpha));
      },
      py::arg("n"), py::arg("alpha"),
      "Smallest m >= 1 with alpha^m * n < 1, computed exactly.");

  m.def(
      "alpha_for", [](unsigned long n) { return alpha_for(n).str(); },
      py::arg("n"),
      "Rational alpha in (0, 1) tuned to n jobs, as used by the proof "
      "bound checker.");

  m.def(
      "random_mixed_instance",
      [](std::uint64_t seed) {
        return instance_to_json(random_mixed_instance(seed));
      },
      py::arg("seed"),
      "Seeded random instance mixing seq, par and concave piecewise-linear "
      "phases.");

  m.def(
      "random_parseq_star_instance",
      [](std::uint64_t seed, int max_sets, int max_jobs, int max_phases) {
        return instance_to_json(
            random_parseq_star_instance(seed, max_sets, max_jobs, max_phases));
      },
      py::arg("seed"), py::arg("max_sets") = 3, py::arg("max_jobs") = 4,
      py::arg("max_phases") = 4,
      "Seeded random single-processor instance with par/seq phases only.");
}
