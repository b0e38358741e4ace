// malsched: exact simulator and verification harness for phase-structured
// malleable jobs.  Subcommands: simulate, adversary, reduce, bounds, verify,
// sweep.  Exit codes: 0 success, 1 validation/config error, 2 simulation
// error (capacity/stall/runaway), 3 verification violation (with a JSON
// counterexample on stdout).

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "malsched/adversary.hpp"
#include "malsched/bounds.hpp"
#include "malsched/bracket.hpp"
#include "malsched/engine.hpp"
#include "malsched/generators.hpp"
#include "malsched/io.hpp"
#include "malsched/model.hpp"
#include "malsched/reduction.hpp"
#include "malsched/schedulers.hpp"

using json = nlohmann::ordered_json;
using namespace malsched;

namespace {

unsigned long max_events_from_env() {
  const char* raw = std::getenv("MALSCHED_MAX_EVENTS");
  if (!raw || !*raw) return 0;
  char* end = nullptr;
  unsigned long v = std::strtoul(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0)
    throw std::invalid_argument("MALSCHED_MAX_EVENTS must be a positive integer");
  return v;
}

Instance load_instance(const std::string& path) {
  Instance inst = instance_from_json(read_file(path));
  require_valid(inst);
  return inst;
}

long count_jobs(const Instance& inst) {
  long n = 0;
  for (const auto& s : inst.sets) n += static_cast<long>(s.jobs.size());
  return n;
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

void guard_ell(const std::string& mode, long ell) {
  long cap = mode == "permuted" ? 4 : 7;
  if (ell < 2 || ell > cap)
    throw std::invalid_argument("--ell must lie in [2," + std::to_string(cap) +
                                "] for mode " + mode);
}

// ---------------------------------------------------------------------- //

struct SimulateCfg {
  std::string instance, scheduler = "equi", speed = "1", out;
};

int cmd_simulate(const SimulateCfg& cfg) {
  Instance inst = load_instance(cfg.instance);
  Policy policy = make_policy(policy_from_name(cfg.scheduler));
  ScheduleTrace trace =
      simulate(inst, policy, Rational::parse(cfg.speed), max_events_from_env());
  if (!cfg.out.empty()) write_file(cfg.out, trace_to_json(trace));
  json out = metrics_json(compute_metrics(trace));
  out["scheduler"] = cfg.scheduler;
  out["speed"] = Rational::parse(cfg.speed).str();
  std::cout << out.dump() << "\n";
  return 0;
}

struct AdversaryCfg {
  std::string mode = "example", scheduler = "equi", out, trace;
  long ell = 3, speed = 1;
  std::uint64_t seed = 0;
};

int cmd_adversary(const AdversaryCfg& cfg) {
  guard_ell(cfg.mode, cfg.ell);
  json summary{{"mode", cfg.mode}, {"ell", cfg.ell}};
  Instance inst;
  if (cfg.mode == "example") {
    inst = example_instance(cfg.ell);
  } else if (cfg.mode == "adaptive") {
    Policy policy = make_policy(policy_from_name(cfg.scheduler));
    auto [built, trace] = adaptive_run(policy, cfg.ell, cfg.speed);
    inst = std::move(built);
    summary["scheduler"] = cfg.scheduler;
    summary["speed"] = cfg.speed;
    summary["makespan"] = compute_metrics(trace).makespan.str();
    if (!cfg.trace.empty()) write_file(cfg.trace, trace_to_json(trace));
  } else if (cfg.mode == "permuted") {
    inst = permuted_instance(cfg.ell, cfg.seed);
    summary["seed"] = cfg.seed;
  } else {
    throw std::invalid_argument("--mode must be example, adaptive or permuted");
  }
  summary["jobs"] = count_jobs(inst);
  if (!cfg.out.empty()) write_file(cfg.out, instance_to_json(inst));
  std::cout << summary.dump() << "\n";
  return 0;
}

struct ReduceCfg {
  std::string instance, trace_a, trace_o, out, report;
};

int cmd_reduce(const ReduceCfg& cfg) {
  Instance inst = load_instance(cfg.instance);
  ScheduleTrace ta = trace_from_json(read_file(cfg.trace_a));
  ScheduleTrace to = trace_from_json(read_file(cfg.trace_o));
  auto [reduced, rep] = reduce_to_parseq(inst, ta, to);
  if (!cfg.out.empty()) write_file(cfg.out, instance_to_json(reduced));
  json jobs = json::object();
  for (const auto& [key, phases] : rep.per_job_phase_lists) {
    json list = json::array();
    for (const auto& ph : phases)
      list.push_back(json{{"kind", is_sequential(ph) ? "seq" : "par"},
                          {"work", ph.work.str()}});
    jobs[key] = std::move(list);
  }
  json out{{"preserved_schedule", rep.preserved_schedule},
           {"reference_valid", rep.reference_valid},
           {"jobs", std::move(jobs)}};
  if (!cfg.report.empty()) write_file(cfg.report, out.dump(2) + "\n");
  std::cout << out.dump() << "\n";
  return 0;
}

struct BoundsCfg {
  std::string instance, objective = "makespan", scheduler = "equi", speed = "1";
};

int cmd_bounds(const BoundsCfg& cfg) {
  Instance inst = load_instance(cfg.instance);
  RatioReport rep = ratio_report(inst, policy_from_name(cfg.scheduler),
                                 objective_from_name(cfg.objective),
                                 Rational::parse(cfg.speed));
  json out{{"objective", cfg.objective},
           {"scheduler", cfg.scheduler},
           {"speed", Rational::parse(cfg.speed).str()},
           {"achieved", rep.achieved.str()},
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
  std::cout << out.dump() << "\n";
  return 0;
}

// ---------------------------------------------------------------------- //
// verify

struct VerifyCfg {
  std::string what, instance, trace, alpha;
  long random = 0, jobs = 50;
  std::uint64_t seed = 1;
};

json instance_json(const Instance& inst) { return json::parse(instance_to_json(inst)); }

int fail_verify(json report) {
  std::cout << report.dump() << "\n";
  return 3;
}

int verify_lemma1(const VerifyCfg& cfg) {
  std::vector<std::pair<std::string, Instance>> inputs;
  if (!cfg.instance.empty()) inputs.emplace_back(cfg.instance, load_instance(cfg.instance));
  for (long i = 0; i < cfg.random; ++i) {
    std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    inputs.emplace_back("seed " + std::to_string(seed), random_mixed_instance(seed));
  }
  if (inputs.empty()) throw std::invalid_argument("verify lemma1 needs --instance or --random");
  long checked = 0;
  for (const auto& [label, inst] : inputs) {
    ScheduleTrace trace_o = serial_reference(inst);
    for (long speed = 1; speed <= 2; ++speed) {
      ScheduleTrace trace_a = simulate(inst, equi, Rational(speed));
      auto [reduced, rep] = reduce_to_parseq(inst, trace_a, trace_o);
      ++checked;
      if (!rep.preserved_schedule || !rep.reference_valid)
        return fail_verify(json{{"what", "lemma1"},
                                {"input", label},
                                {"speed", speed},
                                {"preserved_schedule", rep.preserved_schedule},
                                {"reference_valid", rep.reference_valid},
                                {"instance", instance_json(inst)}});
    }
  }
  std::cout << json{{"what", "lemma1"}, {"checked", checked}, {"violations", 0}}.dump()
            << "\n";
  return 0;
}

int verify_lemma2(const VerifyCfg& cfg) {
  std::vector<std::pair<std::string, Instance>> inputs;
  if (!cfg.instance.empty()) inputs.emplace_back(cfg.instance, load_instance(cfg.instance));
  for (long i = 0; i < cfg.random; ++i) {
    std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    inputs.emplace_back("seed " + std::to_string(seed),
                        random_parseq_star_instance(seed, 1, 6, 4));
  }
  if (inputs.empty()) throw std::invalid_argument("verify lemma2 needs --instance or --random");
  long checked = 0;
  for (const auto& [label, inst] : inputs) {
    Metrics before = compute_metrics(simulate(inst, equi, Rational(1)));
    Metrics after = compute_metrics(simulate(frontload(inst), equi, Rational(1)));
    ++checked;
    if (before.makespan > after.makespan || before.flowtime > after.flowtime)
      return fail_verify(json{{"what", "lemma2"},
                              {"input", label},
                              {"makespan_before", before.makespan.str()},
                              {"makespan_after", after.makespan.str()},
                              {"flowtime_before", before.flowtime.str()},
                              {"flowtime_after", after.flowtime.str()},
                              {"instance", instance_json(inst)}});
  }
  std::cout << json{{"what", "lemma2"}, {"checked", checked}, {"violations", 0}}.dump()
            << "\n";
  return 0;
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

int verify_chain(const VerifyCfg& cfg) {
  Rational alpha = cfg.alpha.empty() ? Rational(1, 2) : Rational::parse(cfg.alpha);
  std::vector<std::pair<std::string, Instance>> inputs;
  if (!cfg.instance.empty()) inputs.emplace_back(cfg.instance, load_instance(cfg.instance));
  for (long i = 0; i < cfg.random; ++i) {
    std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    inputs.emplace_back("seed " + std::to_string(seed),
                        random_parseq_star_instance(seed, 5, 6, 4));
  }
  if (inputs.empty()) throw std::invalid_argument("verify chain needs --instance or --random");
  long checked = 0;
  for (const auto& [label, inst] : inputs) {
    ChainReport rep = chain_check(inst, alpha);
    ++checked;
    try {
      require_chain_holds(rep);
    } catch (const ChainViolationError& e) {
      json out = chain_report_json(rep);
      out["what"] = "chain";
      out["input"] = label;
      out["violation"] = e.what();
      out["instance"] = instance_json(inst);
      return fail_verify(std::move(out));
    }
  }
  std::cout << json{{"what", "chain"},
                    {"alpha", alpha.str()},
                    {"checked", checked},
                    {"violations", 0}}
                   .dump()
            << "\n";
  return 0;
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

int verify_proof_bound(const VerifyCfg& cfg) {
  std::vector<std::pair<std::string, Instance>> inputs;
  if (!cfg.instance.empty()) inputs.emplace_back(cfg.instance, load_instance(cfg.instance));
  for (long i = 0; i < cfg.random; ++i) {
    std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    inputs.emplace_back("seed " + std::to_string(seed),
                        random_parseq_set(seed, static_cast<int>(cfg.jobs)));
  }
  if (inputs.empty())
    throw std::invalid_argument("verify proof-bound needs --instance or --random");
  long checked = 0;
  for (const auto& [label, inst] : inputs) {
    Rational alpha = cfg.alpha.empty()
                         ? alpha_for(inst.sets.front().jobs.size())
                         : Rational::parse(cfg.alpha);
    ProofBoundReport rep;
    try {
      ScheduleTrace trace = !cfg.trace.empty() && cfg.instance == label
                                ? trace_from_json(read_file(cfg.trace))
                                : simulate(inst, equi, Rational(1));
      rep = proof_bound_check(inst, trace, alpha);
    } catch (const MismatchError& e) {
      return fail_verify(json{{"what", "proof-bound"},
                              {"input", label},
                              {"violation", e.what()},
                              {"instance", instance_json(inst)}});
    }
    ++checked;
    if (!(rep.measures_ok && rep.abar_ok && rep.a_ok_discrete && rep.combined_ok)) {
      json out = proof_report_json(rep);
      out["what"] = "proof-bound";
      out["input"] = label;
      out["instance"] = instance_json(inst);
      return fail_verify(std::move(out));
    }
  }
  std::cout << json{{"what", "proof-bound"}, {"checked", checked}, {"violations", 0}}.dump()
            << "\n";
  return 0;
}

int cmd_verify(const VerifyCfg& cfg) {
  if (cfg.what == "lemma1") return verify_lemma1(cfg);
  if (cfg.what == "lemma2") return verify_lemma2(cfg);
  if (cfg.what == "chain") return verify_chain(cfg);
  if (cfg.what == "proof-bound") return verify_proof_bound(cfg);
  throw std::invalid_argument("--what must be lemma1, lemma2, chain or proof-bound");
}

// ---------------------------------------------------------------------- //
// sweep

struct SweepCfg {
  std::string mode = "example", objective = "makespan", out;
  std::vector<std::string> schedulers{"equi"};
  long ell_min = 2, ell_max = 4, seeds = 1, speed = 1;
  std::uint64_t seed = 1;
};

int cmd_sweep(const SweepCfg& cfg) {
  if (cfg.ell_min > cfg.ell_max) throw std::invalid_argument("empty --ell range");
  if (cfg.ell_min < 2) throw std::invalid_argument("--ell-min must be at least 2");
  guard_ell(cfg.mode, cfg.ell_max);
  Objective objective = objective_from_name(cfg.objective);
  if (cfg.mode == "permuted" && cfg.seeds < 1)
    throw std::invalid_argument("--seeds must be positive");

  struct Row {
    long ell, n;
    std::uint64_t seed;
    std::string scheduler;
    RatioReport rep;
  };
  std::vector<Row> rows;
  for (long ell = cfg.ell_min; ell <= cfg.ell_max; ++ell) {
    long seeds = cfg.mode == "permuted" ? cfg.seeds : 1;
    for (long k = 0; k < seeds; ++k) {
      std::uint64_t seed = cfg.mode == "permuted" ? cfg.seed + static_cast<std::uint64_t>(k) : 0;
      for (const auto& name : cfg.schedulers) {
        PolicyId policy = policy_from_name(name);
        Instance inst;
        Rational speed(1);
        if (cfg.mode == "example") {
          inst = example_instance(ell);
        } else if (cfg.mode == "permuted") {
          inst = permuted_instance(ell, seed);
        } else if (cfg.mode == "adaptive") {
          inst = adaptive_run(make_policy(policy), ell, cfg.speed).first;
          speed = Rational(cfg.speed);
        } else {
          throw std::invalid_argument("--mode must be example, adaptive or permuted");
        }
        rows.push_back(Row{ell, count_jobs(inst), seed, name,
                           ratio_report(inst, policy, objective, speed)});
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.ell != b.ell) return a.ell < b.ell;
    if (a.seed != b.seed) return a.seed < b.seed;
    return a.scheduler < b.scheduler;
  });

  std::ostringstream csv;
  csv << "ell,n,seed,scheduler,objective,achieved,opt_upper,opt_lower,ratio_lower,"
         "achieved_decimal,opt_upper_decimal,opt_lower_decimal,ratio_lower_decimal\n";
  for (const auto& r : rows)
    csv << r.ell << ',' << r.n << ',' << r.seed << ',' << r.scheduler << ','
        << cfg.objective << ',' << r.rep.achieved.str() << ',' << r.rep.opt_upper.str()
        << ',' << r.rep.opt_lower.str() << ',' << r.rep.ratio_lower.str() << ','
        << r.rep.achieved.decimal() << ',' << r.rep.opt_upper.decimal() << ','
        << r.rep.opt_lower.decimal() << ',' << r.rep.ratio_lower.decimal() << "\n";
  if (cfg.out.empty())
    std::cout << csv.str();
  else
    write_file(cfg.out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact event-driven simulator for phase-structured malleable jobs"};
  app.require_subcommand(1);

  SimulateCfg sim;
  auto* c_sim = app.add_subcommand("simulate", "Run a policy on an instance");
  c_sim->add_option("--instance", sim.instance, "Instance JSON file")->required();
  c_sim->add_option("--scheduler", sim.scheduler, "equi | equi-equi | equi-serial");
  c_sim->add_option("--speed", sim.speed, "Budget multiplier (rational)");
  c_sim->add_option("--out", sim.out, "Write the trace JSON here");

  AdversaryCfg adv;
  auto* c_adv = app.add_subcommand("adversary", "Generate worst-case instances");
  c_adv->add_option("--mode", adv.mode, "example | adaptive | permuted");
  c_adv->add_option("--ell", adv.ell, "Round count (>= 2)")->required();
  c_adv->add_option("--speed", adv.speed, "Integer speed (adaptive)");
  c_adv->add_option("--seed", adv.seed, "Permutation seed (permuted)");
  c_adv->add_option("--scheduler", adv.scheduler, "Policy to play against (adaptive)");
  c_adv->add_option("--out", adv.out, "Write the instance JSON here");
  c_adv->add_option("--trace", adv.trace, "Write the interactive trace here (adaptive)");

  ReduceCfg red;
  auto* c_red = app.add_subcommand("reduce", "Rewrite jobs into (Par-Seq)* form");
  c_red->add_option("--instance", red.instance, "Instance JSON file")->required();
  c_red->add_option("--trace-a", red.trace_a, "Trace of the algorithm (A)")->required();
  c_red->add_option("--trace-o", red.trace_o, "Trace of the reference (O)")->required();
  c_red->add_option("--out", red.out, "Write the reduced instance here");
  c_red->add_option("--report", red.report, "Write the substitution report here");

  BoundsCfg bnd;
  auto* c_bnd = app.add_subcommand("bounds", "Achieved objective vs OPT brackets");
  c_bnd->add_option("--instance", bnd.instance, "Instance JSON file")->required();
  c_bnd->add_option("--objective", bnd.objective, "makespan | setflowtime | flowtime");
  c_bnd->add_option("--scheduler", bnd.scheduler, "equi | equi-equi | equi-serial");
  c_bnd->add_option("--speed", bnd.speed, "Budget multiplier (rational)");

  VerifyCfg ver;
  auto* c_ver = app.add_subcommand("verify", "Check the proof obligations");
  c_ver->add_option("--what", ver.what, "lemma1 | lemma2 | chain | proof-bound")->required();
  c_ver->add_option("--instance", ver.instance, "Check this instance");
  c_ver->add_option("--trace", ver.trace, "Equi trace for proof-bound (else simulated)");
  c_ver->add_option("--alpha", ver.alpha, "Rational alpha in (0,1)");
  c_ver->add_option("--random", ver.random, "Also check this many generated instances");
  c_ver->add_option("--seed", ver.seed, "First seed for --random");
  c_ver->add_option("--jobs", ver.jobs, "Set size for generated proof-bound instances");

  SweepCfg swp;
  auto* c_swp = app.add_subcommand("sweep", "Ratio table over an ell range (CSV)");
  c_swp->add_option("--mode", swp.mode, "example | adaptive | permuted");
  c_swp->add_option("--ell-min", swp.ell_min, "First ell");
  c_swp->add_option("--ell-max", swp.ell_max, "Last ell");
  c_swp->add_option("--seeds", swp.seeds, "Seeds per ell (permuted)");
  c_swp->add_option("--seed", swp.seed, "First seed (permuted)");
  c_swp->add_option("--speed", swp.speed, "Integer speed (adaptive)");
  c_swp->add_option("--schedulers", swp.schedulers, "Policies to sweep")
      ->delimiter(',');
  c_swp->add_option("--objective", swp.objective, "makespan | setflowtime | flowtime");
  c_swp->add_option("--out", swp.out, "Write the CSV here (default stdout)");

  try {
    app.parse(argc, argv);
    if (c_sim->parsed()) return cmd_simulate(sim);
    if (c_adv->parsed()) return cmd_adversary(adv);
    if (c_red->parsed()) return cmd_reduce(red);
    if (c_bnd->parsed()) return cmd_bounds(bnd);
    if (c_ver->parsed()) return cmd_verify(ver);
    if (c_swp->parsed()) return cmd_sweep(swp);
    return 1;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const CapacityError& e) {
    std::cerr << "simulation error: " << e.what() << "\n";
    return 2;
  } catch (const StallError& e) {
    std::cerr << "simulation error: " << e.what() << "\n";
    return 2;
  } catch (const RunawayError& e) {
    std::cerr << "simulation error: " << e.what() << "\n";
    return 2;
  } catch (const ChainViolationError& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return 3;
  } catch (const MismatchError& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
