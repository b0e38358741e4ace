#include "malsched/bounds.hpp"

#include <algorithm>
#include <vector>

namespace malsched {

Objective objective_from_name(const std::string& name) {
  if (name == "makespan") return Objective::Makespan;
  if (name == "setflowtime") return Objective::Setflowtime;
  if (name == "flowtime") return Objective::Flowtime;
  throw std::invalid_argument("unknown objective '" + name +
                              "' (expected makespan, setflowtime or flowtime)");
}

const char* objective_name(Objective obj) {
  switch (obj) {
    case Objective::Makespan: return "makespan";
    case Objective::Setflowtime: return "setflowtime";
    case Objective::Flowtime: return "flowtime";
  }
  return "?";
}

namespace {

// max(par(S)/p, max_j seq(J)+par(J)/p) over one set.
Rational set_makespan_lb(const JobSet& set, const Rational& p) {
  Rational best(0);
  Rational total(0);
  for (const auto& job : set.jobs) {
    total += par_of(job);
    best = max(best, seq_of(job) + par_of(job) / p);
  }
  return max(best, total / p);
}

Rational prefix_sum_bound(std::vector<Rational> works, const Rational& p) {
  std::sort(works.begin(), works.end());
  Rational prefix(0), total(0);
  for (const auto& w : works) {
    prefix += w;
    total += prefix;
  }
  return total / p;
}

}  // namespace

Rational makespan_lower_bound(const Instance& inst) {
  if (!is_parseq_star(inst))
    throw ClassError("makespan_lower_bound requires a (Par-Seq)* instance");
  Rational total(0), chain(0);
  for (const auto& set : inst.sets)
    for (const auto& job : set.jobs) {
      total += par_of(job);
      chain = max(chain, seq_of(job) + par_of(job) / inst.processors);
    }
  return max(chain, total / inst.processors);
}

Rational setflowtime_lower_bound(const Instance& inst) {
  if (!is_parseq_star(inst))
    throw ClassError("setflowtime_lower_bound requires a (Par-Seq)* instance");
  Rational per_set(0);
  std::vector<Rational> pars;
  for (const auto& set : inst.sets) {
    per_set += set_makespan_lb(set, inst.processors);
    pars.push_back(par_of(set));
  }
  return max(per_set, prefix_sum_bound(std::move(pars), inst.processors));
}

ProofBoundReport proof_bound_check(const Instance& inst, const ScheduleTrace& trace,
                                   const Rational& alpha) {
  if (alpha.sign() <= 0 || alpha >= Rational(1))
    throw std::domain_error("proof_bound_check: alpha must be in (0,1)");
  if (inst.sets.size() != 1)
    throw ClassError("proof_bound_check requires a single set");
  const JobSet& set = inst.sets.front();
  for (const auto& job : set.jobs)
    if (!is_parseq(job))
      throw ClassError("proof_bound_check requires Par-Seq jobs (job " +
                       qualify(set.id, job.id) + ")");
  {
    ScheduleTrace expected = simulate(inst, equi, Rational(1));
    if (!(expected == trace))
      throw MismatchError("proof_bound_check: trace was not produced by equi on this instance");
  }

  ProofBoundReport rep;
  rep.n = static_cast<long>(set.jobs.size());
  rep.alpha = alpha;
  rep.par = par_of(set);
  rep.seq = seq_of(set);
  rep.makespan = compute_metrics(trace).makespan;
  const Rational& p = inst.processors;

  struct JobSpan {
    Rational completion, seq_from;
    bool has_seq;
  };
  std::vector<JobSpan> spans;
  for (const auto& job : set.jobs) {
    Rational c = trace.job_completions.at(qualify(set.id, job.id));
    Rational seq = seq_of(job);
    spans.push_back(JobSpan{c, c - seq, seq.sign() > 0});
  }

  std::vector<Rational> times{Rational(0)};
  for (const auto& ev : trace.events)
    if (ev.time != times.back()) times.push_back(ev.time);
  for (size_t k = 0; k + 1 < times.size(); ++k) {
    const Rational& a = times[k];
    Rational dt = times[k + 1] - a;
    long alive = 0, in_seq = 0;
    for (const auto& js : spans) {
      if (!(js.completion > a)) continue;
      ++alive;
      if (js.has_seq && a >= js.seq_from) ++in_seq;
    }
    if (Rational(in_seq) >= (Rational(1) - alpha) * Rational(alive))
      rep.a_measure += dt;
    else
      rep.abar_measure += dt;
  }

  rep.multiplier = seq_multiplier(static_cast<unsigned long>(rep.n), alpha);
  {
    Rational acc(rep.n);
    long m = 0;
    while (acc > Rational(1)) {
      acc *= alpha;
      ++m;
    }
    rep.ceil_log = std::max(m, 1L);
  }
  if (rep.n >= 2)
    rep.q = seq_multiplier_bracket(static_cast<unsigned long>(rep.n), alpha,
                                   Rational(1, 1000000));

  rep.abar_ok = rep.abar_measure * alpha * p <= rep.par;
  rep.a_ok_discrete = rep.a_measure <= Rational(rep.multiplier) * rep.seq;
  rep.a_ok = rep.a_measure <= Rational(rep.ceil_log) * rep.seq;
  rep.measures_ok = rep.a_measure + rep.abar_measure == rep.makespan;
  rep.combined_ok =
      rep.makespan <= rep.par / (alpha * p) + Rational(rep.multiplier) * rep.seq;
  return rep;
}

ChainReport chain_check(const Instance& inst, const Rational& alpha) {
  ChainReport rep;
  rep.alpha = alpha;
  rep.c_edmonds = add(Interval{Rational(2), Rational(2)},
                      sqrt_bracket(Rational(3), Rational(1, 1000000)));

  rep.setflow_ee_s = compute_metrics(simulate(inst, equi_equi, Rational(1))).setflowtime;

  Instance s_prime = frontload(inst);
  ScheduleTrace trace_sp = simulate(s_prime, equi_equi, Rational(1));
  rep.setflow_ee_sprime = compute_metrics(trace_sp).setflowtime;
  rep.l1 = rep.setflow_ee_s <= rep.setflow_ee_sprime;

  Instance collapsed = collapse_sets_to_jobs(s_prime, trace_sp, alpha);
  ScheduleTrace trace_j = simulate(collapsed, equi, Rational(1));
  rep.flow_equi_j = compute_metrics(trace_j).flowtime;
  rep.l2_event_identical = substitute(s_prime, trace_sp, collapsed) == trace_j &&
                           rep.flow_equi_j == rep.setflow_ee_sprime;

  Instance j_prime = frontload(collapsed);
  rep.flow_equi_jprime =
      compute_metrics(simulate(j_prime, equi, Rational(1))).flowtime;
  rep.l3 = rep.flow_equi_j <= rep.flow_equi_jprime;

  for (const auto& set : j_prime.sets)
    for (const auto& job : set.jobs) {
      rep.par_jprime += par_of(job);
      rep.seq_jprime += seq_of(job);
    }
  rep.l4 = rep.flow_equi_jprime <= rep.c_edmonds.hi * (rep.par_jprime + rep.seq_jprime);
  return rep;
}

void require_chain_holds(const ChainReport& rep) {
  if (!rep.l1)
    throw ChainViolationError(
        "link 1 violated: Setflowtime(EquiEqui(S)) > Setflowtime(EquiEqui(S'))");
  if (!rep.l2_event_identical)
    throw ChainViolationError(
        "link 2 violated: Setflowtime(EquiEqui(S')) != Flowtime(Equi(J)) event-identically");
  if (!rep.l3)
    throw ChainViolationError("link 3 violated: Flowtime(Equi(J)) > Flowtime(Equi(J'))");
  if (!rep.l4)
    throw ChainViolationError(
        "link 4 violated: Flowtime(Equi(J')) > (2+sqrt(3)) * (par(J') + seq(J'))");
}

RatioReport ratio_report(const Instance& inst, PolicyId policy, Objective objective,
                         const Rational& speed) {
  if (!is_parseq_star(inst))
    throw ClassError("ratio_report requires a (Par-Seq)* instance");
  RatioReport rep;
  Metrics achieved = compute_metrics(simulate(inst, make_policy(policy), speed));

  std::vector<std::pair<Rational, Rational>> jobs;  // (par, seq) per job
  for (const auto& set : inst.sets)
    for (const auto& job : set.jobs) jobs.emplace_back(par_of(job), seq_of(job));
  const Rational& p = inst.processors;

  switch (objective) {
    case Objective::Makespan:
      rep.achieved = achieved.makespan;
      rep.opt_upper = compute_metrics(par_first(inst)).makespan;
      rep.opt_lower = makespan_lower_bound(inst);
      break;
    case Objective::Setflowtime:
      rep.achieved = achieved.setflowtime;
      rep.opt_upper = compute_metrics(par_first_setaware(inst)).setflowtime;
      rep.opt_lower = setflowtime_lower_bound(inst);
      break;
    case Objective::Flowtime: {
      rep.achieved = achieved.flowtime;
      std::sort(jobs.begin(), jobs.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      Rational prefix(0), chain_sum(0);
      std::vector<Rational> pars;
      for (const auto& [par, seq] : jobs) {
        prefix += par;
        rep.opt_upper += prefix / p + seq;
        chain_sum += seq + par / p;
        pars.push_back(par);
      }
      rep.opt_lower = max(chain_sum, prefix_sum_bound(std::move(pars), p));
      break;
    }
  }
  if (rep.opt_upper.is_zero()) throw std::domain_error("ratio_report: zero-work instance");
  rep.ratio_lower = rep.achieved / rep.opt_upper;
  rep.ratio_upper = rep.achieved / rep.opt_lower;
  return rep;
}

}  // namespace malsched
