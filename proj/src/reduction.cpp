#include "malsched/reduction.hpp"

#include <algorithm>
#include <set>

#include "malsched/bracket.hpp"
#include "malsched/schedulers.hpp"

namespace malsched {

namespace {

const std::vector<Piece>& pieces_for(const ScheduleTrace& trace, const std::string& key) {
  static const std::vector<Piece> kEmpty;
  auto it = trace.pieces.find(key);
  return it == trace.pieces.end() ? kEmpty : it->second;
}

// Progress segments (w1 > w0) of one phase, in execution order.
std::vector<const ExecSegment*> progress_segments(const JobExecution& exec, size_t phase) {
  std::vector<const ExecSegment*> out;
  for (const auto& seg : exec.segments)
    if (seg.phase_index == phase && seg.w1 > seg.w0) out.push_back(&seg);
  return out;
}

void push_merged(std::vector<Phase>& phases, bool parallel, const Rational& work) {
  if (work.is_zero()) return;
  if (!phases.empty() &&
      ((parallel && is_fully_parallel(phases.back())) ||
       (!parallel && is_sequential(phases.back())))) {
    phases.back().work += work;
    return;
  }
  phases.push_back(parallel ? par_phase(work) : seq_phase(work));
}

// Reduced phase list for one job: chunk the job's work at every cumulative
// work position where either trace changes allocation, then classify each
// chunk by comparing the two allocations.
std::vector<Phase> reduce_job(const Job& job, const JobExecution& exec_a,
                              const JobExecution& exec_o) {
  std::vector<Phase> out;
  for (size_t k = 0; k < job.phases.size(); ++k) {
    auto segs_a = progress_segments(exec_a, k);
    auto segs_o = progress_segments(exec_o, k);
    std::set<Rational> cuts;
    for (const auto* s : segs_a) {
      cuts.insert(s->w0);
      cuts.insert(s->w1);
    }
    for (const auto* s : segs_o) {
      cuts.insert(s->w0);
      cuts.insert(s->w1);
    }
    if (cuts.size() < 2) continue;  // zero-work phase
    size_t ia = 0, io = 0;
    auto prev = cuts.begin();
    for (auto it = std::next(cuts.begin()); it != cuts.end(); ++it, ++prev) {
      const Rational& u = *prev;
      const Rational& v = *it;
      while (ia < segs_a.size() && segs_a[ia]->w1 <= u) ++ia;
      while (io < segs_o.size() && segs_o[io]->w1 <= u) ++io;
      const ExecSegment& sa = *segs_a[ia];
      const ExecSegment& so = *segs_o[io];
      Rational dt_a = (v - u) * (sa.t1 - sa.t0) / (sa.w1 - sa.w0);
      if (so.rho <= sa.rho)
        push_merged(out, false, dt_a);
      else
        push_merged(out, true, sa.rho * dt_a);
    }
  }
  if (out.empty()) out.push_back(seq_phase(Rational(0)));
  return out;
}

}  // namespace

std::pair<Instance, SubstitutionReport> reduce_to_parseq(const Instance& inst,
                                                         const ScheduleTrace& trace_a,
                                                         const ScheduleTrace& trace_o) {
  require_valid(inst);
  Instance reduced;
  reduced.processors = inst.processors;
  SubstitutionReport report;
  for (const auto& set : inst.sets) {
    JobSet nset;
    nset.id = set.id;
    for (const auto& job : set.jobs) {
      const std::string key = qualify(set.id, job.id);
      JobExecution exec_a, exec_o;
      try {
        exec_a = execution_profile(job, pieces_for(trace_a, key));
        exec_o = execution_profile(job, pieces_for(trace_o, key));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("invalid trace: ") + e.what());
      }
      Job njob;
      njob.id = job.id;
      njob.phases = reduce_job(job, exec_a, exec_o);
      report.per_job_phase_lists.emplace(key, njob.phases);
      nset.jobs.push_back(std::move(njob));
    }
    reduced.sets.push_back(std::move(nset));
  }

  try {
    ScheduleTrace sub_a = substitute(inst, trace_a, reduced);
    report.preserved_schedule = sub_a.job_completions == trace_a.job_completions &&
                                sub_a.set_completions == trace_a.set_completions;
  } catch (const InfeasibleSubstitutionError&) {
    report.preserved_schedule = false;
  }
  try {
    ScheduleTrace sub_o = substitute(inst, trace_o, reduced);
    report.reference_valid = validate_trace(reduced, sub_o, inst.processors).empty();
  } catch (const InfeasibleSubstitutionError&) {
    report.reference_valid = false;
  }
  return {std::move(reduced), std::move(report)};
}

Instance frontload(const Instance& inst) {
  require_valid(inst);
  if (!is_parseq_star(inst)) throw ClassError("frontload requires a (Par-Seq)* instance");
  Instance out;
  out.processors = inst.processors;
  for (const auto& set : inst.sets) {
    JobSet nset;
    nset.id = set.id;
    for (const auto& job : set.jobs) {
      Job njob;
      njob.id = job.id;
      Rational par = par_of(job), seq = seq_of(job);
      if (par.sign() > 0) njob.phases.push_back(par_phase(par));
      if (seq.sign() > 0) njob.phases.push_back(seq_phase(seq));
      if (njob.phases.empty()) njob.phases.push_back(seq_phase(Rational(0)));
      nset.jobs.push_back(std::move(njob));
    }
    out.sets.push_back(std::move(nset));
  }
  return out;
}

Instance collapse_sets_to_jobs(const Instance& s_prime, const ScheduleTrace& trace,
                               const Rational& alpha) {
  if (alpha.sign() <= 0 || alpha >= Rational(1))
    throw std::domain_error("collapse_sets_to_jobs: alpha must be in (0,1)");
  require_valid(s_prime);
  for (const auto& set : s_prime.sets)
    for (const auto& job : set.jobs)
      if (!is_parseq(job))
        throw ClassError("collapse_sets_to_jobs requires a Par-Seq instance (job " +
                         qualify(set.id, job.id) + ")");
  {
    ScheduleTrace expected = simulate(s_prime, equi_equi, Rational(1));
    if (!(expected == trace))
      throw MismatchError(
          "collapse_sets_to_jobs: trace was not produced by equi-equi on this instance");
  }

  // Interval breakpoints: t = 0 plus every event time.
  std::vector<Rational> times{Rational(0)};
  for (const auto& ev : trace.events)
    if (ev.time != times.back()) times.push_back(ev.time);

  // A Par-Seq job sits in its sequential phase exactly on
  // [completion - seq(J), completion): sequential work always runs at rate 1.
  struct JobSpan {
    Rational completion, seq_from;
    bool has_seq;
  };
  std::vector<std::vector<JobSpan>> spans(s_prime.sets.size());
  for (size_t si = 0; si < s_prime.sets.size(); ++si) {
    for (const auto& job : s_prime.sets[si].jobs) {
      Rational c = trace.job_completions.at(qualify(s_prime.sets[si].id, job.id));
      Rational seq = seq_of(job);
      spans[si].push_back(JobSpan{c, c - seq, seq.sign() > 0});
    }
  }
  std::vector<Rational> set_completions;
  for (const auto& set : s_prime.sets)
    set_completions.push_back(trace.set_completions.at(set.id));

  Instance collapsed;
  collapsed.processors = s_prime.processors;
  std::vector<std::vector<Phase>> phases(s_prime.sets.size());
  for (size_t k = 0; k + 1 < times.size(); ++k) {
    const Rational& a = times[k];
    Rational dt = times[k + 1] - a;
    long sets_alive = 0;
    for (const auto& c : set_completions)
      if (c > a) ++sets_alive;
    for (size_t si = 0; si < s_prime.sets.size(); ++si) {
      if (!(set_completions[si] > a)) continue;
      long alive = 0, in_seq = 0;
      for (const auto& js : spans[si]) {
        if (!(js.completion > a)) continue;
        ++alive;
        if (js.has_seq && a >= js.seq_from) ++in_seq;
      }
      if (Rational(in_seq) >= (Rational(1) - alpha) * Rational(alive))
        phases[si].push_back(seq_phase(dt));
      else
        phases[si].push_back(
            par_phase(dt * s_prime.processors / Rational(sets_alive)));
    }
  }
  for (size_t si = 0; si < s_prime.sets.size(); ++si) {
    JobSet nset;
    nset.id = s_prime.sets[si].id;
    Job njob;
    njob.id = nset.id;
    njob.phases = phases[si].empty() ? std::vector<Phase>{seq_phase(Rational(0))}
                                     : std::move(phases[si]);
    nset.jobs.push_back(std::move(njob));
    collapsed.sets.push_back(std::move(nset));
  }

  // Lemma postconditions; a violation means this implementation is wrong.
  ScheduleTrace remapped = substitute(s_prime, trace, collapsed);
  ScheduleTrace fresh = simulate(collapsed, equi, Rational(1));
  if (!(remapped == fresh))
    throw std::logic_error(
        "collapse_sets_to_jobs: Equi on the collapsed jobs diverged from the "
        "remapped equi-equi trace");
  for (size_t si = 0; si < s_prime.sets.size(); ++si) {
    const Job& j = collapsed.sets[si].jobs.front();
    if (par_of(j) * alpha > par_of(s_prime.sets[si]))
      throw std::logic_error("collapse_sets_to_jobs: par bound violated for set " +
                             s_prime.sets[si].id);
    long mult = seq_multiplier(s_prime.sets[si].jobs.size(), alpha);
    if (seq_of(j) > Rational(mult) * seq_of(s_prime.sets[si]))
      throw std::logic_error("collapse_sets_to_jobs: seq bound violated for set " +
                             s_prime.sets[si].id);
  }
  return collapsed;
}

namespace {

// Step-function sum of several piece lists; zero-allocation stretches are
// omitted and adjacent equal-rate stretches merged, matching the engine's
// canonical piece form.
std::vector<Piece> sum_pieces(const std::vector<const std::vector<Piece>*>& lists) {
  std::map<Rational, Rational> delta;
  for (const auto* list : lists) {
    for (const auto& p : *list) {
      if (p.rho.is_zero()) continue;
      delta[p.from] += p.rho;
      delta[p.to] -= p.rho;
    }
  }
  std::vector<Piece> out;
  Rational level(0);
  const Rational* start = nullptr;
  for (auto it = delta.begin(); it != delta.end(); ++it) {
    if (it->second.is_zero()) continue;
    Rational next = level + it->second;
    if (!level.is_zero()) out.push_back(Piece{*start, it->first, level});
    level = std::move(next);
    start = &it->first;
  }
  return out;
}

}  // namespace

ScheduleTrace substitute(const Instance& old_inst, const ScheduleTrace& trace,
                         const Instance& new_inst) {
  ScheduleTrace out;
  struct Entry {
    const std::string* set_id;
    const Job* job;
    std::string key;
  };
  std::vector<Entry> entries;
  for (const auto& nset : new_inst.sets) {
    const JobSet* oset = nullptr;
    for (const auto& s : old_inst.sets)
      if (s.id == nset.id) {
        oset = &s;
        break;
      }
    if (!oset)
      throw std::invalid_argument("substitute: set '" + nset.id +
                                  "' does not exist in the old instance");

    auto old_job_ids = [&]() {
      std::set<std::string> ids;
      for (const auto& j : oset->jobs) ids.insert(j.id);
      return ids;
    }();
    bool job_for_job = nset.jobs.size() == oset->jobs.size() &&
                       std::all_of(nset.jobs.begin(), nset.jobs.end(),
                                   [&](const Job& j) { return old_job_ids.count(j.id); });

    if (job_for_job) {
      for (const auto& njob : nset.jobs) {
        std::string key = qualify(nset.id, njob.id);
        out.pieces[key] = pieces_for(trace, key);
        entries.push_back(Entry{&nset.id, &njob, std::move(key)});
      }
    } else if (nset.jobs.size() == 1 && nset.jobs.front().id == nset.id) {
      std::vector<const std::vector<Piece>*> lists;
      for (const auto& ojob : oset->jobs)
        lists.push_back(&pieces_for(trace, qualify(nset.id, ojob.id)));
      std::string key = qualify(nset.id, nset.id);
      out.pieces[key] = sum_pieces(lists);
      entries.push_back(Entry{&nset.id, &nset.jobs.front(), std::move(key)});
    } else {
      throw std::invalid_argument("substitute: set '" + nset.id +
                                  "' matches neither the job-for-job nor the "
                                  "collapsed id structure");
    }
  }

  // Replay each new job inside its pieces and rebuild events canonically.
  std::map<std::string, Rational> set_completion;
  std::vector<TraceEvent> events;
  for (const auto& e : entries) {
    JobExecution exec;
    try {
      exec = execution_profile(*e.job, out.pieces.at(e.key));
    } catch (const std::invalid_argument& err) {
      throw InfeasibleSubstitutionError("substitute: job '" + e.key +
                                        "' does not fit the allotted pieces (" +
                                        err.what() + ")");
    }
    // Completion time of each phase; zero-work phases finish with their
    // predecessor, mirroring the engine's settle order.
    Rational prev(0);
    for (size_t k = 0; k < e.job->phases.size(); ++k) {
      for (const auto& seg : exec.segments)
        if (seg.phase_index == k) prev = seg.t1;
      if (k + 1 < e.job->phases.size())
        events.push_back(TraceEvent{prev, EventKind::PhaseComplete, e.key});
    }
    out.job_completions.emplace(e.key, exec.completion);
    events.push_back(TraceEvent{exec.completion, EventKind::JobComplete, e.key});
    auto [it, inserted] = set_completion.try_emplace(*e.set_id, exec.completion);
    if (!inserted) it->second = max(it->second, exec.completion);
  }
  for (const auto& [set_id, c] : set_completion) {
    events.push_back(TraceEvent{c, EventKind::SetComplete, set_id});
    out.set_completions.emplace(set_id, c);
  }
  std::sort(events.begin(), events.end(), [](const TraceEvent& x, const TraceEvent& y) {
    if (x.time != y.time) return x.time < y.time;
    if (x.kind != y.kind) return static_cast<int>(x.kind) < static_cast<int>(y.kind);
    return x.subject < y.subject;
  });
  out.events = std::move(events);
  return out;
}

}  // namespace malsched
