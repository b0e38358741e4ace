#include "malsched/engine.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

namespace malsched {

const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::PhaseComplete: return "phase-complete";
    case EventKind::JobComplete: return "job-complete";
    case EventKind::SetComplete: return "set-complete";
  }
  return "?";
}

EventKind event_kind_from_name(const std::string& name) {
  if (name == "phase-complete") return EventKind::PhaseComplete;
  if (name == "job-complete") return EventKind::JobComplete;
  if (name == "set-complete") return EventKind::SetComplete;
  throw std::invalid_argument("unknown event kind '" + name + "'");
}

Metrics compute_metrics(const ScheduleTrace& trace) {
  Metrics m;
  m.flowtime = Rational(0);
  m.makespan = Rational(0);
  m.setflowtime = Rational(0);
  for (const auto& [job, c] : trace.job_completions) {
    m.flowtime += c;
    m.makespan = max(m.makespan, c);
    m.per_job.emplace(job, c);
  }
  for (const auto& [set, c] : trace.set_completions) {
    m.setflowtime += c;
    m.per_set.emplace(set, c);
  }
  return m;
}

namespace {

struct SimJob {
  size_t set_idx;
  const std::string* set_id;
  const Job* job;
  std::string qualified;
  size_t phase = 0;
  Rational remaining;
  bool alive = true;
};

void append_piece(std::vector<Piece>& pieces, const Rational& from, const Rational& to,
                  const Rational& rho) {
  if (!pieces.empty() && pieces.back().to == from && pieces.back().rho == rho) {
    pieces.back().to = to;
    return;
  }
  pieces.push_back(Piece{from, to, rho});
}

// Canonical batch order at one event time: phase completions, then job
// completions, then set completions; subjects sorted within each kind.
void emit_batch(std::vector<TraceEvent>& events, const Rational& t,
                std::vector<std::string> phases, std::vector<std::string> jobs,
                std::vector<std::string> sets) {
  std::sort(phases.begin(), phases.end());
  std::sort(jobs.begin(), jobs.end());
  std::sort(sets.begin(), sets.end());
  for (auto& s : phases) events.push_back(TraceEvent{t, EventKind::PhaseComplete, std::move(s)});
  for (auto& s : jobs) events.push_back(TraceEvent{t, EventKind::JobComplete, std::move(s)});
  for (auto& s : sets) events.push_back(TraceEvent{t, EventKind::SetComplete, std::move(s)});
}

}  // namespace

ScheduleTrace simulate_clairvoyant(const Instance& inst, const ClairvoyantAllocator& alloc,
                                   const Rational& speed, unsigned long max_events) {
  require_valid(inst);
  if (speed.sign() <= 0) throw std::domain_error("simulate: speed must be positive");
  const Rational budget = speed * inst.processors;

  // Canonical order: sets sorted by id, jobs sorted by id within each set.
  std::vector<const JobSet*> sets;
  for (const auto& s : inst.sets) sets.push_back(&s);
  std::sort(sets.begin(), sets.end(),
            [](const JobSet* a, const JobSet* b) { return a->id < b->id; });

  std::vector<SimJob> jobs;
  std::vector<size_t> set_alive;
  unsigned long total_phases = 0;
  for (size_t si = 0; si < sets.size(); ++si) {
    std::vector<const Job*> js;
    for (const auto& j : sets[si]->jobs) js.push_back(&j);
    std::sort(js.begin(), js.end(), [](const Job* a, const Job* b) { return a->id < b->id; });
    for (const Job* j : js) {
      SimJob sj;
      sj.set_idx = si;
      sj.set_id = &sets[si]->id;
      sj.job = j;
      sj.qualified = qualify(sets[si]->id, j->id);
      sj.remaining = j->phases.empty() ? Rational(0) : j->phases.front().work;
      jobs.push_back(std::move(sj));
      total_phases += j->phases.size();
    }
    set_alive.push_back(sets[si]->jobs.size());
  }
  size_t alive = jobs.size();
  if (max_events == 0) max_events = total_phases + jobs.size() + sets.size() + 4;

  ScheduleTrace trace;
  Rational now(0);

  // Advances completed phases/jobs at time `now`; returns via the batch lists.
  auto settle = [&]() {
    std::vector<std::string> ph_done, job_done, set_done;
    for (auto& j : jobs) {
      if (!j.alive) continue;
      const auto& phases = j.job->phases;
      while (j.alive) {
        if (j.phase >= phases.size()) {
          j.alive = false;
          --alive;
          trace.job_completions.emplace(j.qualified, now);
          job_done.push_back(j.qualified);
          if (--set_alive[j.set_idx] == 0) {
            trace.set_completions.emplace(*j.set_id, now);
            set_done.push_back(*j.set_id);
          }
          break;
        }
        if (!j.remaining.is_zero()) break;
        ++j.phase;
        if (j.phase < phases.size()) {
          ph_done.push_back(j.qualified);
          j.remaining = phases[j.phase].work;
        }
      }
    }
    if (!ph_done.empty() || !job_done.empty() || !set_done.empty())
      emit_batch(trace.events, now, std::move(ph_done), std::move(job_done),
                 std::move(set_done));
  };

  settle();  // zero-work jobs complete at t = 0, before any scheduler query

  std::vector<JobView> views;
  std::vector<size_t> view_index;  // view position -> jobs index
  unsigned long queries = 0;
  while (alive > 0) {
    if (++queries > max_events)
      throw RunawayError("event bound " + std::to_string(max_events) +
                         " exceeded (set MALSCHED_MAX_EVENTS to raise)");
    views.clear();
    view_index.clear();
    for (size_t i = 0; i < jobs.size(); ++i) {
      const auto& j = jobs[i];
      if (!j.alive) continue;
      views.push_back(JobView{j.set_id, &j.job->id, j.qualified, j.phase,
                              &j.job->phases[j.phase], &j.remaining});
      view_index.push_back(i);
    }

    Allocation raw = alloc(now, views, budget);

    // Resolve shares against the alive jobs. Fast path: entries arrive in the
    // canonical (set, job) order; otherwise fall back to a lookup map.
    std::vector<Rational> rho(views.size(), Rational(0));
    bool ordered = raw.size() <= views.size();
    size_t vi = 0;
    if (ordered) {
      for (const auto& [key, share] : raw) {
        while (vi < views.size() && views[vi].qualified != key) ++vi;
        if (vi == views.size()) {
          ordered = false;
          break;
        }
        rho[vi] = share;
      }
    }
    if (!ordered) {
      std::map<std::string, Rational> by_key;
      for (const auto& [key, share] : raw)
        if (!by_key.emplace(key, share).second)
          throw std::invalid_argument("duplicate allocation entry for '" + key + "'");
      size_t used = 0;
      for (size_t i = 0; i < views.size(); ++i) {
        auto it = by_key.find(views[i].qualified);
        if (it != by_key.end()) {
          rho[i] = it->second;
          ++used;
        }
      }
      if (used != by_key.size())
        throw std::invalid_argument("allocation mentions unknown or completed jobs");
    }

    Rational total(0);
    for (const auto& r : rho) {
      if (r.sign() < 0) throw CapacityError("negative processor share");
      total += r;
    }
    if (total > budget)
      throw CapacityError("allocation " + total.str() + " exceeds budget " + budget.str());

    // Next event: earliest phase completion under the current constant rates.
    std::vector<Rational> rates(views.size());
    std::optional<Rational> delta;
    for (size_t i = 0; i < views.size(); ++i) {
      rates[i] = evaluate_speedup(views[i].phase->speedup, rho[i]);
      if (rates[i].sign() > 0) {
        Rational cand = *views[i].remaining / rates[i];
        if (!delta || cand < *delta) delta = cand;
      }
    }
    if (!delta) throw StallError("no alive job can progress at time " + now.str());

    Rational next = now + *delta;
    for (size_t i = 0; i < views.size(); ++i) {
      SimJob& j = jobs[view_index[i]];
      append_piece(trace.pieces[j.qualified], now, next, rho[i]);
      if (rates[i].sign() > 0) j.remaining -= rates[i] * *delta;
    }
    now = next;
    settle();
  }
  // Jobs that completed at time 0 still get an (empty) pieces entry so the
  // trace covers every job key.
  for (const auto& j : jobs) trace.pieces.try_emplace(j.qualified);
  return trace;
}

ScheduleTrace simulate(const Instance& inst, const Policy& policy, const Rational& speed,
                       unsigned long max_events) {
  return simulate_clairvoyant(
      inst,
      [&policy](const Rational& now, const std::vector<JobView>& alive,
                const Rational& budget) {
        ObservableState st;
        st.now = now;
        for (const auto& v : alive) {
          if (st.alive_sets.empty() || st.alive_sets.back().first != *v.set_id)
            st.alive_sets.emplace_back(*v.set_id, std::vector<std::string>{});
          st.alive_sets.back().second.push_back(*v.job_id);
        }
        return policy(st, budget);
      },
      speed, max_events);
}

// ---------------------------------------------------------------------------
// Offline replay
// ---------------------------------------------------------------------------

JobExecution execution_profile(const Job& job, const std::vector<Piece>& pieces) {
  for (size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    if (p.from.sign() < 0 || p.from >= p.to || p.rho.sign() < 0)
      throw std::invalid_argument("ill-formed piece for job '" + job.id + "'");
    if (i > 0 && p.from < pieces[i - 1].to)
      throw std::invalid_argument("overlapping pieces for job '" + job.id + "'");
  }

  JobExecution exec;
  Rational t(0);
  size_t pi = 0;  // next piece not fully consumed

  // Allocation span containing time t: [t, end) at rate rho; end empty = unbounded.
  auto current_span = [&]() -> std::pair<std::optional<Rational>, Rational> {
    while (pi < pieces.size() && pieces[pi].to <= t) ++pi;
    if (pi == pieces.size()) return {std::nullopt, Rational(0)};
    if (t < pieces[pi].from) return {pieces[pi].from, Rational(0)};  // gap
    return {pieces[pi].to, pieces[pi].rho};
  };

  for (size_t k = 0; k < job.phases.size(); ++k) {
    const Phase& ph = job.phases[k];
    Rational done(0);
    Rational remaining = ph.work;
    while (remaining.sign() > 0) {
      auto [end, rho] = current_span();
      Rational rate = evaluate_speedup(ph.speedup, rho);
      if (rate.sign() == 0) {
        if (!end)
          throw std::invalid_argument("job '" + job.id + "' phase " + std::to_string(k) +
                                      " never completes under the given pieces");
        exec.segments.push_back(ExecSegment{t, *end, rho, k, done, done});
        t = *end;
        continue;
      }
      Rational need = remaining / rate;
      if (end && *end - t < need) {
        Rational gained = rate * (*end - t);
        exec.segments.push_back(ExecSegment{t, *end, rho, k, done, done + gained});
        done += gained;
        remaining -= gained;
        t = *end;
      } else {
        exec.segments.push_back(ExecSegment{t, t + need, rho, k, done, ph.work});
        t += need;
        remaining = Rational(0);
      }
    }
  }
  exec.completion = t;
  return exec;
}

bool allocation_nondecreasing(const std::vector<Piece>& pieces) {
  const Rational* prev = nullptr;
  for (size_t i = 0; i < pieces.size(); ++i) {
    if (i > 0 && pieces[i].from > pieces[i - 1].to && pieces[i].rho.sign() > 0 &&
        pieces[i - 1].rho.sign() > 0)
      return false;  // a gap is an implicit rho = 0 stretch
    if (prev && pieces[i].rho < *prev) return false;
    prev = &pieces[i].rho;
  }
  return true;
}

std::vector<Violation> validate_trace(const Instance& inst, const ScheduleTrace& trace,
                                      const Rational& budget) {
  std::vector<Violation> out;

  // (a) capacity: sweep the summed allocation over all piece boundaries.
  std::map<Rational, Rational> delta;
  for (const auto& [key, pieces] : trace.pieces) {
    for (const auto& p : pieces) {
      if (p.rho.is_zero()) continue;
      delta[p.from] += p.rho;
      delta[p.to] -= p.rho;
    }
  }
  Rational level(0);
  for (const auto& [time, d] : delta) {
    level += d;
    if (level > budget) {
      out.push_back({"capacity", "summed allocation " + level.str() + " exceeds budget " +
                                     budget.str() + " from time " + time.str()});
      break;
    }
  }

  // (b)+(c) per-job replay: phases must complete exactly, in order, and agree
  // with the recorded completion times.
  std::set<std::string> known_jobs;
  static const std::vector<Piece> kNoPieces;
  for (const auto& set : inst.sets) {
    Rational set_completion(0);
    for (const auto& job : set.jobs) {
      std::string key = qualify(set.id, job.id);
      known_jobs.insert(key);
      auto pit = trace.pieces.find(key);
      const auto& pieces = pit == trace.pieces.end() ? kNoPieces : pit->second;
      Rational completion;
      try {
        completion = execution_profile(job, pieces).completion;
      } catch (const std::invalid_argument& e) {
        out.push_back({"work", e.what()});
        continue;
      }
      set_completion = max(set_completion, completion);
      auto cit = trace.job_completions.find(key);
      if (cit == trace.job_completions.end())
        out.push_back({"missing-completion", "no recorded completion for " + key});
      else if (cit->second != completion)
        out.push_back({"completion-mismatch",
                       key + ": recorded " + cit->second.str() + ", replay gives " +
                           completion.str()});
    }
    auto sit = trace.set_completions.find(set.id);
    if (sit == trace.set_completions.end())
      out.push_back({"missing-completion", "no recorded completion for set " + set.id});
    else if (sit->second != set_completion)
      out.push_back({"completion-mismatch",
                     "set " + set.id + ": recorded " + sit->second.str() +
                         ", replay gives " + set_completion.str()});
  }
  for (const auto& [key, _] : trace.pieces)
    if (!known_jobs.count(key))
      out.push_back({"unknown-job", "trace allocates to unknown job " + key});
  return out;
}

}  // namespace malsched
