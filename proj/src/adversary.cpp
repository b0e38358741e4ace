#include "malsched/adversary.hpp"

#include <algorithm>
#include <climits>
#include <cstdio>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace malsched {

namespace {

long pow_checked(long base, long exp) {
  long r = 1;
  for (long k = 0; k < exp; ++k) {
    if (r > LONG_MAX / base) throw std::domain_error("instance size overflows a long");
    r *= base;
  }
  return r;
}

std::string padded_id(long index, long total) {
  int width = 1;
  for (long v = total; v >= 10; v /= 10) ++width;
  char buf[32];
  std::snprintf(buf, sizeof buf, "J%0*ld", width, index);
  return buf;
}

void append_piece(std::vector<Piece>& pieces, const Rational& from, const Rational& to,
                  const Rational& rho) {
  if (!pieces.empty() && pieces.back().to == from && pieces.back().rho == rho) {
    pieces.back().to = to;
    return;
  }
  pieces.push_back(Piece{from, to, rho});
}

// Draw uniformly from {0, ..., k-1} with rejection sampling so the result is
// identical on every platform for a given mt19937_64 stream.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t k) {
  if (k <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % k;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % k;
}

}  // namespace

Instance example_instance(long ell) {
  if (ell < 2) throw std::domain_error("example_instance: ell must be at least 2");
  std::vector<long> pow(ell + 1);
  pow[0] = 1;
  for (long k = 1; k <= ell; ++k) pow[k] = pow_checked(ell, k);
  const long n = pow[ell];

  Instance inst;
  inst.processors = Rational(1);
  JobSet set;
  set.id = "S1";
  set.jobs.reserve(n);
  long index = 1;
  auto add_jobs = [&](long count, long par_phases) {
    std::vector<Phase> phases;
    for (long k = 0; k < par_phases; ++k)
      phases.push_back(par_phase(Rational(1, pow[ell - k])));
    phases.push_back(seq_phase(Rational(1)));
    for (long c = 0; c < count; ++c) {
      Job job;
      job.id = padded_id(index++, n);
      job.phases = phases;
      set.jobs.push_back(std::move(job));
    }
  };
  for (long i = 0; i < ell; ++i) add_jobs(pow[ell - i] - pow[ell - i - 1], i);
  add_jobs(1, ell);  // the survivor
  inst.sets.push_back(std::move(set));
  return inst;
}

std::pair<Instance, ScheduleTrace> adaptive_run(const Policy& policy, long ell, long speed) {
  if (ell < 2) throw std::domain_error("adaptive_run: ell must be at least 2");
  if (speed < 1) throw std::domain_error("adaptive_run: speed must be a positive integer");
  std::vector<long> pow(ell + 1);
  pow[0] = 1;
  for (long k = 1; k <= ell; ++k) pow[k] = pow_checked(speed * ell, k);
  const long n = pow[ell];
  const Rational budget(speed);  // one processor at speed s

  struct Body {
    std::string id, key;
    std::vector<Phase> phases;
    Rational determined{0};  // phases are pinned up to this time
    std::vector<Piece> pieces;
  };
  std::vector<Body> bodies(n);
  std::map<std::string, size_t> index_of;
  for (long j = 0; j < n; ++j) {
    bodies[j].id = padded_id(j + 1, n);
    bodies[j].key = qualify("S1", bodies[j].id);
    index_of.emplace(bodies[j].key, j);
  }
  std::vector<size_t> alive(n);
  for (long j = 0; j < n; ++j) alive[j] = j;
  std::vector<char> is_alive(n, 1);
  std::vector<Rational> recv(n, Rational(0));

  ScheduleTrace trace;
  std::vector<TraceEvent> events;

  auto query = [&](const Rational& now) {
    ObservableState st;
    st.now = now;
    st.alive_sets.emplace_back("S1", std::vector<std::string>{});
    for (size_t idx : alive) st.alive_sets.back().second.push_back(bodies[idx].id);
    Allocation alloc = policy(st, budget);
    for (size_t idx : alive) recv[idx] = Rational(0);
    std::set<std::string> seen;
    Rational total(0);
    for (const auto& [key, rho] : alloc) {
      if (rho.sign() < 0) throw CapacityError("negative processor share");
      if (!seen.insert(key).second)
        throw std::invalid_argument("duplicate allocation entry for '" + key + "'");
      auto it = index_of.find(key);
      if (it == index_of.end() || !is_alive[it->second])
        throw std::invalid_argument("allocation mentions unknown or completed jobs");
      total += rho;
      recv[it->second] = rho;
    }
    if (total > budget)
      throw CapacityError("allocation " + total.str() + " exceeds budget " + budget.str());
    Rational next = now + Rational(1);
    for (size_t idx : alive) append_piece(bodies[idx].pieces, now, next, recv[idx]);
  };

  for (long i = 0; i < ell; ++i) {
    const Rational now(i), next(i + 1);
    query(now);

    // Keep the jobs that received least this round; ties break by id.
    std::vector<size_t> order = alive;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return recv[a] < recv[b]; });
    const long keep = pow[ell - i - 1];

    Rational round_par(0);
    for (long k = 0; k < keep; ++k) round_par += recv[order[k]];
    if (round_par > Rational(1, ell))
      throw std::logic_error("adaptive_run: surviving jobs received more than 1/ell");

    for (long k = 0; k < keep; ++k) {
      Body& b = bodies[order[k]];
      if (recv[order[k]].sign() > 0) {
        b.phases.push_back(par_phase(recv[order[k]]));
        b.determined = next;
        events.push_back(TraceEvent{next, EventKind::PhaseComplete, b.key});
      }
    }
    for (size_t k = keep; k < order.size(); ++k) {
      Body& b = bodies[order[k]];
      b.phases.push_back(seq_phase(next - b.determined));
      trace.job_completions.emplace(b.key, next);
      events.push_back(TraceEvent{next, EventKind::JobComplete, b.key});
      is_alive[order[k]] = 0;
    }
    std::sort(order.begin(), order.begin() + keep);
    order.resize(keep);
    alive = std::move(order);
  }

  // One survivor is left; it runs a final sequential phase through ell+1.
  query(Rational(ell));
  Body& last = bodies[alive.front()];
  const Rational end(ell + 1);
  last.phases.push_back(seq_phase(end - last.determined));
  trace.job_completions.emplace(last.key, end);
  events.push_back(TraceEvent{end, EventKind::JobComplete, last.key});
  events.push_back(TraceEvent{end, EventKind::SetComplete, "S1"});
  trace.set_completions.emplace("S1", end);

  std::sort(events.begin(), events.end(), [](const TraceEvent& x, const TraceEvent& y) {
    if (x.time != y.time) return x.time < y.time;
    if (x.kind != y.kind) return static_cast<int>(x.kind) < static_cast<int>(y.kind);
    return x.subject < y.subject;
  });
  trace.events = std::move(events);

  Instance inst;
  inst.processors = Rational(1);
  JobSet set;
  set.id = "S1";
  set.jobs.reserve(n);
  for (Body& b : bodies) {
    trace.pieces.emplace(b.key, std::move(b.pieces));
    Job job;
    job.id = std::move(b.id);
    job.phases = std::move(b.phases);
    set.jobs.push_back(std::move(job));
  }
  inst.sets.push_back(std::move(set));

  ScheduleTrace replay = simulate(inst, policy, Rational(speed));
  if (!(replay == trace))
    throw std::logic_error("adaptive_run: replaying the materialized instance "
                           "diverged from the interactive trace");
  if (!(trace.set_completions.at("S1") == end))
    throw std::logic_error("adaptive_run: makespan is not ell+1");
  return {std::move(inst), std::move(trace)};
}

Instance permuted_instance(long ell, std::uint64_t seed) {
  Instance base = example_instance(ell);
  const std::vector<Job>& origin = base.sets.front().jobs;
  const long n = static_cast<long>(origin.size());
  const long total = pow_checked(n, 2);
  const Rational copies(n);

  std::vector<const std::vector<Phase>*> picks;
  picks.reserve(total);
  std::vector<std::vector<Phase>> shrunk(n);
  for (long j = 0; j < n; ++j) {
    for (const Phase& ph : origin[j].phases)
      shrunk[j].push_back(is_fully_parallel(ph) ? par_phase(ph.work / copies) : ph);
    for (long c = 0; c < n; ++c) picks.push_back(&shrunk[j]);
  }
  std::mt19937_64 rng(seed);
  for (size_t i = picks.size() - 1; i > 0; --i) {
    size_t j = static_cast<size_t>(bounded(rng, i + 1));
    std::swap(picks[i], picks[j]);
  }

  Instance inst;
  inst.processors = Rational(1);
  JobSet set;
  set.id = "S1";
  set.jobs.reserve(total);
  for (long i = 0; i < total; ++i) {
    Job job;
    job.id = padded_id(i + 1, total);
    job.phases = *picks[i];
    set.jobs.push_back(std::move(job));
  }
  inst.sets.push_back(std::move(set));
  return inst;
}

}  // namespace malsched
