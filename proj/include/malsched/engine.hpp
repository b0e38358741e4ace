#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "malsched/model.hpp"
#include "malsched/rational.hpp"

namespace malsched {

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

enum class EventKind { PhaseComplete, JobComplete, SetComplete };

const char* event_kind_name(EventKind k);
EventKind event_kind_from_name(const std::string& name);

struct TraceEvent {
  Rational time;
  EventKind kind;
  std::string subject;  // qualified job "S1/J2", or set id for SetComplete
  friend bool operator==(const TraceEvent& a, const TraceEvent& b) {
    return a.time == b.time && a.kind == b.kind && a.subject == b.subject;
  }
};

// One constant-allocation span for one job. A job's pieces are contiguous
// from 0 to its completion, non-overlapping, with from < to; adjacent pieces
// with equal rho are merged.
struct Piece {
  Rational from, to, rho;
  friend bool operator==(const Piece& a, const Piece& b) {
    return a.from == b.from && a.to == b.to && a.rho == b.rho;
  }
};

struct ScheduleTrace {
  std::map<std::string, std::vector<Piece>> pieces;  // qualified job -> pieces
  std::vector<TraceEvent> events;                    // time-ordered, batches canonical
  std::map<std::string, Rational> job_completions;   // qualified job -> time
  std::map<std::string, Rational> set_completions;   // set id -> time
  friend bool operator==(const ScheduleTrace& a, const ScheduleTrace& b) {
    return a.pieces == b.pieces && a.events == b.events &&
           a.job_completions == b.job_completions && a.set_completions == b.set_completions;
  }
};

struct Metrics {
  Rational flowtime;     // sum of job completion times
  Rational makespan;     // max job completion time
  Rational setflowtime;  // sum of set completion times
  std::map<std::string, Rational> per_set;
  std::map<std::string, Rational> per_job;
};

Metrics compute_metrics(const ScheduleTrace& trace);

// ---------------------------------------------------------------------------
// Scheduling interface
//
// Non-clairvoyant policies are pure functions of ObservableState: current
// time plus the identities of alive sets/jobs. Nothing about phases, works or
// speed-up functions crosses this boundary; completions become visible only
// through the alive lists shrinking.
// ---------------------------------------------------------------------------

struct ObservableState {
  Rational now;
  // Sets with at least one alive job, sorted by set id; alive job ids sorted.
  std::vector<std::pair<std::string, std::vector<std::string>>> alive_sets;
  size_t alive_jobs() const {
    size_t n = 0;
    for (const auto& [_, jobs] : alive_sets) n += jobs.size();
    return n;
  }
};

// Shares keyed by qualified job id. Jobs not mentioned receive 0.
using Allocation = std::vector<std::pair<std::string, Rational>>;

using Policy = std::function<Allocation(const ObservableState&, const Rational& budget)>;

// Clairvoyant hook used by offline reference schedulers and tests; sees the
// full per-job execution position. Online policies cannot be built on it.
struct JobView {
  const std::string* set_id;
  const std::string* job_id;
  std::string qualified;
  size_t phase_index;
  const Phase* phase;        // current phase
  const Rational* remaining;  // remaining work in current phase
};
using ClairvoyantAllocator =
    std::function<Allocation(const Rational& now, const std::vector<JobView>& alive,
                             const Rational& budget)>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

// Scheduler handed out more than the budget (or an ill-formed share).
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// No alive job can make progress (all rates zero).
struct StallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Event count exceeded the bound (see MALSCHED_MAX_EVENTS).
struct RunawayError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

// Exact event-driven run of `policy` on `inst` with budget speed * processors
// (speed augmentation changes only the budget handed to the scheduler). The
// scheduler is re-queried at every event, including phase transitions;
// simultaneous completions are processed as one batch at the event time.
// max_events = 0 derives the bound sum(phases) + jobs + sets + 4; the
// MALSCHED_MAX_EVENTS environment variable is honored by the CLI, not here.
ScheduleTrace simulate(const Instance& inst, const Policy& policy,
                       const Rational& speed = Rational(1), unsigned long max_events = 0);

ScheduleTrace simulate_clairvoyant(const Instance& inst, const ClairvoyantAllocator& alloc,
                                   const Rational& speed = Rational(1),
                                   unsigned long max_events = 0);

// Checks a trace against an instance: (a) summed allocation never exceeds
// `budget`, (b) each job's phases complete exactly under its pieces (zero
// allocation outside recorded pieces), (c) recorded completions match the
// recomputed ones. Returns violations; empty means valid.
std::vector<Violation> validate_trace(const Instance& inst, const ScheduleTrace& trace,
                                      const Rational& budget);

// ---------------------------------------------------------------------------
// Offline trace analysis
// ---------------------------------------------------------------------------

// One constant-rate span of a job's execution under a piece list. w0/w1 are
// cumulative work within the phase at t0/t1; stalled spans have w0 == w1.
// Spans are contiguous from 0 to the job's completion.
struct ExecSegment {
  Rational t0, t1;
  Rational rho;
  size_t phase_index;
  Rational w0, w1;
};

struct JobExecution {
  std::vector<ExecSegment> segments;
  Rational completion;
};

// Replays `job` against `pieces` (allocation 0 before, between and after
// pieces) and returns the execution segments plus the completion time. Throws
// std::invalid_argument if the pieces are ill-formed or the job never
// completes.
JobExecution execution_profile(const Job& job, const std::vector<Piece>& pieces);

// True if the job's allocation rho(t) is non-decreasing over [0, completion).
bool allocation_nondecreasing(const std::vector<Piece>& pieces);

}  // namespace malsched
