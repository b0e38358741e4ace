#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "malsched/engine.hpp"
#include "malsched/model.hpp"

namespace malsched {

// Thrown by substitute() when a replacement job's work cannot complete within
// the pieces allotted to the job it replaces.
struct InfeasibleSubstitutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a supplied trace is not the trace the required policy produces
// on the given instance (collapse_sets_to_jobs, proof_bound_check).
struct MismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Outcome of the two substitution checks behind the (Par-Seq)* reduction:
//  - preserved_schedule: substituting the reduced jobs into trace_a (pieces
//    are identical by construction) leaves every job and set completion
//    unchanged, so a non-clairvoyant policy would have produced the same
//    schedule on the reduced instance.
//  - reference_valid: substituting the reduced jobs into trace_o yields a
//    trace that passes validate_trace at the instance's processor count.
struct SubstitutionReport {
  bool preserved_schedule = false;
  bool reference_valid = false;
  std::map<std::string, std::vector<Phase>> per_job_phase_lists;  // qualified id -> phases
};

// Rewrites every job of `inst` into an equivalent (Par-Seq)* job, given the
// trace of a non-clairvoyant policy A (trace_a, any budget) and a reference
// trace O (trace_o, budget = inst.processors). Per job, the cumulative-work
// correspondence between the two traces is cut at every allocation change on
// either side; a chunk executed at rho_a by A and rho_o by O becomes a
// Sequential phase of work dt_a when rho_o <= rho_a, else a FullyParallel
// phase of work rho_a * dt_a. Adjacent same-kind phases are merged. Stalled
// spans (zero rate on one side) contribute phases only through the
// progressing side's chunks.
//
// Errors: std::invalid_argument when a trace does not cover a job's work.
std::pair<Instance, SubstitutionReport> reduce_to_parseq(const Instance& inst,
                                                         const ScheduleTrace& trace_a,
                                                         const ScheduleTrace& trace_o);

// Replaces every (Par-Seq)* job by [FullyParallel par(J), Sequential seq(J)]
// (zero-work phases dropped; all-zero jobs keep [seq 0]). ClassError if the
// instance is not (Par-Seq)*.
Instance frontload(const Instance& inst);

// Collapses each set of the Par-Seq instance s_prime into a single job, given
// the Equi-over-Equi trace of s_prime at speed 1. Between consecutive trace
// breakpoints, a set with s_k alive sequential-phase jobs out of N_i alive
// jobs contributes a Sequential phase of the interval length when
// s_k >= (1-alpha) * N_i, else a FullyParallel phase of work
// integral(p / N(t)) dt over the interval (N = alive set count). One phase is
// emitted per interval (no merging). The output instance has one singleton
// set per input set, the set id doubling as the job id.
//
// Postconditions (violations throw std::logic_error, as they would falsify
// the implementation): substituting the collapsed jobs into the trace equals
// simulate(collapsed, equi) event-for-event; par(J_i) <= par(S'_i) / alpha;
// seq(J_i) <= seq_multiplier(|S'_i|, alpha) * seq(S'_i).
//
// Errors: domain_error for alpha outside (0,1); ClassError for non-Par-Seq
// jobs; MismatchError when the trace is not equi-equi's trace of s_prime.
Instance collapse_sets_to_jobs(const Instance& s_prime, const ScheduleTrace& trace,
                               const Rational& alpha);

// Reschedules new_inst inside the pieces of `trace` (a trace of old_inst).
// Two mappings are supported, decided per set:
//   - job-for-job: the new set has the same job ids as the old one; each new
//     job reuses its namesake's pieces;
//   - collapsed: the new set is a singleton whose job id equals the set id;
//     the job receives the sum of the old member jobs' allocations.
// Completions and events are rebuilt by replaying the new jobs against the
// pieces. Throws InfeasibleSubstitutionError when a new job's work does not
// fit its pieces; std::invalid_argument when the id structure matches
// neither mapping.
ScheduleTrace substitute(const Instance& old_inst, const ScheduleTrace& trace,
                         const Instance& new_inst);

}  // namespace malsched
