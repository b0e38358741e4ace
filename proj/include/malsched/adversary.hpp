#pragma once

#include <cstdint>
#include <utility>

#include "malsched/engine.hpp"
#include "malsched/model.hpp"

namespace malsched {

// Parameters shared by the worst-case generators: the round count `ell`,
// the speed augmentation `speed` (adaptive mode; instance size is
// (speed*ell)^ell), and the permutation seed (permuted mode).
struct AdversaryParams {
  long ell = 2;
  long speed = 1;
  std::uint64_t seed = 0;
};

// The static hard family: a single set of ell^ell jobs on one processor.
// The job that dies at round i+1 (i = 0..ell-1) carries i FullyParallel
// phases of works 1/ell^ell, ..., 1/ell^(ell-i+1) followed by Sequential
// work 1; ell^(ell-i) - ell^(ell-i-1) jobs die at round i+1 and a lone
// survivor carries all ell parallel phases.  Guarantees: Equi's makespan is
// exactly ell+1, each round's total parallel work is exactly 1/ell (so the
// whole instance carries parallel work 1), and par_first finishes by 2.
// Throws std::domain_error when ell < 2.
Instance example_instance(long ell);

// Interactive adversary against a non-clairvoyant policy running at integer
// speed s >= 1 on one processor.  Starts with n = (s*ell)^ell jobs visible
// but undetermined and plays rounds [i, i+1): it queries the policy once at
// time i, measures the processing power each alive job received over the
// round, keeps the (s*ell)^(ell-i-1) jobs that received least (ties broken
// by id), and retroactively decides that each kept job that received w > 0
// was in a FullyParallel phase of work exactly w while every dropped job
// was in a Sequential phase that completes exactly at the round's end.  The
// final survivor is assigned a Sequential phase ending at ell+1.
//
// Returns the materialized instance and the interactive trace.  Before
// returning, replays the instance through simulate(instance, policy, speed)
// and asserts that the replay reproduces the interactive trace event- and
// piece-identically and that the makespan is exactly ell+1; a discrepancy
// throws std::logic_error.  Each round's total parallel work is asserted
// to be at most 1/ell.  Policy misbehaviour surfaces as CapacityError.
// Throws std::domain_error when ell < 2 or speed < 1.
std::pair<Instance, ScheduleTrace> adaptive_run(const Policy& policy, long ell, long speed);

// Randomized variant of the static family: every job of example_instance(ell)
// is copied n = ell^ell times with its parallel works divided by n, and the
// n^2 resulting jobs are listed in a uniformly random order (ids reassigned
// in list order).  Deterministic function of (ell, seed): the permutation is
// drawn by a Fisher-Yates shuffle over std::mt19937_64(seed) with rejection
// sampling, so it is identical across platforms.  Equi's makespan is ell+1
// for every seed.  Throws std::domain_error when ell < 2.
Instance permuted_instance(long ell, std::uint64_t seed);

}  // namespace malsched
