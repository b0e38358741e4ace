#pragma once

#include <string>

#include "malsched/engine.hpp"

namespace malsched {

// Online (non-clairvoyant) policies. Each is a pure function of
// ObservableState; they cannot observe phases, works or speed-ups.
enum class PolicyId { Equi, EquiEqui, EquiSerial };

PolicyId policy_from_name(const std::string& name);  // "equi" | "equi-equi" | "equi-serial"
const char* policy_name(PolicyId id);

// budget / N(t) to every alive job, sets ignored.
Allocation equi(const ObservableState& st, const Rational& budget);
// budget / (number of alive sets) per set, split evenly inside each set.
Allocation equi_equi(const ObservableState& st, const Rational& budget);
// budget / (number of alive sets) per set, all of it to the set's lowest-id
// alive job (the one-after-another strategy inside sets).
Allocation equi_serial(const ObservableState& st, const Rational& budget);

Policy make_policy(PolicyId id);

// Clairvoyant reference schedule for (Par-Seq)* instances (ClassError
// otherwise): the full budget goes to one eligible FullyParallel phase (the
// lowest qualified job id whose current phase is parallel); Sequential phases
// run at rate 1 with zero allocation. Used as the optimum upper bound for
// makespan.
ScheduleTrace par_first(const Instance& inst, const Rational& speed = Rational(1));

// Set-aware variant used as the optimum upper bound for setflowtime: sets are
// served in ascending par(S_i) order (ties by set id); within the active set,
// parallel phases are served one job at a time by job id.
ScheduleTrace par_first_setaware(const Instance& inst, const Rational& speed = Rational(1));

// Clairvoyant reference schedule for arbitrary instances (any speed-up mix):
// the full budget goes to the first alive job, in (set id, job id) order,
// whose current phase is not Sequential and gains positive rate from the
// budget; everything else gets zero (Sequential phases still run at rate 1).
ScheduleTrace serial_reference(const Instance& inst, const Rational& speed = Rational(1));

}  // namespace malsched
