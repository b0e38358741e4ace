#include <stdexcept>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "malsched/adversary.hpp"
#include "malsched/bounds.hpp"
#include "malsched/bracket.hpp"
#include "malsched/engine.hpp"
#include "malsched/generators.hpp"
#include "malsched/reduction.hpp"
#include "malsched/schedulers.hpp"

using namespace malsched;
using testutil::job;
using testutil::single_set;

TEST_SUITE("bounds") {

TEST_CASE("objective names round-trip") {
  for (Objective o : {Objective::Makespan, Objective::Setflowtime, Objective::Flowtime})
    CHECK(objective_from_name(objective_name(o)) == o);
  CHECK_THROWS_AS(objective_from_name("latency"), std::invalid_argument);
}

TEST_CASE("makespan lower bound pools parallel work and per-job chains") {
  CHECK(makespan_lower_bound(testutil::two_set_instance()) == Rational(2));
  CHECK(makespan_lower_bound(example_instance(3)) == Rational(40, 27));
  // One processor, one job: chain dominates.
  Instance chain = single_set(1, {job("J1", {par_phase(Rational(1)), seq_phase(Rational(1))})});
  CHECK(makespan_lower_bound(chain) == Rational(2));
  // Two processors halve the parallel term.
  Instance wide = single_set(2, {job("J1", {par_phase(Rational(2)), seq_phase(Rational(1))})});
  CHECK(makespan_lower_bound(wide) == Rational(2));
  Instance pwl = single_set(1, {job("J1", {pwl_phase(Rational(1),
                                                     {{Rational(0), Rational(0)},
                                                      {Rational(1), Rational(1)}})})});
  CHECK_THROWS_AS(makespan_lower_bound(pwl), ClassError);
}

TEST_CASE("setflowtime lower bound matches the makespan bound on one set") {
  CHECK(setflowtime_lower_bound(testutil::two_set_instance()) == Rational(3));
  CHECK(setflowtime_lower_bound(example_instance(3)) == Rational(40, 27));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance inst = random_parseq_set(seed, 5);
    CAPTURE(seed);
    CHECK(setflowtime_lower_bound(inst) == makespan_lower_bound(inst));
  }
}

TEST_CASE("seq_multiplier counts exact shrink steps") {
  CHECK(seq_multiplier(1, Rational(1, 2)) == 1);
  CHECK(seq_multiplier(2, Rational(1, 2)) == 2);  // (1/2)*2 = 1 is not yet < 1
  CHECK(seq_multiplier(3, Rational(1, 2)) == 2);
  CHECK(seq_multiplier(8, Rational(1, 2)) == 4);
  CHECK(seq_multiplier(1000, Rational(1, 2)) == 10);
  CHECK(seq_multiplier(1000, alpha_for(1000)) == 12);
}

TEST_CASE("alpha_for stays inside (0,1) and clamps small n") {
  CHECK(alpha_for(1000) == Rational(2703567, 5000000));
  for (unsigned long n : {2UL, 5UL, 15UL}) CHECK(alpha_for(n) == Rational(1, 2));
  for (unsigned long n : {16UL, 100UL, 1000UL, 100000UL}) {
    Rational a = alpha_for(n);
    CAPTURE(n);
    CHECK(a > Rational(0));
    CHECK(a < Rational(1));
  }
}

TEST_CASE("logarithm and square-root brackets enclose tightly") {
  Interval ln2 = ln_bracket(Rational(2), Rational(1, 1000000));
  CHECK(ln2.width() <= Rational(1, 1000000));
  CHECK(ln2.lo >= Rational(693146, 1000000));
  CHECK(ln2.hi <= Rational(693148, 1000000));

  Interval ln1 = ln_bracket(Rational(1), Rational(1, 1000000));
  CHECK(ln1.lo <= Rational(0));
  CHECK(ln1.hi >= Rational(0));

  Interval s3 = sqrt_bracket(Rational(3), Rational(1, 1000000));
  CHECK(s3.width() <= Rational(1, 1000000));
  CHECK(s3.lo >= Rational(1732050, 1000000));
  CHECK(s3.hi <= Rational(1732051, 1000000));

  Interval s4 = sqrt_bracket(Rational(4), Rational(1, 1000000));
  CHECK(s4.lo <= Rational(2));
  CHECK(s4.hi >= Rational(2));
}

TEST_CASE("interval arithmetic keeps enclosures ordered") {
  Interval a{Rational(1), Rational(2)}, b{Rational(3), Rational(4)};
  CHECK(add(a, b).lo == Rational(4));
  CHECK(add(a, b).hi == Rational(6));
  CHECK(mul_pos(a, b).lo == Rational(3));
  CHECK(mul_pos(a, b).hi == Rational(8));
  CHECK(div_pos(a, b).lo == Rational(1, 4));
  CHECK(div_pos(a, b).hi == Rational(2, 3));
}

TEST_CASE("the time-class split: an exact-power corner needs the exact multiplier") {
  // Two jobs, alpha = 1/2: the whole run is majority-sequential, |A| = 3,
  // max sequential work 2. The real-log ceiling gives 1 and fails; the exact
  // shrink count gives 2 and holds.
  Instance inst = single_set(1, {job("J1", {par_phase(Rational(1)), seq_phase(Rational(1))}),
                                 job("J2", {seq_phase(Rational(2))})});
  ScheduleTrace tr = simulate(inst, equi, Rational(1));
  ProofBoundReport rep = proof_bound_check(inst, tr, Rational(1, 2));
  CHECK(rep.n == 2);
  CHECK(rep.a_measure == Rational(3));
  CHECK(rep.abar_measure == Rational(0));
  CHECK(rep.seq == Rational(2));
  CHECK(rep.par == Rational(1));
  CHECK(rep.multiplier == 2);
  CHECK(rep.ceil_log == 1);
  CHECK_FALSE(rep.a_ok);
  CHECK(rep.a_ok_discrete);
  CHECK(rep.abar_ok);
  CHECK(rep.measures_ok);
  CHECK(rep.combined_ok);
}

TEST_CASE("all-sequential sets spend their whole makespan in the A class") {
  Instance inst = single_set(1, {job("J1", {seq_phase(Rational(1))}),
                                 job("J2", {seq_phase(Rational(3))})});
  ScheduleTrace tr = simulate(inst, equi, Rational(1));
  ProofBoundReport rep = proof_bound_check(inst, tr, Rational(1, 2));
  CHECK(rep.a_measure == Rational(3));
  CHECK(rep.abar_measure == Rational(0));
  CHECK(rep.a_ok_discrete);
  CHECK(rep.measures_ok);
}

TEST_CASE("the counting bound holds over random par/seq sets") {
  Rational alpha = alpha_for(30);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Instance inst = random_parseq_set(seed, 30);
    ScheduleTrace tr = simulate(inst, equi, Rational(1));
    ProofBoundReport rep = proof_bound_check(inst, tr, alpha);
    CAPTURE(seed);
    CHECK(rep.measures_ok);
    CHECK(rep.abar_ok);
    CHECK(rep.a_ok_discrete);
    CHECK(rep.combined_ok);
    CHECK(rep.q.width() <= Rational(1, 1000000));
  }
}

TEST_CASE("the time-class split validates its inputs") {
  Instance inst = single_set(1, {job("J1", {par_phase(Rational(1))})});
  ScheduleTrace tr = simulate(inst, equi, Rational(1));
  CHECK_THROWS_AS(proof_bound_check(inst, tr, Rational(0)), std::domain_error);
  CHECK_THROWS_AS(proof_bound_check(inst, tr, Rational(1)), std::domain_error);
  CHECK_THROWS_AS(proof_bound_check(testutil::two_set_instance(),
                                    simulate(testutil::two_set_instance(), equi, Rational(1)),
                                    Rational(1, 2)),
                  ClassError);
  Instance reversed = single_set(1, {job("J1", {seq_phase(Rational(1)), par_phase(Rational(1))})});
  CHECK_THROWS_AS(proof_bound_check(reversed, simulate(reversed, equi, Rational(1)),
                                    Rational(1, 2)),
                  ClassError);
  // The trace must come from the even split at speed 1.
  Instance two = single_set(1, {job("J1", {par_phase(Rational(1))}),
                                job("J2", {par_phase(Rational(1))})});
  CHECK_THROWS_AS(proof_bound_check(two, simulate(two, equi_serial, Rational(1)),
                                    Rational(1, 2)),
                  MismatchError);
}

TEST_CASE("the comparison chain holds on the two-set instance") {
  ChainReport rep = chain_check(testutil::two_set_instance(), Rational(1, 2));
  CHECK(rep.setflow_ee_s == Rational(17, 4));
  CHECK(rep.setflow_ee_sprime == Rational(17, 4));
  CHECK(rep.flow_equi_j == Rational(17, 4));
  CHECK(rep.flow_equi_jprime == Rational(9, 2));
  CHECK(rep.par_jprime == Rational(7, 4));
  CHECK(rep.seq_jprime == Rational(1));
  CHECK(rep.c_edmonds.lo >= Rational(3732050, 1000000));
  CHECK(rep.c_edmonds.hi <= Rational(3732051, 1000000));
  CHECK(rep.l1);
  CHECK(rep.l2_event_identical);
  CHECK(rep.l3);
  CHECK(rep.l4);
  CHECK_NOTHROW(require_chain_holds(rep));
}

TEST_CASE("a singleton collection collapses to itself and the chain is tight") {
  Instance inst = single_set(1, {job("J1", {par_phase(Rational(1)), seq_phase(Rational(1))})});
  ChainReport rep = chain_check(inst, Rational(1, 2));
  CHECK(rep.setflow_ee_s == Rational(2));
  CHECK(rep.setflow_ee_sprime == Rational(2));
  CHECK(rep.flow_equi_j == Rational(2));
  CHECK(rep.flow_equi_jprime == Rational(2));
  CHECK_NOTHROW(require_chain_holds(rep));
}

TEST_CASE("require_chain_holds names the first broken link") {
  ChainReport broken;  // all links false
  CHECK_THROWS_AS(require_chain_holds(broken), ChainViolationError);
  std::string msg;
  try {
    require_chain_holds(broken);
  } catch (const ChainViolationError& e) {
    msg = e.what();
  }
  CHECK(msg.find("link 1") != std::string::npos);
}

TEST_CASE("the chain holds over random par/seq collections") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Instance inst = random_parseq_star_instance(seed, 5, 6, 4);
    ChainReport rep = chain_check(inst, Rational(1, 2));
    CAPTURE(seed);
    CHECK_NOTHROW(require_chain_holds(rep));
  }
}

TEST_CASE("ratio brackets on the layered instance") {
  RatioReport rep = ratio_report(example_instance(3), PolicyId::Equi, Objective::Makespan);
  CHECK(rep.achieved == Rational(4));
  CHECK(rep.opt_upper == Rational(2));
  CHECK(rep.opt_lower == Rational(40, 27));
  CHECK(rep.ratio_lower == Rational(2));
  CHECK(rep.ratio_upper == Rational(27, 10));
}

TEST_CASE("ratio brackets expose the serialization penalty") {
  RatioReport rep = ratio_report(testutil::serialization_trap(100), PolicyId::EquiSerial,
                                 Objective::Makespan);
  CHECK(rep.achieved == Rational(101));
  CHECK(rep.opt_upper == Rational(2));
  CHECK(rep.ratio_lower == Rational(101, 2));
}

TEST_CASE("setflowtime ratios use the set-aware reference") {
  RatioReport rep = ratio_report(testutil::two_set_instance(), PolicyId::EquiEqui,
                                 Objective::Setflowtime);
  CHECK(rep.achieved == Rational(17, 4));
  CHECK(rep.opt_upper == Rational(3));
  CHECK(rep.opt_lower == Rational(3));
  CHECK(rep.ratio_lower == Rational(17, 12));
  CHECK(rep.ratio_upper == Rational(17, 12));
}

TEST_CASE("flowtime ratios use the ascending-parallel-order closed form") {
  Instance inst = single_set(1, {job("J1", {par_phase(Rational(1))}),
                                 job("J2", {par_phase(Rational(1))})});
  RatioReport rep = ratio_report(inst, PolicyId::Equi, Objective::Flowtime);
  CHECK(rep.achieved == Rational(4));
  CHECK(rep.opt_upper == Rational(3));
  CHECK(rep.opt_lower == Rational(3));
}

TEST_CASE("ratio reports respect the speed parameter") {
  Instance inst = example_instance(2);
  RatioReport fast = ratio_report(inst, PolicyId::Equi, Objective::Makespan, Rational(2));
  CHECK(fast.achieved ==
        compute_metrics(simulate(inst, equi, Rational(2))).makespan);
  CHECK(fast.opt_upper == Rational(2));  // the optimum never gets the speed-up
}

TEST_CASE("zero-work instances have no ratio") {
  Instance inst = single_set(1, {job("J1", {par_phase(Rational(0))})});
  CHECK_THROWS_AS(ratio_report(inst, PolicyId::Equi, Objective::Makespan), std::domain_error);
}

}  // TEST_SUITE
