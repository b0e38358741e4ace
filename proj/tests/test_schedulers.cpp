#include <map>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "malsched/engine.hpp"
#include "malsched/schedulers.hpp"

using namespace malsched;
using testutil::job;
using testutil::single_set;

namespace {

std::map<std::string, Rational> as_map(const Allocation& alloc) {
  std::map<std::string, Rational> m;
  for (const auto& [k, v] : alloc) m[k] += v;
  return m;
}

Rational share(const Allocation& alloc, const std::string& key) {
  auto m = as_map(alloc);
  auto it = m.find(key);
  return it == m.end() ? Rational(0) : it->second;
}

ObservableState two_set_state() {
  ObservableState st;
  st.now = Rational(0);
  st.alive_sets = {{"S1", {"J1"}}, {"S2", {"J2", "J3"}}};
  return st;
}

}  // namespace

TEST_SUITE("schedulers") {

TEST_CASE("policy names round-trip") {
  for (PolicyId id : {PolicyId::Equi, PolicyId::EquiEqui, PolicyId::EquiSerial})
    CHECK(policy_from_name(policy_name(id)) == id);
  CHECK_THROWS_AS(policy_from_name("fifo"), std::invalid_argument);
}

TEST_CASE("equi splits the budget evenly across jobs") {
  Allocation a = equi(two_set_state(), Rational(1));
  CHECK(share(a, "S1/J1") == Rational(1, 3));
  CHECK(share(a, "S2/J2") == Rational(1, 3));
  CHECK(share(a, "S2/J3") == Rational(1, 3));
}

TEST_CASE("equi-over-equi splits across sets first") {
  Allocation a = equi_equi(two_set_state(), Rational(1));
  CHECK(share(a, "S1/J1") == Rational(1, 2));
  CHECK(share(a, "S2/J2") == Rational(1, 4));
  CHECK(share(a, "S2/J3") == Rational(1, 4));
}

TEST_CASE("equi-over-serial gives each set share to its lowest alive job") {
  Allocation a = equi_serial(two_set_state(), Rational(1));
  CHECK(share(a, "S1/J1") == Rational(1, 2));
  CHECK(share(a, "S2/J2") == Rational(1, 2));
  CHECK(share(a, "S2/J3") == Rational(0));
}

TEST_CASE("serializing parallel slivers costs a factor n over an even split") {
  Instance inst = testutil::serialization_trap(100);
  Rational serialized = compute_metrics(simulate(inst, equi_serial, Rational(1))).makespan;
  Rational split = compute_metrics(simulate(inst, equi_equi, Rational(1))).makespan;
  CHECK(serialized == Rational(101));
  CHECK(split == Rational(2));
  // Plain equi coincides with the per-set split on a single set.
  CHECK(compute_metrics(simulate(inst, equi, Rational(1))).makespan == Rational(2));
}

TEST_CASE("par_first finishes the two-set instance in 2") {
  ScheduleTrace tr = par_first(testutil::two_set_instance());
  CHECK(compute_metrics(tr).makespan == Rational(2));
  CHECK(validate_trace(testutil::two_set_instance(), tr, Rational(1)).empty());
}

TEST_CASE("par_first requires par/seq structure") {
  Instance inst = single_set(
      1, {job("J1", {pwl_phase(Rational(1), {{Rational(0), Rational(0)},
                                             {Rational(1), Rational(1)}})})});
  CHECK_THROWS_AS(par_first(inst), ClassError);
}

TEST_CASE("par_first_setaware serves sets in ascending parallel-work order") {
  ScheduleTrace tr = par_first_setaware(testutil::two_set_instance());
  Metrics m = compute_metrics(tr);
  CHECK(m.per_set.at("S1") == Rational(1));
  CHECK(m.per_set.at("S2") == Rational(2));
  CHECK(m.setflowtime == Rational(3));
  CHECK(validate_trace(testutil::two_set_instance(), tr, Rational(1)).empty());
}

TEST_CASE("serial_reference handles arbitrary speed-up shapes") {
  Instance inst = single_set(
      2, {job("J1", {pwl_phase(Rational(1), {{Rational(0), Rational(0)},
                                             {Rational(1), Rational(1)},
                                             {Rational(2), Rational(3, 2)}})}),
          job("J2", {seq_phase(Rational(1))})});
  ScheduleTrace tr = serial_reference(inst);
  CHECK(validate_trace(inst, tr, inst.processors).empty());
  // J1 runs alone on both processors: rate 3/2 over work 1.
  CHECK(tr.job_completions.at("S1/J1") == Rational(2, 3));
  CHECK(tr.job_completions.at("S1/J2") == Rational(1));
}

TEST_CASE("online policy traces always validate") {
  for (PolicyId id : {PolicyId::Equi, PolicyId::EquiEqui, PolicyId::EquiSerial}) {
    Instance inst = testutil::two_set_instance();
    ScheduleTrace tr = simulate(inst, make_policy(id), Rational(1));
    CAPTURE(policy_name(id));
    CHECK(validate_trace(inst, tr, inst.processors).empty());
  }
}

}  // TEST_SUITE
