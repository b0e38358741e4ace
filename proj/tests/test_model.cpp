#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "malsched/model.hpp"

using namespace malsched;
using testutil::job;
using testutil::single_set;

namespace {

bool has_code(const std::vector<Violation>& vs, const std::string& code) {
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Violation& v) { return v.code == code; });
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("sequential phases progress at unit rate for any allocation") {
  Phase ph = seq_phase(Rational(1));
  CHECK(evaluate_speedup(ph.speedup, Rational(0)) == Rational(1));
  CHECK(evaluate_speedup(ph.speedup, Rational(5)) == Rational(1));
  CHECK(is_sequential(ph));
  CHECK_FALSE(is_fully_parallel(ph));
}

TEST_CASE("fully parallel phases progress at rate rho") {
  Phase ph = par_phase(Rational(2));
  CHECK(evaluate_speedup(ph.speedup, Rational(0)) == Rational(0));
  CHECK(evaluate_speedup(ph.speedup, Rational(3, 2)) == Rational(3, 2));
  CHECK(is_fully_parallel(ph));
}

TEST_CASE("piecewise-linear speed-ups interpolate and saturate") {
  Phase ph = pwl_phase(Rational(1), {{Rational(0), Rational(0)},
                                     {Rational(1), Rational(1)},
                                     {Rational(2), Rational(3, 2)}});
  CHECK(evaluate_speedup(ph.speedup, Rational(0)) == Rational(0));
  CHECK(evaluate_speedup(ph.speedup, Rational(1, 2)) == Rational(1, 2));
  CHECK(evaluate_speedup(ph.speedup, Rational(1)) == Rational(1));
  CHECK(evaluate_speedup(ph.speedup, Rational(3, 2)) == Rational(5, 4));
  CHECK(evaluate_speedup(ph.speedup, Rational(2)) == Rational(3, 2));
  // Constant beyond the last breakpoint.
  CHECK(evaluate_speedup(ph.speedup, Rational(100)) == Rational(3, 2));
  CHECK_THROWS_AS(evaluate_speedup(ph.speedup, Rational(-1)), std::domain_error);
}

TEST_CASE("same_speedup distinguishes the three shapes") {
  Phase a = par_phase(Rational(1)), b = seq_phase(Rational(1));
  CHECK(same_speedup(a.speedup, par_phase(Rational(9)).speedup));
  CHECK_FALSE(same_speedup(a.speedup, b.speedup));
  Phase c = pwl_phase(Rational(1), {{Rational(0), Rational(0)}, {Rational(1), Rational(1)}});
  Phase d = pwl_phase(Rational(2), {{Rational(0), Rational(0)}, {Rational(1), Rational(1)}});
  Phase e = pwl_phase(Rational(1), {{Rational(0), Rational(0)}, {Rational(2), Rational(1)}});
  CHECK(same_speedup(c.speedup, d.speedup));
  CHECK_FALSE(same_speedup(c.speedup, e.speedup));
}

TEST_CASE("qualify joins set and job ids") {
  CHECK(qualify("S1", "J2") == "S1/J2");
}

TEST_CASE("validate_instance flags structural problems with stable codes") {
  Instance good = testutil::two_set_instance();
  CHECK(validate_instance(good).empty());
  CHECK_NOTHROW(require_valid(good));

  Instance bad = good;
  bad.processors = Rational(0);
  CHECK(has_code(validate_instance(bad), "processors"));
  bad.processors = Rational(3, 2);
  CHECK(has_code(validate_instance(bad), "processors"));

  Instance empty;
  empty.processors = Rational(1);
  CHECK(has_code(validate_instance(empty), "empty-instance"));

  Instance dup = good;
  dup.sets[1].id = "S1";
  CHECK(has_code(validate_instance(dup), "duplicate-set-id"));

  Instance dupjob = good;
  dupjob.sets[1].jobs[1].id = "J21";
  CHECK(has_code(validate_instance(dupjob), "duplicate-job-id"));

  Instance emptyset = good;
  emptyset.sets[0].jobs.clear();
  CHECK(has_code(validate_instance(emptyset), "empty-set"));

  Instance negwork = good;
  negwork.sets[0].jobs[0].phases[0].work = Rational(-1);
  CHECK(has_code(validate_instance(negwork), "negative-work"));

  CHECK_THROWS_AS(require_valid(negwork), std::invalid_argument);
}

TEST_CASE("validate_instance checks piecewise-linear shape") {
  auto with_points = [](std::vector<std::pair<Rational, Rational>> pts) {
    Phase ph;
    ph.work = Rational(1);
    ph.speedup = PiecewiseLinear{std::move(pts)};
    return single_set(1, {job("J1", {ph})});
  };
  CHECK(has_code(validate_instance(with_points({})), "pwl-empty"));
  CHECK(has_code(validate_instance(with_points({{Rational(1), Rational(1)}})), "pwl-origin"));
  CHECK(has_code(validate_instance(with_points(
                     {{Rational(0), Rational(0)}, {Rational(0), Rational(1)}})),
                 "pwl-breakpoints"));
  CHECK(has_code(validate_instance(with_points(
                     {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}})),
                 "pwl-monotonicity"));
  // Gamma(1) = 1 but Gamma(2) = 3 would mean superlinear speed-up.
  CHECK(has_code(validate_instance(with_points({{Rational(0), Rational(0)},
                                                {Rational(1), Rational(1)},
                                                {Rational(2), Rational(3)}})),
                 "pwl-sublinearity"));
  // A concave non-decreasing profile passes.
  CHECK(validate_instance(with_points({{Rational(0), Rational(0)},
                                       {Rational(1), Rational(1)},
                                       {Rational(2), Rational(3, 2)}}))
            .empty());
}

TEST_CASE("normalize merges, drops zero work, keeps a sentinel phase") {
  Instance inst = single_set(
      1, {job("J1", {par_phase(Rational(0)), seq_phase(Rational(1)), seq_phase(Rational(2))}),
          job("J2", {par_phase(Rational(0))})});
  Instance norm = normalize(inst);
  REQUIRE(norm.sets[0].jobs[0].phases.size() == 1);
  CHECK(is_sequential(norm.sets[0].jobs[0].phases[0]));
  CHECK(norm.sets[0].jobs[0].phases[0].work == Rational(3));
  REQUIRE(norm.sets[0].jobs[1].phases.size() == 1);
  CHECK(is_sequential(norm.sets[0].jobs[1].phases[0]));
  CHECK(norm.sets[0].jobs[1].phases[0].work == Rational(0));

  // Idempotent.
  Instance again = normalize(norm);
  CHECK(testutil::phase_signature(again.sets[0].jobs[0]) ==
        testutil::phase_signature(norm.sets[0].jobs[0]));
}

TEST_CASE("is_parseq_star and is_parseq classify phase lists") {
  Job both = job("J1", {par_phase(Rational(1)), seq_phase(Rational(1))});
  Job reversed = job("J2", {seq_phase(Rational(1)), par_phase(Rational(1))});
  Job pwl = job("J3", {pwl_phase(Rational(1), {{Rational(0), Rational(0)},
                                               {Rational(1), Rational(1)}})});
  CHECK(is_parseq_star(both));
  CHECK(is_parseq(both));
  CHECK(is_parseq_star(reversed));
  CHECK_FALSE(is_parseq(reversed));
  CHECK_FALSE(is_parseq_star(pwl));
  CHECK_FALSE(is_parseq(pwl));
  CHECK(is_parseq_star(testutil::two_set_instance()));
}

TEST_CASE("par_of/seq_of aggregate jobs and sets") {
  Job j1 = job("J1", {par_phase(Rational(1)), seq_phase(Rational(2))});
  Job j2 = job("J2", {par_phase(Rational(3)), seq_phase(Rational(1))});
  CHECK(par_of(j1) == Rational(1));
  CHECK(seq_of(j1) == Rational(2));
  JobSet set{"S1", {j1, j2}};
  CHECK(par_of(set) == Rational(4));  // summed
  CHECK(seq_of(set) == Rational(2));  // max over jobs

  Job bad = job("J3", {pwl_phase(Rational(1), {{Rational(0), Rational(0)},
                                               {Rational(1), Rational(1)}})});
  CHECK_THROWS_AS(par_of(bad), ClassError);
}

TEST_CASE("find_set and find_job look up by id") {
  Instance inst = testutil::two_set_instance();
  CHECK(find_set(inst, "S2").id == "S2");
  CHECK(find_job(find_set(inst, "S2"), "J22").id == "J22");
  CHECK_THROWS_AS(find_set(inst, "S9"), std::out_of_range);
  CHECK_THROWS_AS(find_job(find_set(inst, "S1"), "J99"), std::out_of_range);
}

}  // TEST_SUITE
