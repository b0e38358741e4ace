#include <cstdio>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "malsched/engine.hpp"
#include "malsched/generators.hpp"
#include "malsched/io.hpp"
#include "malsched/schedulers.hpp"

using namespace malsched;
using testutil::job;
using testutil::single_set;

TEST_SUITE("io") {

TEST_CASE("instance serialization is a fixpoint") {
  Instance original = single_set(
      2, {job("J1", {seq_phase(Rational(1)), par_phase(Rational(1, 27))}),
          job("J2", {pwl_phase(Rational(2), {{Rational(0), Rational(0)},
                                             {Rational(1), Rational(1)},
                                             {Rational(2), Rational(3, 2)}})})});
  std::string text = instance_to_json(original);
  std::string again = instance_to_json(instance_from_json(text));
  CHECK(text == again);
}

TEST_CASE("instance parsing recovers every field exactly") {
  Instance original = testutil::two_set_instance();
  Instance parsed = instance_from_json(instance_to_json(original));
  CHECK(parsed.processors == original.processors);
  REQUIRE(parsed.sets.size() == 2);
  CHECK(parsed.sets[1].jobs[0].id == "J21");
  CHECK(is_sequential(parsed.sets[1].jobs[0].phases[0]));
  CHECK(parsed.sets[1].jobs[0].phases[0].work == Rational(1));
  CHECK(is_fully_parallel(parsed.sets[1].jobs[1].phases[0]));
}

TEST_CASE("trace serialization round-trips losslessly") {
  Instance inst = testutil::two_set_instance();
  ScheduleTrace tr = simulate(inst, equi_equi, Rational(1));
  std::string text = trace_to_json(tr);
  ScheduleTrace parsed = trace_from_json(text);
  CHECK(parsed == tr);
  CHECK(trace_to_json(parsed) == text);
}

TEST_CASE("random instances round-trip byte for byte") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance inst = random_mixed_instance(seed);
    std::string text = instance_to_json(inst);
    CAPTURE(seed);
    CHECK(instance_to_json(instance_from_json(text)) == text);
    ScheduleTrace tr = simulate(inst, equi, Rational(1));
    std::string ttext = trace_to_json(tr);
    CHECK(trace_to_json(trace_from_json(ttext)) == ttext);
  }
}

TEST_CASE("instance parsing rejects malformed documents") {
  CHECK_THROWS_AS(instance_from_json("{not json"), std::invalid_argument);
  CHECK_THROWS_AS(instance_from_json("[]"), std::invalid_argument);
  CHECK_THROWS_AS(instance_from_json(R"({"sets":[]})"), std::invalid_argument);
  // Rationals must be strings, not JSON numbers.
  CHECK_THROWS_AS(instance_from_json(R"({"processors":1,"sets":[]})"), std::invalid_argument);
  CHECK_THROWS_AS(
      instance_from_json(
          R"({"processors":"1","sets":[{"id":"S1","jobs":[{"id":"J1","phases":[{"kind":"warp","work":"1"}]}]}]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      instance_from_json(
          R"({"processors":"1","sets":[{"id":"S1","jobs":[{"id":"J1","phases":[{"kind":"pwl","work":"1"}]}]}]})"),
      std::invalid_argument);
}

TEST_CASE("trace parsing rejects malformed documents") {
  CHECK_THROWS_AS(trace_from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(
      trace_from_json(R"({"events":[["1","job-complete"]],"pieces":{},"completions":{"jobs":{},"sets":{}}})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      trace_from_json(R"({"events":[["1","vanished","S1/J1"]],"pieces":{},"completions":{"jobs":{},"sets":{}}})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      trace_from_json(R"({"events":[],"pieces":{"S1/J1":[["0","1"]]},"completions":{"jobs":{},"sets":{}}})"),
      std::invalid_argument);
}

TEST_CASE("metrics in the trace text are derived, not trusted") {
  Instance inst = single_set(1, {job("J1", {par_phase(Rational(1))})});
  ScheduleTrace tr = simulate(inst, equi, Rational(1));
  std::string text = trace_to_json(tr);
  // Corrupt the recorded makespan; the parsed trace must be unaffected.
  std::string needle = "\"makespan\": \"1\"";
  auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, needle.size(), "\"makespan\": \"99\"");
  ScheduleTrace parsed = trace_from_json(text);
  CHECK(compute_metrics(parsed).makespan == Rational(1));
}

TEST_CASE("file io round-trips and reports missing paths") {
  std::string path = "io_suite_scratch.json";
  Instance inst = testutil::two_set_instance();
  write_file(path, instance_to_json(inst));
  CHECK(instance_to_json(instance_from_json(read_file(path))) == instance_to_json(inst));
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_file("definitely/not/there.json"), std::invalid_argument);
}

}  // TEST_SUITE
