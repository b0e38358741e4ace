#pragma once

#include <string>

#include "malsched/engine.hpp"
#include "malsched/model.hpp"

namespace malsched {

// Canonical JSON for instances and traces. Serialization is deterministic
// (fixed key order, map keys sorted, rationals in lowest terms), and
// serialize(parse(text)) reproduces canonical text byte for byte.
//
// Instance:
//   {"processors":"1","sets":[{"id":"S1","jobs":[{"id":"J1","phases":[
//     {"kind":"seq","work":"1"},{"kind":"par","work":"1/27"},
//     {"kind":"pwl","work":"2","points":[["0","0"],["1","1"],["2","3/2"]]}]}]}]}
//
// Trace:
//   {"events":[["1","job-complete","S1/J2"],...],
//    "pieces":{"S1/J1":[["0","1","1/2"],...]},
//    "completions":{"jobs":{...},"sets":{...}},
//    "metrics":{...}}   (metrics are derived and ignored on load)

std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);  // structural parse, no validation

std::string trace_to_json(const ScheduleTrace& trace);
ScheduleTrace trace_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace malsched
