#pragma once

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "malsched/engine.hpp"
#include "malsched/model.hpp"

namespace testutil {

using namespace malsched;

inline Job job(std::string id, std::vector<Phase> phases) {
  Job j;
  j.id = std::move(id);
  j.phases = std::move(phases);
  return j;
}

inline Instance single_set(long processors, std::vector<Job> jobs,
                           std::string set_id = "S1") {
  Instance inst;
  inst.processors = Rational(processors);
  JobSet s;
  s.id = std::move(set_id);
  s.jobs = std::move(jobs);
  inst.sets.push_back(std::move(s));
  return inst;
}

// p = 1; S1 holds one fully parallel job, S2 a sequential job next to a
// parallel one. Equi-over-Equi finishes the sets at 2 and 9/4, so the
// setflowtime is exactly 17/4.
inline Instance two_set_instance() {
  Instance inst;
  inst.processors = Rational(1);
  inst.sets.push_back(JobSet{"S1", {job("J11", {par_phase(Rational(1))})}});
  inst.sets.push_back(JobSet{"S2", {job("J21", {seq_phase(Rational(1))}),
                                    job("J22", {par_phase(Rational(1))})}});
  return inst;
}

// One set of n jobs, each a tiny parallel phase (work 1/n) before unit
// sequential work, on one processor. Serving the jobs one after the other
// serializes all the sequential work (makespan (1 + 1/n) * n), while an even
// split overlaps it (makespan 2).
inline Instance serialization_trap(int n) {
  std::vector<Job> jobs;
  for (int k = 1; k <= n; ++k) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "J%03d", k);
    jobs.push_back(job(buf, {par_phase(Rational(1, n)), seq_phase(Rational(1))}));
  }
  return single_set(1, std::move(jobs));
}

// Compact signature of a job's phase list, e.g. "p1/27;s1;".
inline std::string phase_signature(const Job& j) {
  std::string s;
  for (const auto& ph : j.phases) {
    s += is_sequential(ph) ? 's' : 'p';
    s += ph.work.str();
    s += ';';
  }
  return s;
}

}  // namespace testutil
