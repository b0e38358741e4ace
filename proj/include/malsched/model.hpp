#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "malsched/rational.hpp"

namespace malsched {

// ---------------------------------------------------------------------------
// Speed-up functions
//
// A phase running on rho processors progresses at rate Gamma(rho). Gamma must
// be non-decreasing and sublinear (Gamma(rho)/rho non-increasing). Sequential
// phases progress at rate 1 no matter the allocation, including rho = 0.
// ---------------------------------------------------------------------------

struct Sequential {};
struct FullyParallel {};
struct PiecewiseLinear {
  // Breakpoints (rho, gamma); first rho must be 0, rho strictly increasing.
  // Beyond the last breakpoint the function continues as a constant.
  std::vector<std::pair<Rational, Rational>> points;
};

using SpeedupFunction = std::variant<Sequential, FullyParallel, PiecewiseLinear>;

// Exact evaluation; throws std::domain_error for rho < 0.
Rational evaluate_speedup(const SpeedupFunction& gamma, const Rational& rho);

struct Phase {
  Rational work;  // >= 0
  SpeedupFunction speedup;
};

Phase seq_phase(Rational work);
Phase par_phase(Rational work);
Phase pwl_phase(Rational work, std::vector<std::pair<Rational, Rational>> points);

bool is_sequential(const Phase& p);
bool is_fully_parallel(const Phase& p);
bool same_speedup(const SpeedupFunction& a, const SpeedupFunction& b);

struct Job {
  std::string id;
  std::vector<Phase> phases;  // executed strictly in order
};

struct JobSet {
  std::string id;
  std::vector<Job> jobs;
};

// A batch instance: every set (and job) is released at time 0; a set completes
// when its last job does.
struct Instance {
  Rational processors;  // positive integer count p
  std::vector<JobSet> sets;
};

// Qualified job key used everywhere jobs from different sets meet: "S1/J2".
std::string qualify(const std::string& set_id, const std::string& job_id);

// ---------------------------------------------------------------------------
// Validation / normalization
// ---------------------------------------------------------------------------

struct Violation {
  std::string code;    // stable machine-readable tag, e.g. "pwl-monotonicity"
  std::string detail;  // human-readable location + explanation
};

std::vector<Violation> validate_instance(const Instance& inst);

// Throws std::invalid_argument listing the violations, if any.
void require_valid(const Instance& inst);

// Drops zero-work phases, merges adjacent phases with identical speed-up
// functions, keeps a single Sequential phase of work 0 for jobs whose phases
// all vanish (those complete at time 0). Idempotent; preserves completion
// semantics under any scheduler.
Instance normalize(const Instance& inst);

// ---------------------------------------------------------------------------
// (Par-Seq)* structure
// ---------------------------------------------------------------------------

// Raised when an operation requires (Par-Seq)* structure and the input has
// some other speed-up shape.
struct ClassError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Every phase either Sequential or FullyParallel.
bool is_parseq_star(const Job& job);
bool is_parseq_star(const Instance& inst);
// At most one FullyParallel phase followed by at most one Sequential phase.
bool is_parseq(const Job& job);

// Aggregate work, defined for (Par-Seq)* inputs only (ClassError otherwise).
// For a set: par is summed over jobs, seq is the max over jobs.
Rational par_of(const Job& job);
Rational seq_of(const Job& job);
Rational par_of(const JobSet& set);
Rational seq_of(const JobSet& set);

// Lookup helpers (throw std::out_of_range when absent).
const JobSet& find_set(const Instance& inst, const std::string& set_id);
const Job& find_job(const JobSet& set, const std::string& job_id);

}  // namespace malsched
