#pragma once

#include <cstdint>
#include <random>

#include "malsched/model.hpp"

namespace malsched {

// Deterministic generator RNG: mt19937_64 with rejection-sampled bounded
// draws, so a seed produces the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : rng_(seed) {}
  std::uint64_t next() { return rng_(); }
  std::uint64_t below(std::uint64_t k);  // uniform over {0, ..., k-1}
  bool chance(unsigned percent) { return below(100) < percent; }
  // Small positive work value with denominator at most 4, so event times
  // collide often and traces stay short.
  Rational work() {
    long num = static_cast<long>(1 + below(12));
    long den = static_cast<long>(1 + below(4));
    return Rational(num, den);
  }

 private:
  std::mt19937_64 rng_;
};

// Instance mixing all three speed-up shapes: one or two sets, at most six
// jobs in total, at most four phases per job, processors in {1,2,3}.
// Piecewise-linear speed-ups are built concave and non-decreasing from
// rho = 0 and are never identically zero.
Instance random_mixed_instance(std::uint64_t seed);

// (Par-Seq)* instance on one processor: up to max_sets sets, up to max_jobs
// jobs per set, up to max_phases Sequential/FullyParallel phases per job.
Instance random_parseq_star_instance(std::uint64_t seed, int max_sets, int max_jobs,
                                     int max_phases);

// Single-set Par-Seq instance with exactly n jobs on one processor; each job
// is [par w][seq v] with w, v drawn from the small-work pool (either may be
// omitted, never both).
Instance random_parseq_set(std::uint64_t seed, int n);

}  // namespace malsched
