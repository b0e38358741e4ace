#include "malsched/generators.hpp"

#include <algorithm>
#include <cstdio>

namespace malsched {

std::uint64_t Rng::below(std::uint64_t k) {
  if (k <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % k;
  std::uint64_t r;
  do {
    r = rng_();
  } while (r >= limit);
  return r % k;
}

namespace {

std::string small_id(const char* prefix, int index) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%s%d", prefix, index);
  return buf;
}

Phase random_pwl_phase(Rng& rng, const Rational& work) {
  // Concave non-decreasing polyline from rho = 0: pick non-increasing,
  // non-negative slopes over unit rho steps; constant past the last point.
  int segments = static_cast<int>(1 + rng.below(3));
  std::vector<Rational> slopes;
  for (int s = 0; s < segments; ++s)
    slopes.push_back(Rational(static_cast<long>(rng.below(4)), 2));
  std::sort(slopes.rbegin(), slopes.rend());
  Rational value = rng.chance(70) ? Rational(0) : Rational(1, 2);
  if (value.is_zero() && slopes.front().is_zero()) slopes.front() = Rational(1);
  std::vector<std::pair<Rational, Rational>> points{{Rational(0), value}};
  for (int s = 0; s < segments; ++s) {
    value += slopes[s];
    points.emplace_back(Rational(s + 1), value);
  }
  return pwl_phase(work, std::move(points));
}

}  // namespace

Instance random_mixed_instance(std::uint64_t seed) {
  Rng rng(seed);
  Instance inst;
  inst.processors = Rational(static_cast<long>(1 + rng.below(3)));
  int sets = static_cast<int>(1 + rng.below(2));
  for (int si = 1; si <= sets; ++si) {
    JobSet set;
    set.id = small_id("S", si);
    int jobs = static_cast<int>(1 + rng.below(3));
    for (int ji = 1; ji <= jobs; ++ji) {
      Job job;
      job.id = small_id("J", ji);
      int phases = static_cast<int>(1 + rng.below(4));
      for (int k = 0; k < phases; ++k) {
        switch (rng.below(3)) {
          case 0: job.phases.push_back(seq_phase(rng.work())); break;
          case 1: job.phases.push_back(par_phase(rng.work())); break;
          default: job.phases.push_back(random_pwl_phase(rng, rng.work())); break;
        }
      }
      set.jobs.push_back(std::move(job));
    }
    inst.sets.push_back(std::move(set));
  }
  return inst;
}

Instance random_parseq_star_instance(std::uint64_t seed, int max_sets, int max_jobs,
                                     int max_phases) {
  Rng rng(seed);
  Instance inst;
  inst.processors = Rational(1);
  int sets = static_cast<int>(1 + rng.below(static_cast<std::uint64_t>(max_sets)));
  for (int si = 1; si <= sets; ++si) {
    JobSet set;
    set.id = small_id("S", si);
    int jobs = static_cast<int>(1 + rng.below(static_cast<std::uint64_t>(max_jobs)));
    for (int ji = 1; ji <= jobs; ++ji) {
      Job job;
      job.id = small_id("J", ji);
      int phases = static_cast<int>(1 + rng.below(static_cast<std::uint64_t>(max_phases)));
      for (int k = 0; k < phases; ++k)
        job.phases.push_back(rng.chance(50) ? par_phase(rng.work())
                                            : seq_phase(rng.work()));
      set.jobs.push_back(std::move(job));
    }
    inst.sets.push_back(std::move(set));
  }
  return inst;
}

Instance random_parseq_set(std::uint64_t seed, int n) {
  Rng rng(seed);
  Instance inst;
  inst.processors = Rational(1);
  JobSet set;
  set.id = "S1";
  size_t width = std::to_string(n).size();
  for (int ji = 1; ji <= n; ++ji) {
    Job job;
    std::string digits = std::to_string(ji);
    job.id = "J" + std::string(width - digits.size(), '0') + digits;
    bool with_par = rng.chance(80);
    bool with_seq = !with_par || rng.chance(80);
    if (with_par) job.phases.push_back(par_phase(rng.work()));
    if (with_seq) job.phases.push_back(seq_phase(rng.work()));
    set.jobs.push_back(std::move(job));
  }
  inst.sets.push_back(std::move(set));
  return inst;
}

}  // namespace malsched
