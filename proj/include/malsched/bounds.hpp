#pragma once

#include <stdexcept>
#include <string>

#include "malsched/bracket.hpp"
#include "malsched/engine.hpp"
#include "malsched/model.hpp"
#include "malsched/reduction.hpp"
#include "malsched/schedulers.hpp"

namespace malsched {

enum class Objective { Makespan, Setflowtime, Flowtime };

Objective objective_from_name(const std::string& name);  // "makespan" | "setflowtime" | "flowtime"
const char* objective_name(Objective obj);

// Lower bound on the optimal makespan of a (Par-Seq)* instance (ClassError
// otherwise), pooling the jobs of every set:
//   max( total parallel work / p,  max over jobs of (seq(J) + par(J)/p) ).
// Both components hold for any schedule: all parallel work shares p
// processors, and each job must traverse its own chain.
Rational makespan_lower_bound(const Instance& inst);

// Lower bound on the optimal setflowtime of a (Par-Seq)* instance (ClassError
// otherwise): the larger of
//   (a) the sum over sets of the per-set makespan lower bound (every set
//       arrives at 0, so c_i is at least its own isolated makespan bound), and
//   (b) the sum of the ascending-sorted prefix sums of par(S_i)/p (the
//       parallel work of the i fastest-finishing sets must share p).
Rational setflowtime_lower_bound(const Instance& inst);

// Measurement of the two time classes behind the Equi makespan argument on a
// single Par-Seq set.  With N(t) alive jobs and s_t of them in their
// sequential phase, a time t is "mostly-sequential" when
// s_t >= (1-alpha) * N(t); A collects those times and Abar the rest.
struct ProofBoundReport {
  long n = 0;                // jobs in the set
  Rational alpha;
  Rational par, seq;         // par = total parallel work, seq = max sequential work
  Rational a_measure;        // |A|
  Rational abar_measure;     // |Abar|
  Rational makespan;
  long multiplier = 0;       // min { m >= 1 : alpha^m * n < 1 }, exact
  long ceil_log = 0;         // min { m >= 1 : alpha^m * n <= 1 }  (= ceil(ln n / ln(1/alpha)) off the corner cases)
  Interval q;                // rational bracket of ln n / ln(1/alpha), width <= 1e-6 (n >= 2)
  bool abar_ok = false;      // |Abar| * alpha * p <= par
  bool a_ok_discrete = false;  // |A| <= multiplier * seq   (the provable form)
  bool a_ok = false;           // |A| <= ceil_log * seq     (fails on exact-power corner cases)
  bool measures_ok = false;    // |A| + |Abar| == makespan
  bool combined_ok = false;    // makespan <= par/(alpha*p) + multiplier * seq
};

// Measures A and Abar exactly from the trace and evaluates the inequalities
// above.  Requires a single set of Par-Seq jobs (ClassError otherwise) and
// that `trace` is exactly simulate(inst, equi, 1) (MismatchError otherwise);
// alpha outside (0,1) is a domain error.
ProofBoundReport proof_bound_check(const Instance& inst, const ScheduleTrace& trace,
                                   const Rational& alpha);

// The four-link inequality chain connecting Equi-Equi on a (Par-Seq)*
// collection S to a numeric flowtime bound on the twice-reduced instance:
//   Setflowtime(EquiEqui(S))  <=  Setflowtime(EquiEqui(S'))      (l1)
//      where S' = frontload(S)
//   Setflowtime(EquiEqui(S'))  =  Flowtime(Equi(J))              (l2)
//      where J = collapse_sets_to_jobs(S', trace', alpha); the equality must
//      hold event-identically via substitution, not just numerically
//   Flowtime(Equi(J))         <=  Flowtime(Equi(J'))             (l3)
//      where J' = frontload(J)
//   Flowtime(Equi(J'))        <=  (2+sqrt(3)) * (par(J') + seq(J'))   (l4)
//      with par/seq summed over J' jobs and 2+sqrt(3) replaced by the upper
//      end of a rational bracket of width <= 1e-6.
struct ChainReport {
  Rational alpha;
  Rational setflow_ee_s;
  Rational setflow_ee_sprime;
  Rational flow_equi_j;
  Rational flow_equi_jprime;
  Rational par_jprime, seq_jprime;  // sums over the collapsed jobs
  Interval c_edmonds;               // bracket of 2 + sqrt(3)
  bool l1 = false, l2_event_identical = false, l3 = false, l4 = false;
};

struct ChainViolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ChainReport chain_check(const Instance& inst, const Rational& alpha);

// Throws ChainViolationError naming the first failing link.
void require_chain_holds(const ChainReport& report);

// Achieved objective value of a policy next to rational brackets on OPT.
// opt_upper comes from an explicit feasible schedule (par_first for makespan,
// its set-aware variant for setflowtime, the ascending-parallel-order closed
// form for flowtime); opt_lower from the *_lower_bound oracles.  The true
// optimum lies in [opt_lower, opt_upper], so the competitive ratio lies in
// [ratio_lower, ratio_upper].
struct RatioReport {
  Rational achieved;
  Rational opt_lower, opt_upper;
  Rational ratio_lower;  // achieved / opt_upper
  Rational ratio_upper;  // achieved / opt_lower
};

// (Par-Seq)* instances only (ClassError otherwise); a zero-work instance has
// opt_upper = 0 and raises std::domain_error.  `speed` scales only the
// policy's budget, never the optimum's.
RatioReport ratio_report(const Instance& inst, PolicyId policy, Objective objective,
                         const Rational& speed = Rational(1));

}  // namespace malsched
