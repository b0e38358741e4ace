#include "malsched/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace malsched {

Rational evaluate_speedup(const SpeedupFunction& gamma, const Rational& rho) {
  if (rho.sign() < 0) throw std::domain_error("evaluate_speedup: negative allocation");
  if (std::holds_alternative<Sequential>(gamma)) return Rational(1);
  if (std::holds_alternative<FullyParallel>(gamma)) return rho;
  const auto& pts = std::get<PiecewiseLinear>(gamma).points;
  // constant extension beyond the last breakpoint
  if (rho >= pts.back().first) return pts.back().second;
  // pts.front().first == 0 <= rho, so a bracketing segment exists
  size_t i = 0;
  while (pts[i + 1].first < rho) ++i;
  const auto& [r0, g0] = pts[i];
  const auto& [r1, g1] = pts[i + 1];
  return g0 + (g1 - g0) * (rho - r0) / (r1 - r0);
}

Phase seq_phase(Rational work) { return Phase{std::move(work), Sequential{}}; }
Phase par_phase(Rational work) { return Phase{std::move(work), FullyParallel{}}; }
Phase pwl_phase(Rational work, std::vector<std::pair<Rational, Rational>> points) {
  return Phase{std::move(work), PiecewiseLinear{std::move(points)}};
}

bool is_sequential(const Phase& p) { return std::holds_alternative<Sequential>(p.speedup); }
bool is_fully_parallel(const Phase& p) {
  return std::holds_alternative<FullyParallel>(p.speedup);
}

bool same_speedup(const SpeedupFunction& a, const SpeedupFunction& b) {
  if (a.index() != b.index()) return false;
  if (!std::holds_alternative<PiecewiseLinear>(a)) return true;
  return std::get<PiecewiseLinear>(a).points == std::get<PiecewiseLinear>(b).points;
}

std::string qualify(const std::string& set_id, const std::string& job_id) {
  return set_id + "/" + job_id;
}

namespace {

void check_pwl(const PiecewiseLinear& f, const std::string& where,
               std::vector<Violation>& out) {
  const auto& pts = f.points;
  if (pts.empty()) {
    out.push_back({"pwl-empty", where + ": piecewise-linear function has no breakpoints"});
    return;
  }
  if (!pts.front().first.is_zero())
    out.push_back({"pwl-origin", where + ": first breakpoint must be at rho = 0"});
  for (size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].first.sign() < 0 || pts[i].second.sign() < 0)
      out.push_back({"pwl-negative", where + ": negative breakpoint coordinate"});
    if (i > 0 && pts[i].first <= pts[i - 1].first)
      out.push_back({"pwl-breakpoints", where + ": rho values must be strictly increasing"});
    if (i > 0 && pts[i].second < pts[i - 1].second)
      out.push_back({"pwl-monotonicity", where + ": values must be non-decreasing"});
  }
  // Sublinearity: Gamma(rho)/rho non-increasing across breakpoints with rho > 0.
  // For a piecewise-linear function this breakpoint check implies the property
  // everywhere on the curve.
  const Rational* prev_ratio = nullptr;
  Rational ratio_store;
  for (const auto& [r, g] : pts) {
    if (r.sign() <= 0) continue;
    Rational ratio = g / r;
    if (prev_ratio && ratio > *prev_ratio)
      out.push_back({"pwl-sublinearity", where + ": Gamma(rho)/rho must be non-increasing"});
    ratio_store = ratio;
    prev_ratio = &ratio_store;
  }
}

}  // namespace

std::vector<Violation> validate_instance(const Instance& inst) {
  std::vector<Violation> out;
  if (inst.processors.sign() <= 0 || !inst.processors.is_integer())
    out.push_back({"processors", "processor count must be a positive integer, got " +
                                     inst.processors.str()});
  if (inst.sets.empty()) out.push_back({"empty-instance", "instance has no job sets"});
  std::set<std::string> set_ids;
  for (const auto& set : inst.sets) {
    if (set.id.empty()) out.push_back({"set-id", "empty set id"});
    if (!set_ids.insert(set.id).second)
      out.push_back({"duplicate-set-id", "duplicate set id '" + set.id + "'"});
    if (set.jobs.empty())
      out.push_back({"empty-set", "set '" + set.id + "' has no jobs"});
    std::set<std::string> job_ids;
    for (const auto& job : set.jobs) {
      std::string where = qualify(set.id, job.id);
      if (job.id.empty()) out.push_back({"job-id", "empty job id in set '" + set.id + "'"});
      if (!job_ids.insert(job.id).second)
        out.push_back({"duplicate-job-id", "duplicate job id '" + where + "'"});
      for (size_t k = 0; k < job.phases.size(); ++k) {
        const Phase& ph = job.phases[k];
        std::string phwhere = where + " phase " + std::to_string(k);
        if (ph.work.sign() < 0)
          out.push_back({"negative-work", phwhere + ": negative work " + ph.work.str()});
        if (const auto* pwl = std::get_if<PiecewiseLinear>(&ph.speedup))
          check_pwl(*pwl, phwhere, out);
      }
    }
  }
  return out;
}

void require_valid(const Instance& inst) {
  auto v = validate_instance(inst);
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid instance:";
  for (const auto& x : v) os << " [" << x.code << "] " << x.detail << ";";
  throw std::invalid_argument(os.str());
}

Instance normalize(const Instance& inst) {
  Instance out;
  out.processors = inst.processors;
  out.sets.reserve(inst.sets.size());
  for (const auto& set : inst.sets) {
    JobSet ns{set.id, {}};
    ns.jobs.reserve(set.jobs.size());
    for (const auto& job : set.jobs) {
      Job nj{job.id, {}};
      for (const auto& ph : job.phases) {
        if (ph.work.is_zero()) continue;
        if (!nj.phases.empty() && same_speedup(nj.phases.back().speedup, ph.speedup)) {
          nj.phases.back().work += ph.work;
        } else {
          nj.phases.push_back(ph);
        }
      }
      if (nj.phases.empty()) nj.phases.push_back(seq_phase(Rational(0)));
      ns.jobs.push_back(std::move(nj));
    }
    out.sets.push_back(std::move(ns));
  }
  return out;
}

bool is_parseq_star(const Job& job) {
  return std::all_of(job.phases.begin(), job.phases.end(), [](const Phase& p) {
    return is_sequential(p) || is_fully_parallel(p);
  });
}

bool is_parseq_star(const Instance& inst) {
  for (const auto& set : inst.sets)
    for (const auto& job : set.jobs)
      if (!is_parseq_star(job)) return false;
  return true;
}

bool is_parseq(const Job& job) {
  if (!is_parseq_star(job)) return false;
  size_t par_count = 0, seq_count = 0;
  for (const auto& ph : job.phases) {
    if (is_fully_parallel(ph)) {
      if (seq_count > 0) return false;  // parallel after sequential
      ++par_count;
    } else {
      ++seq_count;
    }
  }
  return par_count <= 1 && seq_count <= 1;
}

namespace {
Rational sum_kind(const Job& job, bool parallel) {
  if (!is_parseq_star(job))
    throw ClassError("par/seq undefined: job '" + job.id + "' is not (Par-Seq)*");
  Rational total(0);
  for (const auto& ph : job.phases)
    if (is_fully_parallel(ph) == parallel) total += ph.work;
  return total;
}
}  // namespace

Rational par_of(const Job& job) { return sum_kind(job, true); }
Rational seq_of(const Job& job) { return sum_kind(job, false); }

Rational par_of(const JobSet& set) {
  Rational total(0);
  for (const auto& job : set.jobs) total += par_of(job);
  return total;
}

Rational seq_of(const JobSet& set) {
  Rational best(0);
  for (const auto& job : set.jobs) best = max(best, seq_of(job));
  return best;
}

const JobSet& find_set(const Instance& inst, const std::string& set_id) {
  for (const auto& s : inst.sets)
    if (s.id == set_id) return s;
  throw std::out_of_range("no set '" + set_id + "'");
}

const Job& find_job(const JobSet& set, const std::string& job_id) {
  for (const auto& j : set.jobs)
    if (j.id == job_id) return j;
  throw std::out_of_range("no job '" + job_id + "' in set '" + set.id + "'");
}

}  // namespace malsched
