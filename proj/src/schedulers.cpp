#include "malsched/schedulers.hpp"

#include <algorithm>

namespace malsched {

PolicyId policy_from_name(const std::string& name) {
  if (name == "equi") return PolicyId::Equi;
  if (name == "equi-equi") return PolicyId::EquiEqui;
  if (name == "equi-serial") return PolicyId::EquiSerial;
  throw std::invalid_argument("unknown policy '" + name +
                              "' (expected equi, equi-equi or equi-serial)");
}

const char* policy_name(PolicyId id) {
  switch (id) {
    case PolicyId::Equi: return "equi";
    case PolicyId::EquiEqui: return "equi-equi";
    case PolicyId::EquiSerial: return "equi-serial";
  }
  return "?";
}

Allocation equi(const ObservableState& st, const Rational& budget) {
  size_t n = st.alive_jobs();
  Allocation out;
  if (n == 0) return out;
  Rational share = budget / Rational(static_cast<long>(n));
  out.reserve(n);
  for (const auto& [set_id, job_ids] : st.alive_sets)
    for (const auto& job_id : job_ids) out.emplace_back(qualify(set_id, job_id), share);
  return out;
}

Allocation equi_equi(const ObservableState& st, const Rational& budget) {
  Allocation out;
  if (st.alive_sets.empty()) return out;
  Rational per_set = budget / Rational(static_cast<long>(st.alive_sets.size()));
  for (const auto& [set_id, job_ids] : st.alive_sets) {
    Rational share = per_set / Rational(static_cast<long>(job_ids.size()));
    for (const auto& job_id : job_ids) out.emplace_back(qualify(set_id, job_id), share);
  }
  return out;
}

Allocation equi_serial(const ObservableState& st, const Rational& budget) {
  Allocation out;
  if (st.alive_sets.empty()) return out;
  Rational per_set = budget / Rational(static_cast<long>(st.alive_sets.size()));
  for (const auto& [set_id, job_ids] : st.alive_sets)
    out.emplace_back(qualify(set_id, job_ids.front()), per_set);  // ids are sorted
  return out;
}

Policy make_policy(PolicyId id) {
  switch (id) {
    case PolicyId::Equi: return equi;
    case PolicyId::EquiEqui: return equi_equi;
    case PolicyId::EquiSerial: return equi_serial;
  }
  throw std::invalid_argument("bad policy id");
}

ScheduleTrace par_first(const Instance& inst, const Rational& speed) {
  if (!is_parseq_star(inst)) throw ClassError("par_first requires a (Par-Seq)* instance");
  return simulate_clairvoyant(
      inst,
      [](const Rational&, const std::vector<JobView>& alive, const Rational& budget) {
        Allocation out;
        for (const auto& v : alive) {
          if (is_fully_parallel(*v.phase)) {  // alive views come in id order
            out.emplace_back(v.qualified, budget);
            break;
          }
        }
        return out;
      },
      speed);
}

ScheduleTrace serial_reference(const Instance& inst, const Rational& speed) {
  return simulate_clairvoyant(
      inst,
      [](const Rational&, const std::vector<JobView>& alive, const Rational& budget) {
        Allocation out;
        for (const auto& v : alive) {
          if (is_sequential(*v.phase)) continue;
          if (evaluate_speedup(v.phase->speedup, budget).sign() <= 0) continue;
          out.emplace_back(v.qualified, budget);
          break;
        }
        return out;
      },
      speed);
}

ScheduleTrace par_first_setaware(const Instance& inst, const Rational& speed) {
  if (!is_parseq_star(inst))
    throw ClassError("par_first_setaware requires a (Par-Seq)* instance");
  // Priority: ascending remaining-parallel-load order is fixed up front from
  // par(S_i); among the alive parallel phases, serve the one whose set ranks
  // first.
  std::map<std::string, std::pair<Rational, std::string>> rank;  // set id -> (par, id)
  for (const auto& s : inst.sets) rank.emplace(s.id, std::make_pair(par_of(s), s.id));
  return simulate_clairvoyant(
      inst,
      [rank](const Rational&, const std::vector<JobView>& alive, const Rational& budget) {
        Allocation out;
        const JobView* best = nullptr;
        for (const auto& v : alive) {
          if (!is_fully_parallel(*v.phase)) continue;
          if (!best || rank.at(*v.set_id) < rank.at(*best->set_id)) best = &v;
        }
        if (best) out.emplace_back(best->qualified, budget);
        return out;
      },
      speed);
}

}  // namespace malsched
