#include "malsched/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace malsched {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string rs(const Rational& r) { return r.str(); }

Rational rq(const ordered_json& j, const char* what) {
  if (!j.is_string())
    throw std::invalid_argument(std::string(what) + ": rationals must be strings");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

ordered_json phase_to_json(const Phase& ph) {
  ordered_json j;
  if (is_sequential(ph)) {
    j["kind"] = "seq";
    j["work"] = rs(ph.work);
  } else if (is_fully_parallel(ph)) {
    j["kind"] = "par";
    j["work"] = rs(ph.work);
  } else {
    j["kind"] = "pwl";
    j["work"] = rs(ph.work);
    ordered_json pts = ordered_json::array();
    for (const auto& [r, g] : std::get<PiecewiseLinear>(ph.speedup).points)
      pts.push_back(ordered_json::array({rs(r), rs(g)}));
    j["points"] = pts;
  }
  return j;
}

Phase phase_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("work"))
    throw std::invalid_argument("phase: expected object with kind and work");
  std::string kind = j.at("kind").get<std::string>();
  Rational work = rq(j.at("work"), "phase work");
  if (kind == "seq") return seq_phase(work);
  if (kind == "par") return par_phase(work);
  if (kind == "pwl") {
    if (!j.contains("points") || !j.at("points").is_array())
      throw std::invalid_argument("pwl phase: missing points array");
    std::vector<std::pair<Rational, Rational>> pts;
    for (const auto& p : j.at("points")) {
      if (!p.is_array() || p.size() != 2)
        throw std::invalid_argument("pwl point: expected [rho, gamma]");
      pts.emplace_back(rq(p[0], "pwl rho"), rq(p[1], "pwl gamma"));
    }
    return pwl_phase(work, std::move(pts));
  }
  throw std::invalid_argument("phase: unknown kind '" + kind + "'");
}

ordered_json parse_text(const std::string& text, const char* what) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  ordered_json j;
  j["processors"] = rs(inst.processors);
  ordered_json sets = ordered_json::array();
  for (const auto& set : inst.sets) {
    ordered_json js;
    js["id"] = set.id;
    ordered_json jobs = ordered_json::array();
    for (const auto& job : set.jobs) {
      ordered_json jj;
      jj["id"] = job.id;
      ordered_json phases = ordered_json::array();
      for (const auto& ph : job.phases) phases.push_back(phase_to_json(ph));
      jj["phases"] = phases;
      jobs.push_back(jj);
    }
    js["jobs"] = jobs;
    sets.push_back(js);
  }
  j["sets"] = sets;
  return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  ordered_json j = parse_text(text, "instance");
  if (!j.is_object() || !j.contains("processors") || !j.contains("sets"))
    throw std::invalid_argument("instance: expected object with processors and sets");
  Instance inst;
  inst.processors = rq(j.at("processors"), "processors");
  for (const auto& js : j.at("sets")) {
    if (!js.is_object() || !js.contains("id") || !js.contains("jobs"))
      throw std::invalid_argument("set: expected object with id and jobs");
    JobSet set;
    set.id = js.at("id").get<std::string>();
    for (const auto& jj : js.at("jobs")) {
      if (!jj.is_object() || !jj.contains("id") || !jj.contains("phases"))
        throw std::invalid_argument("job: expected object with id and phases");
      Job job;
      job.id = jj.at("id").get<std::string>();
      for (const auto& jp : jj.at("phases")) job.phases.push_back(phase_from_json(jp));
      set.jobs.push_back(std::move(job));
    }
    inst.sets.push_back(std::move(set));
  }
  return inst;
}

std::string trace_to_json(const ScheduleTrace& trace) {
  ordered_json j;
  ordered_json events = ordered_json::array();
  for (const auto& e : trace.events)
    events.push_back(ordered_json::array({rs(e.time), event_kind_name(e.kind), e.subject}));
  j["events"] = events;
  ordered_json pieces = ordered_json::object();
  for (const auto& [key, ps] : trace.pieces) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : ps)
      arr.push_back(ordered_json::array({rs(p.from), rs(p.to), rs(p.rho)}));
    pieces[key] = arr;
  }
  j["pieces"] = pieces;
  ordered_json jobs = ordered_json::object(), sets = ordered_json::object();
  for (const auto& [k, c] : trace.job_completions) jobs[k] = rs(c);
  for (const auto& [k, c] : trace.set_completions) sets[k] = rs(c);
  j["completions"] = ordered_json::object();
  j["completions"]["jobs"] = jobs;
  j["completions"]["sets"] = sets;
  Metrics m = compute_metrics(trace);
  ordered_json jm;
  jm["flowtime"] = rs(m.flowtime);
  jm["makespan"] = rs(m.makespan);
  jm["setflowtime"] = rs(m.setflowtime);
  ordered_json per_set = ordered_json::object(), per_job = ordered_json::object();
  for (const auto& [k, c] : m.per_set) per_set[k] = rs(c);
  for (const auto& [k, c] : m.per_job) per_job[k] = rs(c);
  jm["per_set"] = per_set;
  jm["per_job"] = per_job;
  j["metrics"] = jm;
  return j.dump(2) + "\n";
}

ScheduleTrace trace_from_json(const std::string& text) {
  ordered_json j = parse_text(text, "trace");
  if (!j.is_object() || !j.contains("events") || !j.contains("pieces") ||
      !j.contains("completions"))
    throw std::invalid_argument("trace: expected object with events, pieces, completions");
  ScheduleTrace t;
  for (const auto& e : j.at("events")) {
    if (!e.is_array() || e.size() != 3)
      throw std::invalid_argument("trace event: expected [time, kind, subject]");
    t.events.push_back(TraceEvent{rq(e[0], "event time"),
                                  event_kind_from_name(e[1].get<std::string>()),
                                  e[2].get<std::string>()});
  }
  for (const auto& [key, arr] : j.at("pieces").items()) {
    auto& ps = t.pieces[key];
    for (const auto& p : arr) {
      if (!p.is_array() || p.size() != 3)
        throw std::invalid_argument("trace piece: expected [from, to, rho]");
      ps.push_back(Piece{rq(p[0], "piece from"), rq(p[1], "piece to"), rq(p[2], "piece rho")});
    }
  }
  const auto& comp = j.at("completions");
  if (!comp.is_object() || !comp.contains("jobs") || !comp.contains("sets"))
    throw std::invalid_argument("trace completions: expected jobs and sets maps");
  for (const auto& [key, c] : comp.at("jobs").items())
    t.job_completions.emplace(key, rq(c, "job completion"));
  for (const auto& [key, c] : comp.at("sets").items())
    t.set_completions.emplace(key, rq(c, "set completion"));
  return t;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << content;
}

}  // namespace malsched
