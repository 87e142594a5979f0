#include "stardev/report.hpp"

#include <cmath>
#include <ctime>
#include <sstream>

using nlohmann::json;

namespace stardev {

ReportDocument make_report(std::string command, std::uint64_t seed,
                           json results) {
  ReportDocument doc;
  doc.command = std::move(command);
  doc.seed = seed;
  doc.results = std::move(results);
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  doc.timestamp = buf;
  return doc;
}

json json_number(double v) {
  if (std::isnan(v))
    raise(errc::bad_input, "NaN in report output signals a defect");
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

json to_json(const Witness& w) {
  json j;
  j["description"] = w.description;
  j["probs"] = w.probs;
  j["values"] = w.values;
  if (!w.probs2.empty()) j["probs2"] = w.probs2;
  if (!w.values2.empty()) j["values2"] = w.values2;
  j["param"] = json_number(w.param);
  j["lhs"] = json_number(w.lhs);
  j["rhs"] = json_number(w.rhs);
  return j;
}

json to_json(const CheckResult& c) {
  json j;
  j["axiom"] = c.axiom;
  j["status"] = status_name(c.status);
  j["cases"] = c.cases;
  json ws = json::array();
  for (const auto& w : c.witnesses) ws.push_back(to_json(w));
  j["witnesses"] = ws;
  return j;
}

json to_json(const AuditReport& r) {
  json j;
  j["functional"] = r.functional;
  j["seed"] = r.seed;
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = checks;
  j["classification"] = r.classification;
  j["profile_mismatches"] = r.profile_mismatches;
  return j;
}

json to_json(const CounterexampleBundle& b) {
  json j;
  j["n"] = b.n;
  j["alpha"] = json_number(b.alpha);
  j["d_x"] = json_number(b.d_x);
  j["d_y"] = json_number(b.d_y);
  j["d_z"] = json_number(b.d_z);
  j["margin"] = json_number(b.d_z - b.d_x);
  j["convex_order_ok"] = b.convex_order_ok;
  j["same_dist_ok"] = b.same_dist_ok;
  j["inequality_ok"] = b.inequality_ok;
  return j;
}

json envelope_record(const RayEnvelope& env) {
  json j;
  j["anchor_values"] = env.anchor().values();
  j["anchor_probs"] = env.anchor().space()->probs();
  j["anchor_value"] = json_number(env.anchor_value());
  j["variant"] = ray_variant_name(env.variant());
  return j;
}

json report_to_json(const ReportDocument& doc) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = doc.command;
  j["seed"] = doc.seed;
  j["timestamp"] = doc.timestamp;
  j["results"] = doc.results;
  return j;
}

std::string render_json(const ReportDocument& doc) {
  return report_to_json(doc).dump(2) + "\n";
}

namespace {

void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& v : j) flatten(v, prefix + "[" + std::to_string(i++) + "]", out);
  } else {
    out << prefix << "," << j.dump() << "\n";
  }
}

}  // namespace

std::string render_csv(const ReportDocument& doc) {
  std::ostringstream out;
  out << "key,value\n";
  flatten(report_to_json(doc), "", out);
  return out.str();
}

}  // namespace stardev
