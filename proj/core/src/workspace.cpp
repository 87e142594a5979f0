#include "stardev/workspace.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace stardev {

namespace {

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::bad_input, "cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    raise(errc::bad_input, "malformed JSON in '" + path + "': " + e.what());
  }
  if (!doc.is_object()) raise(errc::bad_input, "workspace root must be an object");
  return doc;
}

std::vector<double> to_doubles(const json& j, const std::string& what) {
  if (!j.is_array()) raise(errc::bad_input, what + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) raise(errc::bad_input, what + " must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

DeviationFunctional build_deviation(const Workspace& ws, const json& spec,
                                    int depth);

DeviationFunctional deviation_by_name(const Workspace& ws,
                                      const std::string& name, int depth) {
  auto it = ws.functionals.find(name);
  if (it != ws.functionals.end()) return build_deviation(ws, it->second, depth + 1);
  FunctionalRef ref = make_catalog_functional(name, ws.curves);
  if (auto* d = std::get_if<DeviationFunctional>(&ref)) return *d;
  raise(errc::bad_input,
        "'" + name + "' is a risk functional; composites take deviations");
}

DeviationFunctional build_deviation(const Workspace& ws, const json& spec,
                                    int depth) {
  if (depth > 32) raise(errc::bad_input, "functional reference cycle");
  if (spec.is_string()) return deviation_by_name(ws, spec.get<std::string>(), depth);
  if (!spec.is_object() || spec.size() != 1)
    raise(errc::bad_input, "functional spec must be an id or one-key object");
  const std::string op = spec.begin().key();
  const json& args = spec.begin().value();
  if (op == "add") {
    if (!args.is_array() || args.size() < 2)
      raise(errc::bad_input, "add needs at least two operands");
    DeviationFunctional acc = build_deviation(ws, args[0], depth + 1);
    for (std::size_t i = 1; i < args.size(); ++i)
      acc = add(acc, build_deviation(ws, args[i], depth + 1));
    return acc;
  }
  if (op == "scale") {
    if (!args.is_array() || args.size() != 2 || !args[1].is_number())
      raise(errc::bad_input, "scale takes [functional, factor]");
    return scale_functional(build_deviation(ws, args[0], depth + 1),
                            args[1].get<double>());
  }
  if (op == "square") return square_functional(build_deviation(ws, args, depth + 1));
  if (op == "min") {
    if (!args.is_array() || args.empty())
      raise(errc::bad_input, "min takes a non-empty array");
    std::vector<DeviationFunctional> family;
    family.reserve(args.size());
    for (const auto& a : args) family.push_back(build_deviation(ws, a, depth + 1));
    return min_functional(std::move(family));
  }
  raise(errc::bad_input, "unknown functional operator '" + op + "'");
}

}  // namespace

Workspace load_workspace(const std::string& path) {
  json doc = load_json_file(path);
  Workspace ws;
  if (doc.contains("spaces")) {
    for (const auto& [name, body] : doc.at("spaces").items()) {
      if (!body.is_object() || !body.contains("probs"))
        raise(errc::bad_input, "space '" + name + "' needs a probs array");
      ws.spaces.emplace(name, ProbSpace::make(to_doubles(body.at("probs"),
                                                         "space probs")));
    }
  }
  if (doc.contains("variables")) {
    for (const auto& [name, body] : doc.at("variables").items()) {
      if (!body.is_object() || !body.contains("space") || !body.contains("values"))
        raise(errc::bad_input, "variable '" + name + "' needs space and values");
      const std::string space_name = body.at("space").get<std::string>();
      auto sp = ws.spaces.find(space_name);
      if (sp == ws.spaces.end())
        raise(errc::bad_input,
              "variable '" + name + "' references unknown space '" + space_name + "'");
      ws.variables.emplace(
          name, RandomVariable(sp->second,
                               to_doubles(body.at("values"), "variable values")));
    }
  }
  if (doc.contains("curves")) {
    for (const auto& [name, body] : doc.at("curves").items()) {
      if (!body.is_object() || !body.contains("breakpoints"))
        raise(errc::bad_input, "curve '" + name + "' needs breakpoints");
      std::vector<std::pair<double, double>> bps;
      for (const auto& bp : body.at("breakpoints")) {
        if (!bp.is_array() || bp.size() != 2)
          raise(errc::bad_input, "curve breakpoints are [u, alpha] pairs");
        bps.emplace_back(bp[0].get<double>(), bp[1].get<double>());
      }
      ws.curves.emplace(name, BenchmarkCurve(std::move(bps)));
    }
  }
  if (doc.contains("functionals")) {
    for (const auto& [name, body] : doc.at("functionals").items())
      ws.functionals.emplace(name, body);
  }
  if (doc.contains("gfamilies")) {
    for (const auto& [name, body] : doc.at("gfamilies").items()) {
      if (!body.is_object() || !body.contains("alpha_grid") || !body.contains("curves"))
        raise(errc::bad_input, "gfamily '" + name + "' needs alpha_grid and curves");
      std::vector<std::vector<double>> curves;
      for (const auto& c : body.at("curves"))
        curves.push_back(to_doubles(c, "gfamily curve"));
      ws.gfamilies.emplace(
          name, GFamily(to_doubles(body.at("alpha_grid"), "alpha grid"),
                        std::move(curves), body.value("star_closed", false)));
    }
  }
  // composites must resolve now, not on first use
  for (const auto& [name, spec] : ws.functionals) {
    (void)name;
    (void)build_deviation(ws, spec, 0);
  }
  return ws;
}

void save_workspace(const Workspace& ws, const std::string& path) {
  json doc = json::object();
  json spaces = json::object();
  for (const auto& [name, sp] : ws.spaces) spaces[name] = {{"probs", sp->probs()}};
  if (!spaces.empty()) doc["spaces"] = spaces;
  json variables = json::object();
  for (const auto& [name, rv] : ws.variables) {
    std::string space_name;
    for (const auto& [sname, sp] : ws.spaces)
      if (sp == rv.space()) {
        space_name = sname;
        break;
      }
    variables[name] = {{"space", space_name}, {"values", rv.values()}};
  }
  if (!variables.empty()) doc["variables"] = variables;
  json curves = json::object();
  for (const auto& [name, c] : ws.curves) {
    json bps = json::array();
    for (const auto& [u, a] : c.breakpoints()) bps.push_back({u, a});
    curves[name] = {{"breakpoints", bps}};
  }
  if (!curves.empty()) doc["curves"] = curves;
  if (!ws.functionals.empty()) {
    json fs = json::object();
    for (const auto& [name, spec] : ws.functionals) fs[name] = spec;
    doc["functionals"] = fs;
  }
  if (!ws.gfamilies.empty()) {
    json gs = json::object();
    for (const auto& [name, g] : ws.gfamilies) {
      json cs = json::array();
      for (const auto& c : g.curves()) cs.push_back(c.values());
      gs[name] = {{"alpha_grid", g.alpha_grid()},
                  {"curves", cs},
                  {"star_closed", g.star_closed()}};
    }
    doc["gfamilies"] = gs;
  }
  std::ofstream out(path);
  if (!out) raise(errc::bad_input, "cannot write '" + path + "'");
  out << doc.dump(2) << "\n";
}

const RandomVariable& find_variable(const Workspace& ws,
                                    const std::string& name) {
  auto it = ws.variables.find(name);
  if (it == ws.variables.end())
    raise(errc::name_resolution, "unknown variable '" + name + "'");
  return it->second;
}

const GFamily& find_gfamily(const Workspace& ws, const std::string& name) {
  auto it = ws.gfamilies.find(name);
  if (it == ws.gfamilies.end())
    raise(errc::name_resolution, "unknown gfamily '" + name + "'");
  return it->second;
}

FunctionalRef resolve_functional(const Workspace& ws, const std::string& name) {
  auto it = ws.functionals.find(name);
  if (it != ws.functionals.end()) return build_deviation(ws, it->second, 0);
  return make_catalog_functional(name, ws.curves);
}

void ingest_csv(Workspace& ws, const std::string& csv_path,
                const std::string& column, const std::string& as) {
  std::ifstream in(csv_path);
  if (!in) raise(errc::bad_input, "cannot open '" + csv_path + "'");
  std::string line;
  if (!std::getline(in, line)) raise(errc::bad_input, "empty CSV file");
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  auto header = split(line);
  std::size_t col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == column) col = i;
  if (col == header.size())
    raise(errc::bad_input, "column '" + column + "' not found in header");
  std::vector<double> samples;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    auto cells = split(line);
    if (col >= cells.size())
      raise(errc::bad_input,
            "line " + std::to_string(line_number) + ": missing column");
    char* end = nullptr;
    const std::string& cell = cells[col];
    double v = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end == nullptr || *end != '\0' || !std::isfinite(v))
      raise(errc::bad_input, "line " + std::to_string(line_number) +
                                 ": cannot parse '" + cell + "' as a number");
    samples.push_back(v);
  }
  if (samples.empty()) raise(errc::bad_input, "no data rows in CSV");
  auto [sp, rv] = empirical_from_samples(samples);
  const std::string space_name = as + "_space";
  if (ws.spaces.count(space_name) || ws.variables.count(as))
    raise(errc::bad_input, "name '" + as + "' already taken in the workspace");
  ws.spaces.emplace(space_name, sp);
  ws.variables.emplace(as, std::move(rv));
}

}  // namespace stardev
