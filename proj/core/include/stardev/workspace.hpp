#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "stardev/duality.hpp"
#include "stardev/measures.hpp"
#include "stardev/registry.hpp"
#include "stardev/space.hpp"

namespace stardev {

/// Named ingredients for CLI runs: spaces, variables, benchmark curves,
/// functional specs (catalog ids or add/scale/square/min expression trees),
/// and dual-representation families. Loaded from a single JSON document.
struct Workspace {
  std::map<std::string, SpacePtr> spaces;
  std::map<std::string, RandomVariable> variables;
  std::map<std::string, BenchmarkCurve> curves;
  std::map<std::string, nlohmann::json> functionals;
  std::map<std::string, GFamily> gfamilies;
};

Workspace load_workspace(const std::string& path);
void save_workspace(const Workspace& ws, const std::string& path);

const RandomVariable& find_variable(const Workspace& ws,
                                    const std::string& name);
const GFamily& find_gfamily(const Workspace& ws, const std::string& name);

/// Workspace functional by name, or a bare catalog id.
FunctionalRef resolve_functional(const Workspace& ws, const std::string& name);

/// Parses one CSV column (header row required) into an equal-weight space
/// plus variable named `as` (its space is registered as `<as>_space`).
void ingest_csv(Workspace& ws, const std::string& csv_path,
                const std::string& column, const std::string& as);

}  // namespace stardev
