#include "stardev/registry.hpp"

#include <cstdlib>

namespace stardev {

namespace {

bool parse_level(const std::string& id, const std::string& prefix,
                 double* level) {
  if (id.size() <= prefix.size() || id.compare(0, prefix.size(), prefix) != 0)
    return false;
  const std::string tail = id.substr(prefix.size());
  char* end = nullptr;
  double v = std::strtod(tail.c_str(), &end);
  if (end == nullptr || *end != '\0') return false;
  *level = v;
  return true;
}

}  // namespace

bool is_catalog_id(const std::string& id) {
  static const char* plain[] = {"sd", "sd_minus", "sd_plus", "fr",
                                "lr", "ur",       "chi_const", "neg_e"};
  for (const char* p : plain)
    if (id == p) return true;
  double level = 0.0;
  for (const char* prefix : {"var@", "es@", "iqd@", "ied@", "iqd2+sd@"})
    if (parse_level(id, prefix, &level)) return true;
  return id.rfind("lvard@", 0) == 0 && id.size() > 6;
}

FunctionalRef make_catalog_functional(
    const std::string& id, const std::map<std::string, BenchmarkCurve>& curves) {
  try {
    if (id == "sd") return sd_functional();
    if (id == "sd_minus") return sd_minus_functional();
    if (id == "sd_plus") return sd_plus_functional();
    if (id == "fr") return full_range_functional();
    if (id == "lr") return lower_range_functional();
    if (id == "ur") return upper_range_functional();
    if (id == "chi_const") return chi_constants();
    if (id == "neg_e") return neg_expectation_risk();
    double level = 0.0;
    if (parse_level(id, "var@", &level)) return var_risk(level);
    if (parse_level(id, "es@", &level)) return es_risk(level);
    if (parse_level(id, "iqd@", &level)) return iqd_functional(level);
    if (parse_level(id, "ied@", &level)) return ied_functional(level);
    if (parse_level(id, "iqd2+sd@", &level)) return composite_iqd_sq_plus_sd(level);
    if (id.rfind("lvard@", 0) == 0) {
      const std::string curve_id = id.substr(6);
      auto it = curves.find(curve_id);
      if (it == curves.end())
        raise(errc::name_resolution, "unknown benchmark curve '" + curve_id + "'");
      return lvar_d_functional(it->second, curve_id);
    }
  } catch (const error& e) {
    if (e.code() == errc::invalid_probability)
      raise(errc::name_resolution, std::string("bad level in '") + id + "': " + e.what());
    throw;
  }
  raise(errc::name_resolution, "unknown functional id '" + id + "'");
}

}  // namespace stardev
