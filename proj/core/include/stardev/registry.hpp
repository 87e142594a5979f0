#pragma once

#include <map>
#include <string>
#include <variant>

#include "stardev/measures.hpp"

namespace stardev {

using FunctionalRef = std::variant<DeviationFunctional, RiskFunctional>;

/// Catalog ids: sd, sd_minus, sd_plus, fr, lr, ur, chi_const, neg_e,
/// var@<a>, es@<a>, iqd@<a>, ied@<a>, iqd2+sd@<a>, lvard@<curve-id>.
bool is_catalog_id(const std::string& id);

FunctionalRef make_catalog_functional(
    const std::string& id,
    const std::map<std::string, BenchmarkCurve>& curves = {});

}  // namespace stardev
