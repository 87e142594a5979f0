#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "stardev/axioms.hpp"
#include "stardev/duality.hpp"
#include "stardev/envelopes.hpp"

namespace stardev {

inline constexpr const char* kToolName = "stardev";
inline constexpr const char* kToolVersion = "0.1.0";

/// Machine-readable run record. Re-running the echoed command with the same
/// seed reproduces every numeric field; only the timestamp moves.
struct ReportDocument {
  std::string command;
  std::uint64_t seed = 0;
  std::string timestamp;  // UTC, filled by make_report
  nlohmann::json results;
};

ReportDocument make_report(std::string command, std::uint64_t seed,
                           nlohmann::json results);

/// Numbers with the infinity convention: +inf renders as the string "inf";
/// NaN is a defect and raises BadInput.
nlohmann::json json_number(double v);

nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const CheckResult& c);
nlohmann::json to_json(const AuditReport& r);
nlohmann::json to_json(const CounterexampleBundle& b);
nlohmann::json envelope_record(const RayEnvelope& env);

nlohmann::json report_to_json(const ReportDocument& doc);
std::string render_json(const ReportDocument& doc);
std::string render_csv(const ReportDocument& doc);

}  // namespace stardev
