#pragma once

// JSON documents: "dmm-instance/1" in, "dmm-report/1" out.

#include <istream>
#include <string>

#include <json.hpp>

#include "dmm/bounds.hpp"
#include "dmm/instance.hpp"
#include "dmm/reduction.hpp"

namespace dmm {

inline constexpr const char* kInstanceSchema = "dmm-instance/1";
inline constexpr const char* kReportSchema = "dmm-report/1";

/// Accepts roots as [re, im] pairs or plain reals. With "coefficients"
/// (constant term first) the roots are approximated and flagged as such.
/// Throws InputError on any schema violation.
Instance parse_instance(const nlohmann::json& doc);
Instance read_instance(std::istream& in);

nlohmann::json instance_to_json(const Instance& instance);

/// "a,b,c" -> PotentialVector; InputError on anything else.
PotentialVector parse_mu(const std::string& text);

nlohmann::json bound_report_to_json(const BoundReport& report, const Instance& instance, double tolerance);

nlohmann::json reduction_to_json(const ReductionResult& result, const HadamardReport& check, const PotentialVector& mu,
                                 const std::string& label, double tolerance);

/// Pretty-printed with shortest round-trip doubles (at most 17 significant digits).
std::string dump(const nlohmann::json& doc);

}  // namespace dmm
