#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "pdl/syntax.hpp"

namespace pdl {

/// Machine-readable outcome of one CLI invocation. Exit code 0 means yes or
/// plain success, 1 means no, 2 means error.
struct RunReport {
    std::string command;
    std::string algorithm;
    std::string mode; // lax / strict where it applies
    std::optional<bool> answer;
    nlohmann::json result;     // witness, certificate, width, ... per command
    nlohmann::json parameters; // ParameterReport of the instance
    double elapsed_ms = 0;
    int exit_code = 0;

    nlohmann::json to_json() const;
    static RunReport from_json(const nlohmann::json& j);
};

nlohmann::json parameter_report_json(const ParameterReport& p);

} // namespace pdl
