#include "pdl/report.hpp"

namespace pdl {

nlohmann::json RunReport::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["algorithm"] = algorithm;
    if (!mode.empty()) j["mode"] = mode;
    if (answer) j["answer"] = *answer;
    if (!result.is_null()) j["result"] = result;
    if (!parameters.is_null()) j["parameters"] = parameters;
    j["elapsed_ms"] = elapsed_ms;
    j["exit_code"] = exit_code;
    return j;
}

RunReport RunReport::from_json(const nlohmann::json& j) {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.algorithm = j.at("algorithm").get<std::string>();
    if (j.contains("mode")) r.mode = j["mode"].get<std::string>();
    if (j.contains("answer")) r.answer = j["answer"].get<bool>();
    if (j.contains("result")) r.result = j["result"];
    if (j.contains("parameters")) r.parameters = j["parameters"];
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    r.exit_code = j.at("exit_code").get<int>();
    return r;
}

nlohmann::json parameter_report_json(const ParameterReport& p) {
    nlohmann::json j;
    j["formula_size"] = p.formula_size;
    j["formula_depth"] = p.formula_depth;
    j["splits"] = p.splits;
    j["arity"] = p.arity;
    j["variable_count"] = p.variable_count;
    if (p.team_size) j["team_size"] = *p.team_size;
    return j;
}

} // namespace pdl
