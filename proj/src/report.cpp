#include "su11/report.hpp"

#include <cmath>
#include <cstdio>

namespace su11 {

VerificationReport VerificationReport::make(std::string name, std::map<std::string, std::string> inputs,
                                            double residual, double tolerance,
                                            std::map<std::string, double> measured)
{
    VerificationReport r;
    r.check_name = std::move(name);
    r.inputs = std::move(inputs);
    r.residual = residual;
    r.tolerance = tolerance;
    r.passed = residual <= tolerance;
    r.measured = std::move(measured);
    return r;
}

std::string format_double(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

// JSON has no NaN/Inf; those become strings.
nlohmann::ordered_json json_number(double value)
{
    if (std::isfinite(value))
        return value;
    return format_double(value);
}

} // namespace

nlohmann::ordered_json to_json(const VerificationReport& report, bool include_runtime)
{
    nlohmann::ordered_json j;
    j["check_name"] = report.check_name;
    j["inputs"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.inputs)
        j["inputs"][k] = v;
    j["residual"] = json_number(report.residual);
    j["tolerance"] = json_number(report.tolerance);
    j["passed"] = report.passed;
    if (include_runtime)
        j["runtime_ms"] = report.runtime_ms;
    j["measured"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.measured)
        j["measured"][k] = json_number(v);
    if (!report.details.empty()) {
        j["details"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : report.details)
            j["details"][k] = v;
    }
    return j;
}

nlohmann::ordered_json report_document(const nlohmann::ordered_json& config,
                                       const std::vector<VerificationReport>& reports, bool include_runtime)
{
    nlohmann::ordered_json doc;
    doc["schema"] = kSchemaTag;
    doc["config"] = config;
    doc["reports"] = nlohmann::ordered_json::array();
    for (const auto& r : reports)
        doc["reports"].push_back(to_json(r, include_runtime));
    return doc;
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports, bool include_runtime)
{
    std::string out = "check_name,inputs,residual,tolerance,passed,measured";
    if (include_runtime)
        out += ",runtime_ms";
    out += "\n";
    for (const auto& r : reports) {
        std::string inputs;
        for (const auto& [k, v] : r.inputs)
            inputs += (inputs.empty() ? "" : ";") + k + "=" + v;
        std::string measured;
        for (const auto& [k, v] : r.measured)
            measured += (measured.empty() ? "" : ";") + k + "=" + format_double(v);
        out += r.check_name + "," + inputs + "," + format_double(r.residual) + "," +
               format_double(r.tolerance) + "," + (r.passed ? "PASS" : "FAIL") + "," + measured;
        if (include_runtime)
            out += "," + format_double(r.runtime_ms);
        out += "\n";
    }
    return out;
}

} // namespace su11
