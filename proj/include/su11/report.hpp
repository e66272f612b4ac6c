#pragma once

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace su11 {

inline constexpr const char* kSchemaTag = "su11-micz/1";

/// Outcome of one numeric or symbolic check. `passed` is always
/// residual <= tolerance; a NaN residual fails.
struct VerificationReport {
    std::string check_name;
    std::map<std::string, std::string> inputs;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    double runtime_ms = 0.0;
    /// Auxiliary measured quantities (eigenvalues, proportionality ratios, ...).
    std::map<std::string, double> measured;
    /// Free-form textual results, e.g. a rendered canonical form.
    std::map<std::string, std::string> details;

    static VerificationReport make(std::string name, std::map<std::string, std::string> inputs,
                                   double residual, double tolerance,
                                   std::map<std::string, double> measured = {});
};

/// "%.17g"; non-finite values render as "nan", "inf", "-inf".
std::string format_double(double value);

/// runtime_ms is wall-clock and therefore omitted unless requested.
nlohmann::ordered_json to_json(const VerificationReport& report, bool include_runtime = false);

/// {"schema": ..., "config": ..., "reports": [...]}
nlohmann::ordered_json report_document(const nlohmann::ordered_json& config,
                                       const std::vector<VerificationReport>& reports,
                                       bool include_runtime = false);

/// Header plus one row per report; inputs and measured values are packed as
/// "key=value;key=value".
std::string reports_to_csv(const std::vector<VerificationReport>& reports, bool include_runtime = false);

} // namespace su11
