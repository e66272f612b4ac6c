#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace su11::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitUsage = 2,
};

/// Parsed command line. Half-integers stay textual until validated.
struct RunConfig {
    std::string command;
    std::string s = "0";
    double c1 = 0.0;
    double c2 = 0.0;
    std::optional<std::string> m;
    std::optional<std::string> j;
    std::optional<std::string> n;
    std::optional<std::string> jmax;
    std::optional<double> big_j;
    std::optional<int> nmax;
    std::optional<double> rmax;
    std::optional<int> npoints;
    std::optional<double> tol;
    std::optional<std::string> format;
    std::string out;
    int deg_check_max = 12;
    std::string kind = "radial";
    double phi = 0.0;
    bool timing = false;
    bool inject_fault = false;
};

/// Runs one command. `args` excludes the program name. Output goes to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace su11::cli
