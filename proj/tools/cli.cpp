#include "cli.hpp"

#include "su11/analytic_states.hpp"
#include "su11/errors.hpp"
#include "su11/numeric_verify.hpp"
#include "su11/operator_algebra.hpp"
#include "su11/quantum_numbers.hpp"
#include "su11/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace su11::cli {

namespace {

using Json = nlohmann::ordered_json;

/// A usage or validation problem; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

HalfInt parse_half(const std::string& flag, const std::string& text)
{
    try {
        return HalfInt::parse(text);
    } catch (const std::invalid_argument&) {
        throw UsageError("--" + flag + " expects an integer or half-integer such as 3/2 or 1.5, got '" + text + "'");
    }
}

HalfInt required_half(const std::string& flag, const std::optional<std::string>& text)
{
    if (!text)
        throw UsageError("--" + flag + " is required for this command");
    return parse_half(flag, *text);
}

MonopoleParams params_of(const RunConfig& cfg)
{
    MonopoleParams p{parse_half("s", cfg.s), cfg.c1, cfg.c2};
    p.validate();
    return p;
}

std::string format_of(const RunConfig& cfg, const std::string& fallback)
{
    const std::string f = cfg.format.value_or(fallback);
    if (f != "csv" && f != "json")
        throw UsageError("--format must be csv or json");
    return f;
}

Json config_json(const RunConfig& cfg)
{
    Json j;
    j["command"] = cfg.command;
    j["s"] = cfg.s;
    j["c1"] = cfg.c1;
    j["c2"] = cfg.c2;
    if (cfg.m)
        j["m"] = *cfg.m;
    if (cfg.j)
        j["j"] = *cfg.j;
    if (cfg.n)
        j["n"] = *cfg.n;
    if (cfg.jmax)
        j["jmax"] = *cfg.jmax;
    if (cfg.big_j)
        j["big_j"] = *cfg.big_j;
    if (cfg.nmax)
        j["nmax"] = *cfg.nmax;
    if (cfg.rmax)
        j["rmax"] = *cfg.rmax;
    if (cfg.npoints)
        j["npoints"] = *cfg.npoints;
    if (cfg.tol)
        j["tol"] = *cfg.tol;
    if (cfg.command == "verify-algebra")
        j["deg_check_max"] = cfg.deg_check_max;
    if (cfg.command == "eigenfunction") {
        j["kind"] = cfg.kind;
        j["phi"] = cfg.phi;
    }
    return j;
}

/// Tabular output shared by spectrum, eigenfunction and oracle.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;       // CSV text
    std::vector<std::vector<Json>> json_rows;         // typed values
};

std::string to_csv(const Table& t)
{
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        out += (i ? "," : "") + t.columns[i];
    out += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out += (i ? "," : "") + row[i];
        out += "\n";
    }
    return out;
}

Json to_json_rows(const Table& t)
{
    Json rows = Json::array();
    for (const auto& r : t.json_rows) {
        Json obj;
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            obj[t.columns[i]] = r[i];
        rows.push_back(std::move(obj));
    }
    return rows;
}

Json json_value(double v)
{
    if (std::isfinite(v))
        return v;
    return format_double(v);
}

std::string render_table(const RunConfig& cfg, const Table& t)
{
    if (format_of(cfg, "csv") == "csv")
        return to_csv(t);
    Json doc;
    doc["schema"] = kSchemaTag;
    doc["config"] = config_json(cfg);
    doc["reports"] = to_json_rows(t);
    return doc.dump(2) + "\n";
}

std::string render_reports(const RunConfig& cfg, const std::vector<VerificationReport>& reports)
{
    if (format_of(cfg, "json") == "csv")
        return reports_to_csv(reports, cfg.timing);
    return report_document(config_json(cfg), reports, cfg.timing).dump(2) + "\n";
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out)
{
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file)
        throw UsageError("cannot open output file '" + cfg.out + "'");
    file << text;
}

bool all_passed(const std::vector<VerificationReport>& reports)
{
    for (const auto& r : reports)
        if (!r.passed)
            return false;
    return true;
}

void summarize(const std::vector<VerificationReport>& reports, std::ostream& err)
{
    for (const auto& r : reports) {
        err << (r.passed ? "PASS " : "FAIL ") << r.check_name;
        if (auto it = r.inputs.find("n"); it != r.inputs.end())
            err << " n=" << it->second;
        err << " residual=" << format_double(r.residual) << " tol=" << format_double(r.tolerance) << "\n";
    }
}

// --- commands -------------------------------------------------------------

int cmd_spectrum(const RunConfig& cfg, std::ostream& out)
{
    const MonopoleParams params = params_of(cfg);
    const HalfInt m = required_half("m", cfg.m);
    const int nmax = cfg.nmax.value_or(static_cast<int>(kDefaultLevelSpan));
    if (nmax < 1)
        throw UsageError("--nmax must be at least 1");

    std::vector<HalfInt> js;
    if (cfg.j) {
        js.push_back(parse_half("j", *cfg.j));
    } else {
        const HalfInt jmax = cfg.jmax ? parse_half("jmax", *cfg.jmax)
                                      : min_j(params, m) + HalfInt::from_int(kDefaultJSpan);
        js = enumerate_j(params, m, jmax);
    }

    Table t;
    t.columns = {"s", "m", "j", "n", "delta1", "delta2", "J", "K", "E"};
    for (HalfInt j : js) {
        const SectorLabels sector = make_sector(params, m, j);
        for (const LevelLabels& level : enumerate_levels(sector, nmax)) {
            t.rows.push_back({params.s.to_decimal(), m.to_decimal(), j.to_decimal(), level.n.to_decimal(),
                              format_double(sector.delta1), format_double(sector.delta2),
                              format_double(sector.bigJ), format_double(level.K), format_double(level.energy)});
            t.json_rows.push_back({params.s.value(), m.value(), j.value(), level.n.value(), sector.delta1,
                                   sector.delta2, sector.bigJ, level.K, level.energy});
        }
    }
    emit(cfg, render_table(cfg, t), out);
    return kExitOk;
}

int cmd_eigenfunction(const RunConfig& cfg, std::ostream& out)
{
    const MonopoleParams params = params_of(cfg);
    const SectorLabels sector = make_sector(params, required_half("m", cfg.m), required_half("j", cfg.j));
    const int npoints = cfg.npoints.value_or(200);
    if (npoints < 1)
        throw UsageError("--npoints must be positive");

    Table t;
    if (cfg.kind == "radial") {
        const HalfInt n = cfg.n ? parse_half("n", *cfg.n) : sector.j + HalfInt::from_int(1);
        const RadialState state = RadialState::make(sector, n);
        const double window = cfg.rmax.value_or(default_window(state));
        if (!(window > 0.0))
            throw UsageError("--rmax must be positive");
        const double h = window / npoints;
        t.columns = {"x", "chi", "chi_d1", "chi_d2"};
        for (int i = 1; i <= npoints; ++i) {
            const double x = i * h;
            const double v[4] = {x, chi(state, x), chi_d1(state, x), chi_d2(state, x)};
            t.rows.push_back({format_double(v[0]), format_double(v[1]), format_double(v[2]), format_double(v[3])});
            t.json_rows.push_back({json_value(v[0]), json_value(v[1]), json_value(v[2]), json_value(v[3])});
        }
    } else if (cfg.kind == "angular") {
        const AngularState state = AngularState::make(sector);
        t.columns = {"theta", "re_Z", "im_Z"};
        for (int i = 0; i < npoints; ++i) {
            const double theta = std::numbers::pi * (i + 0.5) / npoints;
            const auto z = angular_Z(state, theta, cfg.phi);
            t.rows.push_back({format_double(theta), format_double(z.real()), format_double(z.imag())});
            t.json_rows.push_back({json_value(theta), json_value(z.real()), json_value(z.imag())});
        }
    } else {
        throw UsageError("--kind must be radial or angular");
    }
    emit(cfg, render_table(cfg, t), out);
    return kExitOk;
}

int cmd_verify_algebra(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cfg.deg_check_max < -4)
        throw UsageError("--deg-check-max must be at least -4");
    Generators gens = Generators::standard();
    if (cfg.inject_fault) {
        // negate the x coefficient of T3 wherever T3 enters
        NormalOrderedOperator bad_t3 = gens.T3;
        auto& slot = bad_t3.mutable_terms().at(OpKey{0, 1});
        slot = -slot;
        gens.Tp = build_Tpm(Sign::Plus) + build_T3() - bad_t3;
        gens.Tm = build_Tpm(Sign::Minus) + build_T3() - bad_t3;
        gens.T3 = bad_t3;
    }

    std::vector<VerificationReport> reports;
    std::vector<IdentityCheck> checks = su11_identities(gens);
    for (auto& d : definitional_identities(gens))
        checks.push_back(std::move(d));

    const IdentityCheck* first_failure = nullptr;
    bool sweep_ok = true;
    for (const auto& c : checks) {
        const bool sweep = action_vanishes(c, -4, cfg.deg_check_max);
        sweep_ok = sweep_ok && sweep;
        auto r = VerificationReport::make("identity", {{"identity", c.name}},
                                          static_cast<double>(c.remainder.terms().size()), 0.0);
        r.details["remainder"] = c.remainder.to_string();
        r.measured["oracle_sweep_zero"] = sweep ? 1.0 : 0.0;
        reports.push_back(std::move(r));
        err << (c.holds() ? "PASS " : "FAIL ") << c.name << " = " << c.remainder.to_string() << "\n";
        if (!c.holds() && !first_failure)
            first_failure = &c;
    }
    {
        auto r = VerificationReport::make("oracle_sweep",
                                          {{"kmin", "-4"}, {"kmax", std::to_string(cfg.deg_check_max)}},
                                          sweep_ok ? 0.0 : 1.0, 0.0);
        reports.push_back(std::move(r));
        err << (sweep_ok ? "PASS " : "FAIL ") << "monomial-action oracle sweep k in [-4, " << cfg.deg_check_max
            << "]\n";
    }
    {
        // the ansatz must reproduce exactly the two sign branches
        bool ok = true;
        std::string text;
        try {
            const ParamPoly K = ParamPoly::K();
            const ParamPoly J = ParamPoly::J();
            const auto sols = solve_schrodinger_ansatz(gens.Ln);
            ok = sols.size() == 2;
            for (const auto& s : sols) {
                const int sg = sign_value(s.branch);
                ok = ok && s.a == ParamPoly(sg) && s.c == ParamPoly(sg) && s.b == ParamPoly(-sg) * K - ParamPoly(1) &&
                     s.f == s.b + ParamPoly(1) && s.g == K * (K + ParamPoly(sg)) - J * (J + ParamPoly(1)) &&
                     (expand_ansatz(s.a, s.b, s.c, s.f) - gens.Ln - NormalOrderedOperator::identity() * s.shift).is_zero();
                text += std::string(text.empty() ? "" : "; ") + sign_text(s.branch) + ": a=" + s.a.to_string() +
                        " b=" + s.b.to_string() + " c=" + s.c.to_string() + " f=" + s.f.to_string() +
                        " g=" + s.g.to_string();
            }
        } catch (const NoFactorization& e) {
            ok = false;
            text = e.what();
        }
        auto r = VerificationReport::make("ansatz_branches", {{"target", "Ln"}}, ok ? 0.0 : 1.0, 0.0);
        r.details["branches"] = text;
        reports.push_back(std::move(r));
        err << (ok ? "PASS " : "FAIL ") << "factorization ansatz branches " << text << "\n";
    }

    emit(cfg, render_reports(cfg, reports), out);
    if (first_failure) {
        err << "first failing identity: " << first_failure->name << " = " << first_failure->remainder.to_string()
            << "\n";
        return kExitVerificationFailed;
    }
    return all_passed(reports) ? kExitOk : kExitVerificationFailed;
}

int cmd_verify_states(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const MonopoleParams params = params_of(cfg);
    const SectorLabels sector = make_sector(params, required_half("m", cfg.m), required_half("j", cfg.j));
    const int levels = cfg.nmax.value_or(5);
    if (levels < 1)
        throw UsageError("--nmax must be at least 1");
    const int npoints = cfg.npoints.value_or(4000);
    const HalfInt bottom = sector.j + HalfInt::from_int(1);
    const HalfInt top = sector.j + HalfInt::from_int(levels);
    // the raised image of the top level needs the window of level top + 1
    const RadialGrid grid = cfg.rmax ? RadialGrid(*cfg.rmax, npoints)
                                     : default_state_grid(sector, top + HalfInt::from_int(1), npoints);

    std::vector<VerificationReport> reports;
    reports.push_back(angular_check(sector, {}, cfg.tol.value_or(1e-9)));
    for (HalfInt n = bottom; n <= top; n += HalfInt::from_int(1)) {
        reports.push_back(radial_ode_check(sector, n, grid, 0.01, 40.0, cfg.tol.value_or(kDefaultOdeTolerance)));
        reports.push_back(t3_eigen_check(sector, n, grid, cfg.tol.value_or(kDefaultStateTolerance)));
        reports.push_back(k_spacing_check(sector, n, grid, cfg.tol.value_or(kDefaultStateTolerance)));
        reports.push_back(casimir_check(sector, n, grid, cfg.tol.value_or(kDefaultStateTolerance)));
        reports.push_back(ladder_check(sector, n, Sign::Plus, grid, cfg.tol));
        reports.push_back(ladder_check(sector, n, Sign::Minus, grid, cfg.tol));
    }
    emit(cfg, render_reports(cfg, reports), out);
    summarize(reports, err);
    return all_passed(reports) ? kExitOk : kExitVerificationFailed;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const int levels = cfg.nmax.value_or(3);
    if (levels < 1)
        throw UsageError("--nmax must be at least 1");
    const double tol = cfg.tol.value_or(kDefaultSpectrumTolerance);
    const int npoints = cfg.npoints.value_or(6000);

    double bigJ = 0.0;
    std::optional<SectorLabels> sector;
    if (cfg.big_j) {
        if (cfg.m || cfg.j)
            throw UsageError("--big-j cannot be combined with --m/--j");
        bigJ = *cfg.big_j;
        if (!(bigJ >= 0.0))
            throw UsageError("--big-j must be non-negative");
    } else {
        sector = make_sector(params_of(cfg), required_half("m", cfg.m), required_half("j", cfg.j));
        bigJ = sector->bigJ;
    }
    double rmax = 0.0;
    if (cfg.rmax) {
        rmax = *cfg.rmax;
    } else {
        const double kmax = bigJ + levels;
        rmax = 12.0 * kmax * kmax;
    }
    const RadialGrid grid(rmax, npoints);
    const std::vector<double> oracle = eig_oracle(bigJ, grid, levels);

    Table t;
    t.columns = {"nprime", "n", "K", "E_analytic", "E_oracle", "rel_error", "status"};
    bool ok = true;
    for (int k = 0; k < levels; ++k) {
        const double K = bigJ + k + 1.0;
        const double e = -1.0 / (2.0 * K * K);
        const double rel = std::abs(oracle[k] - e) / std::abs(e);
        const bool pass = rel <= tol;
        ok = ok && pass;
        const std::string n_text = sector ? level_at(*sector, k).n.to_decimal() : "";
        t.rows.push_back({std::to_string(k), n_text, format_double(K), format_double(e), format_double(oracle[k]),
                          format_double(rel), pass ? "PASS" : "FAIL"});
        t.json_rows.push_back({k, sector ? Json(level_at(*sector, k).n.value()) : Json(nullptr), K, e, oracle[k],
                               json_value(rel), pass ? "PASS" : "FAIL"});
        err << (pass ? "PASS " : "FAIL ") << "oracle n'=" << k << " rel_error=" << format_double(rel)
            << " tol=" << format_double(tol) << "\n";
    }
    emit(cfg, render_table(cfg, t), out);
    return ok ? kExitOk : kExitVerificationFailed;
}

void add_sector_options(CLI::App* app, RunConfig& cfg)
{
    app->add_option("--s", cfg.s, "monopole charge (integer or half-integer, e.g. 1/2)");
    app->add_option("--c1", cfg.c1, "non-negative coupling c1");
    app->add_option("--c2", cfg.c2, "non-negative coupling c2");
    app->add_option("--m", cfg.m, "azimuthal quantum number");
    app->add_option("--j", cfg.j, "total angular momentum quantum number");
}

void add_output_options(CLI::App* app, RunConfig& cfg)
{
    app->add_option("--format", cfg.format, "csv or json");
    app->add_option("--out", cfg.out, "write output to this file instead of stdout");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"su(1,1) ladder-operator toolkit for the generalized MICZ-Kepler problem", "su11micz"};
    app.require_subcommand(1);

    auto* spectrum = app.add_subcommand("spectrum", "closed-form bound-state spectrum table");
    add_sector_options(spectrum, cfg);
    spectrum->add_option("--jmax", cfg.jmax, "largest j when --j is omitted (default m+ + 32)");
    spectrum->add_option("--nmax", cfg.nmax, "levels per j: n = j+1 ... j+nmax (default 32)");
    add_output_options(spectrum, cfg);

    auto* eigen = app.add_subcommand("eigenfunction", "sample a radial or angular eigenfunction");
    add_sector_options(eigen, cfg);
    eigen->add_option("--n", cfg.n, "principal quantum number (default j+1)");
    eigen->add_option("--kind", cfg.kind, "radial or angular")->check(CLI::IsMember({"radial", "angular"}));
    eigen->add_option("--npoints", cfg.npoints, "number of samples (default 200)");
    eigen->add_option("--rmax", cfg.rmax, "radial window in x (default 10 + 4K)");
    eigen->add_option("--phi", cfg.phi, "azimuth for angular samples (default 0)");
    add_output_options(eigen, cfg);

    auto* algebra = app.add_subcommand("verify-algebra", "exact su(1,1) and factorization identities");
    algebra->add_option("--deg-check-max", cfg.deg_check_max, "oracle sweep over x^k, k in [-4, value] (default 12)");
    algebra->add_flag("--inject-fault", cfg.inject_fault, "corrupt one generator coefficient (test hook)")
        ->group("");
    add_output_options(algebra, cfg);

    auto* states = app.add_subcommand("verify-states", "numeric checks on closed-form eigenfunctions");
    add_sector_options(states, cfg);
    states->add_option("--nmax", cfg.nmax, "levels n = j+1 ... j+nmax (default 5)");
    states->add_option("--rmax", cfg.rmax, "x window (default 10 + 4K of the highest level used)");
    states->add_option("--npoints", cfg.npoints, "grid points (default 4000)");
    states->add_option("--tol", cfg.tol, "override every pass threshold");
    states->add_flag("--timing", cfg.timing, "include runtime_ms in reports");
    add_output_options(states, cfg);

    auto* oracle = app.add_subcommand("oracle", "finite-difference eigenvalues next to the closed form");
    add_sector_options(oracle, cfg);
    oracle->add_option("--big-j", cfg.big_j, "use this J directly instead of sector flags");
    oracle->add_option("--nmax", cfg.nmax, "number of levels (default 3)");
    oracle->add_option("--rmax", cfg.rmax, "radial box (default 12 (J + nmax)^2)");
    oracle->add_option("--npoints", cfg.npoints, "interior grid points (default 6000)");
    oracle->add_option("--tol", cfg.tol, "relative error threshold (default 1e-4)");
    oracle->add_flag("--timing", cfg.timing, "accepted for symmetry with verify-states");
    add_output_options(oracle, cfg);

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.push_back("su11micz");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store)
        argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (spectrum->parsed()) {
            cfg.command = "spectrum";
            return cmd_spectrum(cfg, out);
        }
        if (eigen->parsed()) {
            cfg.command = "eigenfunction";
            return cmd_eigenfunction(cfg, out);
        }
        if (algebra->parsed()) {
            cfg.command = "verify-algebra";
            return cmd_verify_algebra(cfg, out, err);
        }
        if (states->parsed()) {
            cfg.command = "verify-states";
            return cmd_verify_states(cfg, out, err);
        }
        cfg.command = "oracle";
        return cmd_oracle(cfg, out, err);
    } catch (const ConvergenceFailure& e) {
        err << "error: " << e.what() << "\n";
        return kExitVerificationFailed;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace su11::cli
