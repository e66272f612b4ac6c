#include "su11/numeric_verify.hpp"

#include "su11/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace su11 {

RadialGrid::RadialGrid(double rmax, int npoints) : rmax_(rmax), npoints_(npoints)
{
    if (!(rmax > 0.0) || !std::isfinite(rmax))
        throw DomainError("grid rmax must be positive and finite");
    if (npoints < 16)
        throw DomainError("grid needs at least 16 interior points");
}

std::vector<double> RadialGrid::nodes() const
{
    std::vector<double> out(npoints_);
    for (int i = 0; i < npoints_; ++i)
        out[i] = node(i);
    return out;
}

GridFunction sample(const RadialGrid& grid, const DerivativeFn& f)
{
    GridFunction out{grid, std::vector<double>(grid.npoints())};
    for (int i = 0; i < grid.npoints(); ++i)
        out.values[i] = f(0, grid.node(i));
    return out;
}

DerivativeFn lift(const NumericOperator& op, DerivativeFn f)
{
    return [op, f = std::move(f)](int order, double x) {
        double sum = 0.0;
        for (const auto& t : op.terms) {
            double binom = 1.0;
            double falling = 1.0;
            for (int i = 0; i <= order; ++i) {
                if (falling == 0.0)
                    break;
                sum += t.coeff * binom * falling * std::pow(x, t.xpow - i) * f(t.dorder + order - i, x);
                binom = binom * (order - i) / (i + 1.0);
                falling *= t.xpow - i;
            }
        }
        return sum;
    };
}

namespace {

/// Fornberg's finite-difference weights for the derivative of order `order` at
/// `z` on the given nodes.
std::vector<double> fd_weights(const std::vector<double>& nodes, double z, int order)
{
    const int n = static_cast<int>(nodes.size());
    std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = c[i][order];
    return out;
}

std::vector<double> fd_derivative(const GridFunction& f, int order)
{
    const int n = f.grid.npoints();
    if (order == 0)
        return f.values;
    const int width = order <= 2 ? 5 : 7;
    const int half = width / 2;
    const double scale = std::pow(f.grid.h(), -order);

    // weights depend only on the offset of the evaluation node inside the window
    std::vector<std::vector<double>> weights(width);
    std::vector<double> offsets(width);
    for (int k = 0; k < width; ++k)
        offsets[k] = k;
    for (int pos = 0; pos < width; ++pos)
        weights[pos] = fd_weights(offsets, pos, order);

    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const int start = std::clamp(i - half, 0, n - width);
        const auto& w = weights[i - start];
        double sum = 0.0;
        for (int k = 0; k < width; ++k)
            sum += w[k] * f.values[start + k];
        out[i] = sum * scale;
    }
    return out;
}

class Stopwatch {
public:
    double elapsed_ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::map<std::string, std::string> sector_inputs(const SectorLabels& sector)
{
    return {
        {"s", sector.params.s.to_string()},
        {"c1", format_double(sector.params.c1)},
        {"c2", format_double(sector.params.c2)},
        {"m", sector.m.to_string()},
        {"j", sector.j.to_string()},
    };
}

std::map<std::string, std::string> level_inputs(const SectorLabels& sector, HalfInt n, const RadialGrid& grid)
{
    auto inputs = sector_inputs(sector);
    inputs["n"] = n.to_string();
    inputs["grid_rmax"] = format_double(grid.rmax());
    inputs["grid_npoints"] = std::to_string(grid.npoints());
    return inputs;
}

GridFunction axpy(double a, const GridFunction& x, const GridFunction& y)
{
    GridFunction out = y;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] += a * x.values[i];
    return out;
}

double max_abs(const std::vector<double>& v)
{
    double out = 0.0;
    for (double x : v)
        out = std::max(out, std::abs(x));
    return out;
}

double rayleigh(const NumericOperator& op, const DerivativeFn& f, const RadialGrid& grid)
{
    const auto fv = sample(grid, f);
    const auto opf = sample(grid, lift(op, f));
    return inner(fv, opf) / inner(fv, fv);
}

/// ‖op f - lambda f‖ / ‖f‖
double eigen_defect(const NumericOperator& op, const DerivativeFn& f, double lambda, const RadialGrid& grid)
{
    const auto fv = sample(grid, f);
    const auto opf = sample(grid, lift(op, f));
    return norm(axpy(-lambda, fv, opf)) / norm(fv);
}

} // namespace

GridFunction apply_operator(const NumericOperator& op, const GridFunction& f,
                            const std::optional<DerivativeFn>& derivatives)
{
    const int n = f.grid.npoints();
    if (f.values.size() != static_cast<std::size_t>(n))
        throw DomainError("grid function length does not match its grid");
    GridFunction out{f.grid, std::vector<double>(n, 0.0)};
    if (derivatives) {
        for (int i = 0; i < n; ++i) {
            const double x = f.grid.node(i);
            double sum = 0.0;
            for (const auto& t : op.terms)
                sum += t.coeff * std::pow(x, t.xpow) * (*derivatives)(t.dorder, x);
            out.values[i] = sum;
        }
        return out;
    }
    if (op.max_dorder() > 4)
        throw StencilUnsupported("finite-difference stencils exist up to order 4 only");
    std::map<int, std::vector<double>> cache;
    for (const auto& t : op.terms) {
        auto it = cache.find(t.dorder);
        if (it == cache.end())
            it = cache.emplace(t.dorder, fd_derivative(f, t.dorder)).first;
        for (int i = 0; i < n; ++i)
            out.values[i] += t.coeff * std::pow(f.grid.node(i), t.xpow) * it->second[i];
    }
    return out;
}

double inner(const GridFunction& f, const GridFunction& g)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        sum += f.values[i] * g.values[i];
    return sum * f.grid.h();
}

double norm(const GridFunction& f)
{
    return std::sqrt(inner(f, f));
}

std::vector<double> eig_oracle(double bigJ, const RadialGrid& grid, int count)
{
    if (!(bigJ >= 0.0))
        throw DomainError("the oracle needs J >= 0");
    if (count < 0 || count > grid.npoints())
        throw DomainError("eigenvalue count must lie in [0, npoints]");
    if (count == 0)
        return {};
    // expected wavelength of the count-th state ~ 2 rmax / count
    if (2.0 * (grid.npoints() + 1) / count < 8.0)
        throw GridTooCoarse("fewer than 8 grid nodes per expected wavelength for " + std::to_string(count) +
                            " states");

    const int n = grid.npoints();
    const double h = grid.h();
    const double off = -0.5 / (h * h);
    const double off2 = off * off;
    const double jj = bigJ * (bigJ + 1.0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) {
        const double r = grid.node(i);
        diag[i] = 1.0 / (h * h) - 1.0 / r + 0.5 * jj / (r * r);
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < n; ++i) {
        const double radius = (i > 0 ? std::abs(off) : 0.0) + (i + 1 < n ? std::abs(off) : 0.0);
        lo = std::min(lo, diag[i] - radius);
        hi = std::max(hi, diag[i] + radius);
    }
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, off2);

    // number of eigenvalues strictly below lambda
    auto sturm_count = [&](double lambda) {
        int negatives = 0;
        double q = diag[0] - lambda;
        for (int i = 0;; ++i) {
            if (std::abs(q) < pivmin)
                q = -pivmin;
            if (q < 0.0)
                ++negatives;
            if (i + 1 == n)
                break;
            q = diag[i + 1] - lambda - off2 / q;
        }
        return negatives;
    };

    if (sturm_count(lo) != 0 || sturm_count(hi) != n)
        throw ConvergenceFailure("Gershgorin interval does not bracket the spectrum");

    std::vector<double> out;
    out.reserve(count);
    const double eps = std::numeric_limits<double>::epsilon();
    for (int k = 0; k < count; ++k) {
        double a = k == 0 ? lo : out.back();
        double b = hi;
        int iter = 0;
        while (b - a > 2.0 * eps * std::max(std::abs(a), std::abs(b)) + pivmin) {
            if (++iter > 400)
                throw ConvergenceFailure("bisection did not separate eigenvalue " + std::to_string(k));
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b)
                break;
            if (sturm_count(mid) > k)
                b = mid;
            else
                a = mid;
        }
        const double value = 0.5 * (a + b);
        if (!std::isfinite(value))
            throw ConvergenceFailure("non-finite eigenvalue estimate");
        out.push_back(value);
    }
    return out;
}

double default_oracle_rmax(const SectorLabels& sector, int levels)
{
    const double nmax = sector.j.value() + levels;
    const double k = nmax + sector.shift();
    return 12.0 * k * k;
}

RadialGrid default_state_grid(const SectorLabels& sector, HalfInt n_max, int npoints)
{
    return RadialGrid(10.0 + 4.0 * energy(sector, n_max).K, npoints);
}

DerivativeFn chi_function(const RadialState& state)
{
    return [state](int order, double x) { return chi_derivative(state, order, x); };
}

VerificationReport ladder_check(const SectorLabels& sector, HalfInt n, Sign sign, const RadialGrid& grid,
                                std::optional<double> tolerance)
{
    Stopwatch watch;
    const RadialState state = RadialState::make(sector, n);
    const NumericOperator tpm = substitute(build_Tpm(sign), sector.bigJ, state.K());
    const auto chi_fn = chi_function(state);
    const GridFunction chi_v = sample(grid, chi_fn);
    const GridFunction image = apply_operator(tpm, chi_v, chi_fn);
    auto inputs = level_inputs(sector, n, grid);
    inputs["direction"] = sign == Sign::Plus ? "raise" : "lower";

    const HalfInt target_n = sign == Sign::Plus ? n + HalfInt::from_int(1) : n - HalfInt::from_int(1);
    const bool bottom = sign == Sign::Minus && state.level.nprime == 0;
    VerificationReport report;
    if (bottom) {
        const double ratio = norm(image) / norm(chi_v);
        report = VerificationReport::make("ladder_annihilation", inputs, ratio,
                                          tolerance.value_or(kDefaultStateTolerance),
                                          {{"norm_ratio", ratio}});
    } else {
        const RadialState target = RadialState::make(sector, target_n);
        const GridFunction target_v = sample(grid, chi_function(target));
        const double overlap = inner(image, target_v);
        // rounding can push the cosine a few ulps past 1
        const double cosine = std::abs(overlap) / (norm(image) * norm(target_v));
        inputs["target_n"] = target_n.to_string();
        report = VerificationReport::make(sign == Sign::Plus ? "ladder_raise" : "ladder_lower", inputs,
                                          std::max(0.0, 1.0 - cosine), tolerance.value_or(kDefaultLadderTolerance),
                                          {{"proportionality", overlap / inner(target_v, target_v)},
                                           {"cosine", cosine}});
    }
    report.runtime_ms = watch.elapsed_ms();
    return report;
}

VerificationReport t3_eigen_check(const SectorLabels& sector, HalfInt n, const RadialGrid& grid, double tolerance)
{
    Stopwatch watch;
    const RadialState state = RadialState::make(sector, n);
    const double K = state.K();
    const NumericOperator t3 = substitute(build_T3(), sector.bigJ, K);
    const auto chi_fn = chi_function(state);

    std::map<std::string, double> measured;
    double residual = eigen_defect(t3, chi_fn, K, grid);
    measured["eigenvalue"] = rayleigh(t3, chi_fn, grid);
    measured["defect"] = residual;

    const auto raised = lift(substitute(build_Tpm(Sign::Plus), sector.bigJ, K), chi_fn);
    const double raised_defect = eigen_defect(t3, raised, K + 1.0, grid);
    measured["raised_eigenvalue"] = rayleigh(t3, raised, grid);
    measured["raised_defect"] = raised_defect;
    residual = std::max(residual, raised_defect);

    if (state.level.nprime > 0) {
        const auto lowered = lift(substitute(build_Tpm(Sign::Minus), sector.bigJ, K), chi_fn);
        const double lowered_defect = eigen_defect(t3, lowered, K - 1.0, grid);
        measured["lowered_eigenvalue"] = rayleigh(t3, lowered, grid);
        measured["lowered_defect"] = lowered_defect;
        residual = std::max(residual, lowered_defect);
    }
    auto report = VerificationReport::make("t3_eigen", level_inputs(sector, n, grid), residual, tolerance,
                                           std::move(measured));
    report.runtime_ms = watch.elapsed_ms();
    return report;
}

VerificationReport k_spacing_check(const SectorLabels& sector, HalfInt n, const RadialGrid& grid, double tolerance)
{
    Stopwatch watch;
    const RadialState lower = RadialState::make(sector, n);
    const RadialState upper = RadialState::make(sector, n + HalfInt::from_int(1));
    const NumericOperator t3 = substitute(build_T3(), sector.bigJ, 0.0);
    const double k_lower = rayleigh(t3, chi_function(lower), grid);
    const double k_upper = rayleigh(t3, chi_function(upper), grid);
    const double spacing = k_upper - k_lower;
    auto report = VerificationReport::make("k_spacing", level_inputs(sector, n, grid), std::abs(spacing - 1.0),
                                           tolerance,
                                           {{"K_n", k_lower}, {"K_n_plus_1", k_upper}, {"spacing", spacing}});
    report.runtime_ms = watch.elapsed_ms();
    return report;
}

VerificationReport casimir_check(const SectorLabels& sector, HalfInt n, const RadialGrid& grid, double tolerance)
{
    Stopwatch watch;
    const RadialState state = RadialState::make(sector, n);
    const double J = sector.bigJ;
    const NumericOperator t3 = substitute(build_T3(), J, state.K());
    const NumericOperator tp = substitute(build_Tpm(Sign::Plus), J, state.K());
    const NumericOperator tm = substitute(build_Tpm(Sign::Minus), J, state.K());
    const auto chi_fn = chi_function(state);

    const auto tp_tm = sample(grid, lift(tp, lift(tm, chi_fn)));
    const auto t3_once = sample(grid, lift(t3, chi_fn));
    const auto t3_twice = sample(grid, lift(t3, lift(t3, chi_fn)));
    const auto chi_v = sample(grid, chi_fn);
    const double jj = J * (J + 1.0);

    GridFunction defect = chi_v;
    for (std::size_t i = 0; i < defect.values.size(); ++i)
        defect.values[i] = -tp_tm.values[i] + t3_twice.values[i] - t3_once.values[i] - jj * chi_v.values[i];
    const double residual = norm(defect) / norm(chi_v);
    auto report = VerificationReport::make("casimir", level_inputs(sector, n, grid), residual, tolerance,
                                           {{"JJ1", jj}});
    report.runtime_ms = watch.elapsed_ms();
    return report;
}

VerificationReport radial_ode_check(const SectorLabels& sector, HalfInt n, const RadialGrid& grid, double xmin,
                                    double xmax, double tolerance)
{
    Stopwatch watch;
    const RadialState state = RadialState::make(sector, n);
    const NumericOperator ln = substitute(build_Ln(), sector.bigJ, state.K());
    const auto chi_fn = chi_function(state);
    const auto chi_v = sample(grid, chi_fn);
    const auto ln_chi = apply_operator(ln, chi_v, chi_fn);
    std::vector<double> defect;
    std::vector<double> values;
    for (int i = 0; i < grid.npoints(); ++i) {
        const double x = grid.node(i);
        if (x < xmin || x > xmax)
            continue;
        defect.push_back(ln_chi.values[i] + sector.sep_const * chi_v.values[i]);
        values.push_back(chi_v.values[i]);
    }
    const double scale = max_abs(values);
    const double residual = scale > 0.0 ? max_abs(defect) / scale : std::numeric_limits<double>::infinity();
    auto inputs = level_inputs(sector, n, grid);
    inputs["xmin"] = format_double(xmin);
    inputs["xmax"] = format_double(xmax);
    auto report = VerificationReport::make("radial_ode", inputs, residual, tolerance);
    report.runtime_ms = watch.elapsed_ms();
    return report;
}

VerificationReport angular_check(const SectorLabels& sector, const AngularMesh& mesh, double tolerance)
{
    Stopwatch watch;
    const double residual = angular_residual(AngularState::make(sector), mesh);
    auto inputs = sector_inputs(sector);
    inputs["ntheta"] = std::to_string(mesh.ntheta);
    inputs["nphi"] = std::to_string(mesh.nphi);
    auto report = VerificationReport::make("angular_residual", inputs, residual, tolerance,
                                           {{"sep_const", sector.sep_const}});
    report.runtime_ms = watch.elapsed_ms();
    return report;
}

std::vector<VerificationReport> spectrum_cross_check(const MonopoleParams& params, HalfInt m, HalfInt j,
                                                     int levels, const RadialGrid& grid, double tolerance)
{
    if (levels < 1)
        throw DomainError("spectrum cross-check needs at least one level");
    const SectorLabels sector = make_sector(params, m, j);
    Stopwatch watch;
    const std::vector<double> oracle = eig_oracle(sector.bigJ, grid, levels);
    const double per_level_ms = watch.elapsed_ms() / levels;

    std::vector<VerificationReport> out;
    for (int k = 0; k < levels; ++k) {
        const LevelLabels level = level_at(sector, k);
        const double rel = std::abs(oracle[k] - level.energy) / std::abs(level.energy);
        auto inputs = sector_inputs(sector);
        inputs["n"] = level.n.to_string();
        inputs["grid_rmax"] = format_double(grid.rmax());
        inputs["grid_npoints"] = std::to_string(grid.npoints());
        auto report = VerificationReport::make("spectrum", inputs, rel, tolerance,
                                               {{"E_oracle", oracle[k]}, {"E_analytic", level.energy}});
        report.runtime_ms = per_level_ms;
        out.push_back(std::move(report));
    }
    return out;
}

} // namespace su11
