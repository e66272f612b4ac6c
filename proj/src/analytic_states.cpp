#include "su11/analytic_states.hpp"

#include "su11/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace su11 {

RadialState RadialState::make(const SectorLabels& sector, HalfInt n)
{
    RadialState out;
    out.sector = sector;
    out.level = energy(sector, n);
    out.kummer = {static_cast<int>(out.level.nprime), 2.0 * sector.bigJ + 2.0};
    return out;
}

double chi_derivative(const RadialState& state, int order, double x)
{
    if (!(x > 0.0))
        throw DomainError("chi is evaluated on x > 0 only");
    if (order < 0)
        throw DomainError("derivative order must be non-negative");
    const double power = state.bigJ() + 1.0;
    const double envelope = std::exp(power * std::log(2.0 * x) - x);
    const double y = 2.0 * x;

    // chi^(n) = envelope * sum_{i+l+q=n} n!/(i! l! q!) (J+1)_i^falling x^-i (-1)^l 2^q F^(q)(2x)
    double sum = 0.0;
    double binom_n_i = 1.0;
    for (int i = 0; i <= order; ++i) {
        double falling = 1.0;
        for (int t = 0; t < i; ++t)
            falling *= power - t;
        const double pow_part = falling * std::pow(x, -i);
        const int rest = order - i;
        double binom_rest_q = 1.0;
        for (int q = 0; q <= rest; ++q) {
            const int l = rest - q;
            const double sign = (l % 2 == 0) ? 1.0 : -1.0;
            const double poly = std::ldexp(kummer_terminating_deriv(state.kummer, q, y), q);
            sum += binom_n_i * binom_rest_q * pow_part * sign * poly;
            binom_rest_q = binom_rest_q * (rest - q) / (q + 1.0);
        }
        binom_n_i = binom_n_i * (order - i) / (i + 1.0);
    }
    return envelope * sum;
}

double radial_R(const RadialState& state, double r)
{
    if (!(r > 0.0))
        throw DomainError("R is evaluated on r > 0 only");
    const double y = 2.0 * state.level.epsilon * r;
    return std::exp(state.bigJ() * std::log(y) - 0.5 * y) * kummer_terminating(state.kummer, y);
}

double radial_scale(const RadialState& state)
{
    return 0.5 * state.K();
}

double default_window(const RadialState& state)
{
    return 10.0 + 4.0 * state.K();
}

AngularState AngularState::make(const SectorLabels& sector)
{
    AngularState out;
    out.sector = sector;
    out.phase_rate = (sector.m - sector.params.s).value();
    out.jacobi = {static_cast<int>((sector.j - sector.mplus).twice() / 2), sector.m2, sector.m1};
    return out;
}

namespace {

struct ThetaFactor {
    double value;
    double d1;
    double d2;
};

/// cos(θ/2)^m1 sin(θ/2)^m2 P(cos θ) and its first two θ derivatives.
ThetaFactor theta_factor(const AngularState& state, double theta)
{
    const double m1 = state.sector.m1;
    const double m2 = state.sector.m2;
    const double ch = std::cos(0.5 * theta);
    const double sh = std::sin(0.5 * theta);
    const double w = std::pow(ch, m1) * std::pow(sh, m2);
    // (log w)' and its derivative
    const double L = -0.5 * m1 * sh / ch + 0.5 * m2 * ch / sh;
    const double Lp = -0.25 * m1 / (ch * ch) - 0.25 * m2 / (sh * sh);
    const double w1 = w * L;
    const double w2 = w * (L * L + Lp);

    const double z = std::cos(theta);
    const double st = std::sin(theta);
    const double p0 = jacobi(state.jacobi, z);
    const double pz = jacobi_deriv_n(state.jacobi, 1, z);
    const double pzz = jacobi_deriv_n(state.jacobi, 2, z);
    const double p1 = -st * pz;
    const double p2 = st * st * pzz - z * pz;

    return {w * p0, w1 * p0 + w * p1, w2 * p0 + 2.0 * w1 * p1 + w * p2};
}

void check_theta(double theta)
{
    if (!(theta > 0.0 && theta < std::numbers::pi))
        throw DomainError("theta must lie strictly inside (0, pi)");
}

} // namespace

std::complex<double> angular_Z(const AngularState& state, double theta, double phi)
{
    check_theta(theta);
    return theta_factor(state, theta).value * std::polar(1.0, state.phase_rate * phi);
}

double angular_residual(const AngularState& state, const AngularMesh& mesh)
{
    return angular_residual(state, mesh, state.sector.sep_const);
}

double angular_residual(const AngularState& state, const AngularMesh& mesh, double sep_const)
{
    using namespace std::complex_literals;
    const double pi = std::numbers::pi;
    const double s = state.sector.params.s.value();
    const double c1 = state.sector.params.c1;
    const double c2 = state.sector.params.c2;
    // ∂φ acts on e^{i(m-s)φ} as multiplication by i(m-s)
    const std::complex<double> dphi = 1i * state.phase_rate;
    const std::complex<double> shifted = dphi + 2.0i * s;

    double worst = 0.0;
    double zmax = 0.0;
    for (int it = 0; it < mesh.ntheta; ++it) {
        const double theta = pi * (it + 0.5) / mesh.ntheta;
        check_theta(theta);
        const ThetaFactor f = theta_factor(state, theta);
        const double ch2 = std::pow(std::cos(0.5 * theta), 2);
        const double sh2 = std::pow(std::sin(0.5 * theta), 2);
        for (int ip = 0; ip < mesh.nphi; ++ip) {
            const double phi = 2.0 * pi * ip / mesh.nphi;
            const std::complex<double> e = std::polar(1.0, state.phase_rate * phi);
            const std::complex<double> Z = f.value * e;
            // (1/sinθ) ∂θ(sinθ ∂θ Z) = Z_θθ + cotθ Z_θ
            std::complex<double> lhs = (f.d2 + std::cos(theta) / std::sin(theta) * f.d1) * e;
            lhs += (dphi * dphi - 4.0 * c1) * Z / (4.0 * ch2);
            lhs += (shifted * shifted - 4.0 * c2) * Z / (4.0 * sh2);
            worst = std::max(worst, std::abs(lhs + sep_const * Z));
            zmax = std::max(zmax, std::abs(Z));
        }
    }
    if (zmax == 0.0)
        return worst == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return worst / zmax;
}

} // namespace su11
