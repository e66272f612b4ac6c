#pragma once

#include "su11/quantum_numbers.hpp"
#include "su11/special_functions.hpp"

#include <complex>

namespace su11 {

/// Radial eigenfunction chi_{n,j}(x) = (2x)^(J+1) e^(-x) F(j+1-n, 2J+2; 2x) in
/// the scaled variable x = r / K_n. The stored form does not depend on K, so
/// every level of a j-tower lives on the same x axis.
struct RadialState {
    SectorLabels sector;
    LevelLabels level;
    KummerParams kummer; // k = n - j - 1, b = 2J + 2

    static RadialState make(const SectorLabels& sector, HalfInt n);

    double bigJ() const { return sector.bigJ; }
    double K() const { return level.K; }
};

/// d^order chi / dx^order at x > 0, by the Leibniz rule on
/// power x exponential x polynomial. Throws DomainError for x <= 0.
double chi_derivative(const RadialState& state, int order, double x);

inline double chi(const RadialState& state, double x) { return chi_derivative(state, 0, x); }
inline double chi_d1(const RadialState& state, double x) { return chi_derivative(state, 1, x); }
inline double chi_d2(const RadialState& state, double x) { return chi_derivative(state, 2, x); }

/// R(r) = (2 eps r)^J e^(-eps r) F(j+1-n, 2J+2; 2 eps r), r > 0.
double radial_R(const RadialState& state, double r);

/// Constant c with r R(r) = c chi(r / K).
double radial_scale(const RadialState& state);

/// Upper end of the default x window, 10 + 4K.
double default_window(const RadialState& state);

/// Z(θ,φ) = cos(θ/2)^m1 sin(θ/2)^m2 P^(m2,m1)_{j-m+}(cos θ) e^{i(m-s)φ}.
struct AngularState {
    SectorLabels sector;
    double phase_rate = 0.0; // m - s
    JacobiParams jacobi;     // degree j - m+, a = m2, b = m1

    static AngularState make(const SectorLabels& sector);
};

/// Throws DomainError unless 0 < theta < pi.
std::complex<double> angular_Z(const AngularState& state, double theta, double phi);

struct AngularMesh {
    int ntheta = 200;
    int nphi = 8;
};

/// max |(angular operator + A) Z| / max |Z| over an interior mesh. Derivatives
/// are analytic. `sep_const` overrides the sector's separation constant.
double angular_residual(const AngularState& state, const AngularMesh& mesh = {});
double angular_residual(const AngularState& state, const AngularMesh& mesh, double sep_const);

} // namespace su11
