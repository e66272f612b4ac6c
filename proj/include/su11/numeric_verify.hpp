#pragma once

#include "su11/analytic_states.hpp"
#include "su11/operator_algebra.hpp"
#include "su11/quantum_numbers.hpp"
#include "su11/report.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace su11 {

/// Uniform interior nodes r_i = (i+1) h, h = rmax / (npoints + 1). Both
/// endpoints are excluded (Dirichlet).
class RadialGrid {
public:
    /// Throws DomainError unless rmax > 0 and npoints >= 16.
    RadialGrid(double rmax, int npoints);

    double rmax() const { return rmax_; }
    int npoints() const { return npoints_; }
    double h() const { return rmax_ / (npoints_ + 1); }
    double node(int i) const { return (i + 1) * h(); }
    std::vector<double> nodes() const;

private:
    double rmax_;
    int npoints_;
};

struct GridFunction {
    RadialGrid grid;
    std::vector<double> values;
};

/// f^(order)(x); order 0 is the function itself.
using DerivativeFn = std::function<double(int order, double x)>;

GridFunction sample(const RadialGrid& grid, const DerivativeFn& f);

/// Analytic application: returns the derivative-aware function of op f, using
/// D^q (x^a f^(b)) = sum_i C(q,i) a^(i falling) x^(a-i) f^(b+q-i).
DerivativeFn lift(const NumericOperator& op, DerivativeFn f);

/// sum coeff x^xpow f^(dorder) at each node. With `derivatives` the values come
/// from the callbacks; otherwise from 4th-order finite differences (5-point
/// stencils for orders 1-2, 7-point for 3-4), shifted one-sided at the ends.
/// Throws StencilUnsupported for dorder > 4 without callbacks.
GridFunction apply_operator(const NumericOperator& op, const GridFunction& f,
                            const std::optional<DerivativeFn>& derivatives = std::nullopt);

/// Discrete L2 inner product sum f_i g_i h.
double inner(const GridFunction& f, const GridFunction& g);
double norm(const GridFunction& f);

/// Lowest `count` eigenvalues of the finite-difference radial Hamiltonian
/// -χ''/2 - χ/r + J(J+1)/(2r^2) χ on the grid, by Sturm-sequence bisection.
/// Throws GridTooCoarse, ConvergenceFailure, DomainError (count > npoints or J < 0).
std::vector<double> eig_oracle(double bigJ, const RadialGrid& grid, int count);

/// 12 (n_max + (δ1+δ2)/2)^2 for the first `levels` levels of the sector.
double default_oracle_rmax(const SectorLabels& sector, int levels);

/// x grid over (0, 10 + 4 K_max] for the sector's levels up to n_max.
RadialGrid default_state_grid(const SectorLabels& sector, HalfInt n_max, int npoints = 4000);

DerivativeFn chi_function(const RadialState& state);

inline constexpr double kDefaultStateTolerance = 1e-8;
inline constexpr double kDefaultLadderTolerance = 1e-7;
inline constexpr double kDefaultOdeTolerance = 1e-9;
inline constexpr double kDefaultSpectrumTolerance = 1e-4;

/// T± χ_n against χ_{n±1} by cosine similarity; at the bottom of the tower the
/// lowering check reports ‖T- χ‖/‖χ‖ instead. Throws InvalidLevel.
VerificationReport ladder_check(const SectorLabels& sector, HalfInt n, Sign sign, const RadialGrid& grid,
                                std::optional<double> tolerance = std::nullopt);

/// ‖T3 χ - K χ‖/‖χ‖, together with T3 (T± χ) = (K ± 1) T± χ.
VerificationReport t3_eigen_check(const SectorLabels& sector, HalfInt n, const RadialGrid& grid,
                                  double tolerance = kDefaultStateTolerance);

/// |<T3>_{n+1} - <T3>_n - 1| with Rayleigh-quotient eigenvalues.
VerificationReport k_spacing_check(const SectorLabels& sector, HalfInt n, const RadialGrid& grid,
                                   double tolerance = kDefaultStateTolerance);

/// ‖(-T+ T- + T3^2 - T3) χ - J(J+1) χ‖/‖χ‖ with nested analytic applications.
VerificationReport casimir_check(const SectorLabels& sector, HalfInt n, const RadialGrid& grid,
                                 double tolerance = kDefaultStateTolerance);

/// max |Ln χ + J(J+1) χ| / max |χ| on the grid nodes inside [xmin, xmax].
VerificationReport radial_ode_check(const SectorLabels& sector, HalfInt n, const RadialGrid& grid,
                                    double xmin = 0.01, double xmax = 40.0,
                                    double tolerance = kDefaultOdeTolerance);

/// Angular equation residual on a mesh, as a report.
VerificationReport angular_check(const SectorLabels& sector, const AngularMesh& mesh = {},
                                 double tolerance = 1e-9);

/// Relative error of the oracle eigenvalues against the closed-form spectrum,
/// one report per level. Accuracy failures come back as failed reports.
std::vector<VerificationReport> spectrum_cross_check(const MonopoleParams& params, HalfInt m, HalfInt j,
                                                     int levels, const RadialGrid& grid,
                                                     double tolerance = kDefaultSpectrumTolerance);

} // namespace su11
