#pragma once

#include <cstdint>

namespace su11 {

inline constexpr int kDefaultJacobiDegreeCap = 200;

/// Parameters of P^(a,b)_degree.
struct JacobiParams {
    int degree = 0;
    double a = 0.0;
    double b = 0.0;
};

/// Parameters of the terminating Kummer function F(-k, bparam; z).
struct KummerParams {
    int k = 0;
    double bparam = 1.0;
};

/// Jacobi polynomial P^(a,b)_n(z) by the three-term recurrence in the degree.
/// Throws ParamOutOfRange if a <= -1 or b <= -1, DegreeCapExceeded if the
/// degree is negative or above `degree_cap`.
double jacobi(const JacobiParams& p, double z, int degree_cap = kDefaultJacobiDegreeCap);

/// d/dz P^(a,b)_n(z) = (n+a+b+1)/2 P^(a+1,b+1)_{n-1}(z).
double jacobi_deriv(const JacobiParams& p, double z, int degree_cap = kDefaultJacobiDegreeCap);

/// d^order/dz^order P^(a,b)_n(z).
double jacobi_deriv_n(const JacobiParams& p, int order, double z,
                      int degree_cap = kDefaultJacobiDegreeCap);

/// F(-k, b; z) = sum_{i=0}^{k} (-k)_i / ((b)_i i!) z^i, summed with Neumaier
/// compensation. Throws ParamOutOfRange if b <= 0 or k < 0.
double kummer_terminating(const KummerParams& p, double z);

/// d^order/dz^order F(-k, b; z) = (-k)_order / (b)_order F(-k+order, b+order; z).
double kummer_terminating_deriv(const KummerParams& p, int order, double z);

} // namespace su11
