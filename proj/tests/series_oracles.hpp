#pragma once

// Exact-arithmetic reference evaluations used only by tests. Doubles are
// dyadic rationals, so converting inputs to mpq_class loses nothing.

#include <gmpxx.h>

namespace su11::testing {

/// P^(a,b)_n(z) = (a+1)_n / n! * sum_k (-n)_k (n+a+b+1)_k / ((a+1)_k k!) ((1-z)/2)^k
inline mpq_class jacobi_series_exact(int n, const mpq_class& a, const mpq_class& b, const mpq_class& z)
{
    mpq_class prefactor = 1;
    for (int i = 0; i < n; ++i)
        prefactor *= (a + 1 + i) / mpq_class(i + 1);
    const mpq_class w = (1 - z) / 2;
    mpq_class term = 1;
    mpq_class sum = 1;
    for (int k = 0; k < n; ++k) {
        term *= mpq_class(k - n) * (n + a + b + 1 + k) / ((a + 1 + k) * (k + 1));
        term *= w;
        sum += term;
    }
    return prefactor * sum;
}

inline double jacobi_series(int n, double a, double b, double z)
{
    return jacobi_series_exact(n, mpq_class(a), mpq_class(b), mpq_class(z)).get_d();
}

/// F(-k, b; z) summed exactly.
inline mpq_class kummer_exact(int k, const mpq_class& b, const mpq_class& z)
{
    mpq_class term = 1;
    mpq_class sum = 1;
    for (int i = 0; i < k; ++i) {
        term *= mpq_class(i - k) * z / ((b + i) * (i + 1));
        sum += term;
    }
    return sum;
}

} // namespace su11::testing
