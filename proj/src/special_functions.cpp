#include "su11/special_functions.hpp"

#include "su11/errors.hpp"

#include <cmath>
#include <string>

namespace su11 {

namespace {

void check_jacobi(const JacobiParams& p, int degree_cap)
{
    if (!(p.a > -1.0) || !(p.b > -1.0))
        throw ParamOutOfRange("Jacobi parameters must satisfy a > -1 and b > -1");
    if (p.degree < 0)
        throw DegreeCapExceeded("Jacobi degree must be non-negative");
    if (p.degree > degree_cap)
        throw DegreeCapExceeded("Jacobi degree " + std::to_string(p.degree) +
                                " exceeds the cap " + std::to_string(degree_cap));
}

/// Running sum with Neumaier's compensation term.
class CompensatedSum {
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace

double jacobi(const JacobiParams& p, double z, int degree_cap)
{
    check_jacobi(p, degree_cap);
    const double a = p.a;
    const double b = p.b;
    if (p.degree == 0)
        return 1.0;
    double prev = 1.0;
    double curr = (a + 1.0) + 0.5 * (a + b + 2.0) * (z - 1.0);
    for (int n = 2; n <= p.degree; ++n) {
        const double nn = n;
        const double s = 2.0 * nn + a + b;
        const double c0 = 2.0 * nn * (nn + a + b) * (s - 2.0);
        const double c1 = (s - 1.0) * (s * (s - 2.0) * z + a * a - b * b);
        const double c2 = 2.0 * (nn + a - 1.0) * (nn + b - 1.0) * s;
        const double next = (c1 * curr - c2 * prev) / c0;
        prev = curr;
        curr = next;
    }
    return curr;
}

double jacobi_deriv(const JacobiParams& p, double z, int degree_cap)
{
    return jacobi_deriv_n(p, 1, z, degree_cap);
}

double jacobi_deriv_n(const JacobiParams& p, int order, double z, int degree_cap)
{
    check_jacobi(p, degree_cap);
    if (order < 0)
        throw ParamOutOfRange("derivative order must be non-negative");
    if (order > p.degree)
        return 0.0;
    double factor = 1.0;
    for (int i = 0; i < order; ++i)
        factor *= 0.5 * (p.degree + p.a + p.b + 1.0 + i);
    return factor * jacobi({p.degree - order, p.a + order, p.b + order}, z, degree_cap);
}

double kummer_terminating(const KummerParams& p, double z)
{
    if (!(p.bparam > 0.0))
        throw ParamOutOfRange("Kummer parameter b must be positive");
    if (p.k < 0)
        throw ParamOutOfRange("Kummer order k must be non-negative");
    CompensatedSum sum;
    double term = 1.0;
    sum.add(term);
    for (int i = 0; i < p.k; ++i) {
        // ratio of consecutive terms: (-k + i) z / ((b + i)(i + 1))
        term *= (static_cast<double>(i - p.k) * z) / ((p.bparam + i) * (i + 1.0));
        sum.add(term);
    }
    return sum.value();
}

double kummer_terminating_deriv(const KummerParams& p, int order, double z)
{
    if (order < 0)
        throw ParamOutOfRange("derivative order must be non-negative");
    if (!(p.bparam > 0.0))
        throw ParamOutOfRange("Kummer parameter b must be positive");
    if (order > p.k)
        return 0.0;
    double factor = 1.0;
    for (int i = 0; i < order; ++i)
        factor *= static_cast<double>(i - p.k) / (p.bparam + i);
    return factor * kummer_terminating({p.k - order, p.bparam + order}, z);
}

} // namespace su11
