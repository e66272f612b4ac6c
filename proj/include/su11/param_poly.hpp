#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace su11 {

using Rational = mpq_class;

/// Polynomial in the two commuting indeterminates J and K with exact rational
/// coefficients. Zero coefficients are never stored, so equality is map
/// equality.
class ParamPoly {
public:
    /// (power of J, power of K)
    using Exponents = std::pair<int, int>;
    using TermMap = std::map<Exponents, Rational>;

    ParamPoly() = default;
    ParamPoly(const Rational& constant);
    ParamPoly(long constant) : ParamPoly(Rational(constant)) {}
    ParamPoly(int constant) : ParamPoly(Rational(constant)) {}

    static ParamPoly monomial(const Rational& coeff, int jpow, int kpow);
    static ParamPoly J() { return monomial(1, 1, 0); }
    static ParamPoly K() { return monomial(1, 0, 1); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// The value when the polynomial has no J or K dependence.
    std::optional<Rational> constant_value() const;
    Rational coefficient(int jpow, int kpow) const;

    ParamPoly& operator+=(const ParamPoly& rhs);
    ParamPoly& operator-=(const ParamPoly& rhs);
    ParamPoly& operator*=(const ParamPoly& rhs);
    ParamPoly operator-() const;

    friend ParamPoly operator+(ParamPoly lhs, const ParamPoly& rhs) { return lhs += rhs; }
    friend ParamPoly operator-(ParamPoly lhs, const ParamPoly& rhs) { return lhs -= rhs; }
    friend ParamPoly operator*(ParamPoly lhs, const ParamPoly& rhs) { return lhs *= rhs; }
    friend bool operator==(const ParamPoly& lhs, const ParamPoly& rhs) { return lhs.terms_ == rhs.terms_; }

    double evaluate(double jval, double kval) const;

    /// Highest powers first, e.g. "(1/2)J^2 + (1/2)J", "-2K", "-J^2 - J + K^2 + K".
    std::string to_string() const;

private:
    void add_term(const Exponents& e, const Rational& c);
    TermMap terms_;
};

/// Rational square root when both numerator and denominator are perfect squares.
std::optional<Rational> exact_sqrt(const Rational& value);

} // namespace su11
