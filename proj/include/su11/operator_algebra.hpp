#pragma once

#include "su11/errors.hpp"
#include "su11/param_poly.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace su11 {

/// Position of a term x^xpow D^dorder. Ordered lexicographically by
/// (dorder, xpow).
struct OpKey {
    int dorder = 0;
    int xpow = 0;
    auto operator<=>(const OpKey&) const = default;
};

/// One-variable differential operator in normal order: a finite sum of
/// coeff(J,K) x^xpow D^dorder with every D to the right of every x. Powers of x
/// may be negative.
class NormalOrderedOperator {
public:
    using TermMap = std::map<OpKey, ParamPoly>;

    NormalOrderedOperator() = default;

    static NormalOrderedOperator identity() { return term(1, 0, 0); }
    static NormalOrderedOperator term(const ParamPoly& coeff, int xpow, int dorder);
    static NormalOrderedOperator x_power(int xpow) { return term(1, xpow, 0); }
    static NormalOrderedOperator derivative(int order = 1) { return term(1, 0, order); }

    const TermMap& terms() const { return terms_; }
    ParamPoly coefficient(int xpow, int dorder) const;
    bool is_zero() const { return terms_.empty(); }
    int max_dorder() const;

    NormalOrderedOperator& operator+=(const NormalOrderedOperator& rhs);
    NormalOrderedOperator& operator-=(const NormalOrderedOperator& rhs);
    NormalOrderedOperator operator-() const;
    /// Multiplication by a (J,K)-dependent scalar.
    NormalOrderedOperator& operator*=(const ParamPoly& scalar);

    friend NormalOrderedOperator operator+(NormalOrderedOperator l, const NormalOrderedOperator& r) { return l += r; }
    friend NormalOrderedOperator operator-(NormalOrderedOperator l, const NormalOrderedOperator& r) { return l -= r; }
    friend NormalOrderedOperator operator*(NormalOrderedOperator l, const ParamPoly& s) { return l *= s; }
    friend NormalOrderedOperator operator*(const ParamPoly& s, NormalOrderedOperator r) { return r *= s; }
    friend bool operator==(const NormalOrderedOperator& l, const NormalOrderedOperator& r) { return l.terms_ == r.terms_; }

    /// Rendering from the highest derivative order down, e.g.
    /// "(-1) x^2 D^2 + (-2K) x + x^2". The zero operator renders as "0".
    std::string to_string() const;

    /// Mutable access for fault-injection hooks in the verification driver.
    TermMap& mutable_terms() { return terms_; }

private:
    void add_term(const OpKey& key, const ParamPoly& coeff);
    TermMap terms_;
};

/// Operator product lhs∘rhs, normal ordered with D∘x^k = x^k∘D + k x^(k-1).
NormalOrderedOperator compose(const NormalOrderedOperator& lhs, const NormalOrderedOperator& rhs);

inline NormalOrderedOperator operator*(const NormalOrderedOperator& l, const NormalOrderedOperator& r)
{
    return compose(l, r);
}

NormalOrderedOperator commutator(const NormalOrderedOperator& lhs, const NormalOrderedOperator& rhs);

/// Image of x^k: power -> coefficient, zero images dropped.
std::map<int, ParamPoly> monomial_action(const NormalOrderedOperator& op, int k);

/// Compares monomial images for every k in [kmin, kmax].
bool actions_equal(const NormalOrderedOperator& lhs, const NormalOrderedOperator& rhs, int kmin, int kmax);

/// Replaces each J^a K^b coefficient by J^a (replacement)^b acting from the left.
NormalOrderedOperator replace_K(const NormalOrderedOperator& op, const NormalOrderedOperator& replacement);

enum class Sign { Plus, Minus };

inline int sign_value(Sign s) { return s == Sign::Plus ? 1 : -1; }
inline const char* sign_text(Sign s) { return s == Sign::Plus ? "+" : "-"; }

// Generators of the radial realization; J and K stay symbolic.

/// -x^2 D^2 - 2K x + x^2
NormalOrderedOperator build_Ln();
/// ∓ x D + x - K
NormalOrderedOperator build_Tpm_n(Sign sign);
/// (1/2)(-x D^2 + x + J(J+1)/x)
NormalOrderedOperator build_T3();
/// ∓ x D + x - T3
NormalOrderedOperator build_Tpm(Sign sign);

/// -T+ T- + T3^2 - T3 for Sign::Plus; the mirror form -T- T+ + T3^2 + T3 for Sign::Minus.
NormalOrderedOperator casimir(Sign variant = Sign::Plus);

/// The full generator set, held by value so a verification run can tamper with it.
struct Generators {
    NormalOrderedOperator Ln;
    NormalOrderedOperator Tp_n;
    NormalOrderedOperator Tm_n;
    NormalOrderedOperator T3;
    NormalOrderedOperator Tp;
    NormalOrderedOperator Tm;

    static Generators standard();
};

/// Laurent polynomial in x: power -> coefficient.
using LaurentPoly = std::map<int, ParamPoly>;

/// Image of a Laurent polynomial under op, term by term through monomial_action.
LaurentPoly apply_action(const NormalOrderedOperator& op, const LaurentPoly& poly);

/// coeff * (factors[0] ∘ factors[1] ∘ ...); no factors means the identity.
struct ProductTerm {
    ParamPoly coeff;
    std::vector<NormalOrderedOperator> factors;
};

/// Unexpanded sum of operator products.
using OperatorExpression = std::vector<ProductTerm>;

/// Normal form of the expression, through compose.
NormalOrderedOperator expand(const OperatorExpression& expr);

/// Image of x^k under the expression, applying each factor's monomial action
/// right to left. Independent of compose.
LaurentPoly expression_action(const OperatorExpression& expr, int k);

struct IdentityCheck {
    std::string name;
    OperatorExpression expression;
    NormalOrderedOperator remainder; // expand(expression)
    bool holds() const { return remainder.is_zero(); }
};

/// True when expression_action vanishes for every k in [kmin, kmax].
bool action_vanishes(const IdentityCheck& check, int kmin, int kmax);

/// The six su(1,1)/factorization identities, each expressed as a remainder that
/// must vanish identically.
std::vector<IdentityCheck> su11_identities(const Generators& g);

/// T± - (T±^n with K replaced by T3), for both signs.
std::vector<IdentityCheck> definitional_identities(const Generators& g);

// Schrödinger factorization ansatz (x D + a x + b)(-x D + c x + f) = target + shift.

class NoFactorization : public Error {
public:
    enum class Reason { ShapeMismatch, IrrationalRoots, Underdetermined, Inconsistent };
    NoFactorization(Reason reason, const std::string& what) : Error(what), reason_(reason) {}
    Reason reason() const { return reason_; }

private:
    Reason reason_;
};

struct FactorizationSolution {
    ParamPoly a;
    ParamPoly b;
    ParamPoly c;
    ParamPoly f;
    /// Constant in (..)(..)χ = g χ, i.e. shift plus the eigenvalue of target on χ.
    ParamPoly g;
    /// Operator-level constant: (..)(..) = target + shift.
    ParamPoly shift;
    Sign branch = Sign::Plus;
};

/// (x D + a x + b)(-x D + c x + f), normal ordered.
NormalOrderedOperator expand_ansatz(const ParamPoly& a, const ParamPoly& b, const ParamPoly& c,
                                    const ParamPoly& f);

/// Solves the factorization ansatz against `target`, where target χ =
/// eigenvalue χ. The x^2 and x^2 D coefficients of the target must be rational
/// constants. Branches are ordered by decreasing a; Sign::Plus labels the
/// larger root. Throws NoFactorization.
std::vector<FactorizationSolution> solve_schrodinger_ansatz(const NormalOrderedOperator& target,
                                                            const ParamPoly& eigenvalue);

/// Default eigenvalue side -J(J+1).
std::vector<FactorizationSolution> solve_schrodinger_ansatz(const NormalOrderedOperator& target);

// Bridge to floating point.

struct NumericTerm {
    int xpow = 0;
    int dorder = 0;
    double coeff = 0.0;
};

struct NumericOperator {
    std::vector<NumericTerm> terms;
    int max_dorder() const;
};

NumericOperator substitute(const NormalOrderedOperator& op, double jval, double kval);

} // namespace su11
