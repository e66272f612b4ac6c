#include "su11/operator_algebra.hpp"

#include <algorithm>
#include <tuple>

namespace su11 {

namespace {

struct RawTerm {
    Rational coeff;
    int xpow;
    int dorder;
};

/// D^order ∘ x^p via the single-step rewrite D∘x^p = x^p∘D + p x^(p-1):
/// D^b∘x^p = (D^(b-1)∘x^p)∘D + p (D^(b-1)∘x^(p-1)).
std::vector<RawTerm> derivative_past_power(int order, int p)
{
    if (order == 0 || p == 0)
        return {{Rational(1), p, order}};
    std::vector<RawTerm> out;
    for (auto t : derivative_past_power(order - 1, p)) {
        t.dorder += 1;
        out.push_back(std::move(t));
    }
    for (auto t : derivative_past_power(order - 1, p - 1)) {
        t.coeff *= p;
        out.push_back(std::move(t));
    }
    return out;
}

/// k (k-1) ... (k-n+1)
Rational falling_factorial(int k, int n)
{
    Rational out(1);
    for (int i = 0; i < n; ++i)
        out *= (k - i);
    return out;
}

std::string term_text(const OpKey& key, const ParamPoly& coeff)
{
    std::vector<std::string> parts;
    const bool unit = coeff == ParamPoly(1);
    if (!unit)
        parts.push_back("(" + coeff.to_string() + ")");
    if (key.xpow == 1)
        parts.push_back("x");
    else if (key.xpow != 0)
        parts.push_back("x^" + std::to_string(key.xpow));
    if (key.dorder == 1)
        parts.push_back("D");
    else if (key.dorder > 1)
        parts.push_back("D^" + std::to_string(key.dorder));
    if (parts.empty())
        return "1";
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
        out += " " + parts[i];
    return out;
}

} // namespace

NormalOrderedOperator NormalOrderedOperator::term(const ParamPoly& coeff, int xpow, int dorder)
{
    NormalOrderedOperator op;
    op.add_term({dorder, xpow}, coeff);
    return op;
}

void NormalOrderedOperator::add_term(const OpKey& key, const ParamPoly& coeff)
{
    if (coeff.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (inserted)
        return;
    it->second += coeff;
    if (it->second.is_zero())
        terms_.erase(it);
}

ParamPoly NormalOrderedOperator::coefficient(int xpow, int dorder) const
{
    auto it = terms_.find({dorder, xpow});
    return it == terms_.end() ? ParamPoly() : it->second;
}

int NormalOrderedOperator::max_dorder() const
{
    return terms_.empty() ? 0 : terms_.rbegin()->first.dorder;
}

NormalOrderedOperator& NormalOrderedOperator::operator+=(const NormalOrderedOperator& rhs)
{
    for (const auto& [k, c] : rhs.terms_)
        add_term(k, c);
    return *this;
}

NormalOrderedOperator& NormalOrderedOperator::operator-=(const NormalOrderedOperator& rhs)
{
    for (const auto& [k, c] : rhs.terms_)
        add_term(k, -c);
    return *this;
}

NormalOrderedOperator NormalOrderedOperator::operator-() const
{
    NormalOrderedOperator out;
    for (const auto& [k, c] : terms_)
        out.terms_.emplace(k, -c);
    return out;
}

NormalOrderedOperator& NormalOrderedOperator::operator*=(const ParamPoly& scalar)
{
    NormalOrderedOperator out;
    for (const auto& [k, c] : terms_)
        out.add_term(k, c * scalar);
    terms_ = std::move(out.terms_);
    return *this;
}

std::string NormalOrderedOperator::to_string() const
{
    if (terms_.empty())
        return "0";
    std::vector<std::pair<OpKey, const ParamPoly*>> ordered;
    for (const auto& [k, c] : terms_)
        ordered.emplace_back(k, &c);
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) {
        return std::tie(r.first.dorder, l.first.xpow) < std::tie(l.first.dorder, r.first.xpow);
    });
    std::string out;
    for (const auto& [k, c] : ordered) {
        if (!out.empty())
            out += " + ";
        out += term_text(k, *c);
    }
    return out;
}

NormalOrderedOperator compose(const NormalOrderedOperator& lhs, const NormalOrderedOperator& rhs)
{
    NormalOrderedOperator out;
    for (const auto& [kl, cl] : lhs.terms()) {
        for (const auto& [kr, cr] : rhs.terms()) {
            const ParamPoly coeff = cl * cr;
            for (const auto& t : derivative_past_power(kl.dorder, kr.xpow))
                out += NormalOrderedOperator::term(coeff * ParamPoly(t.coeff), kl.xpow + t.xpow,
                                                   t.dorder + kr.dorder);
        }
    }
    return out;
}

NormalOrderedOperator commutator(const NormalOrderedOperator& lhs, const NormalOrderedOperator& rhs)
{
    return compose(lhs, rhs) - compose(rhs, lhs);
}

std::map<int, ParamPoly> monomial_action(const NormalOrderedOperator& op, int k)
{
    std::map<int, ParamPoly> out;
    for (const auto& [key, coeff] : op.terms()) {
        const Rational ff = falling_factorial(k, key.dorder);
        if (ff == 0)
            continue;
        const int power = k + key.xpow - key.dorder;
        auto& slot = out[power];
        slot += coeff * ParamPoly(ff);
        if (slot.is_zero())
            out.erase(power);
    }
    return out;
}

bool actions_equal(const NormalOrderedOperator& lhs, const NormalOrderedOperator& rhs, int kmin, int kmax)
{
    for (int k = kmin; k <= kmax; ++k)
        if (monomial_action(lhs, k) != monomial_action(rhs, k))
            return false;
    return true;
}

NormalOrderedOperator replace_K(const NormalOrderedOperator& op, const NormalOrderedOperator& replacement)
{
    NormalOrderedOperator out;
    for (const auto& [key, coeff] : op.terms()) {
        const auto tail = NormalOrderedOperator::term(1, key.xpow, key.dorder);
        for (const auto& [exps, c] : coeff.terms()) {
            NormalOrderedOperator head = NormalOrderedOperator::term(ParamPoly::monomial(c, exps.first, 0), 0, 0);
            for (int i = 0; i < exps.second; ++i)
                head = compose(head, replacement);
            out += compose(head, tail);
        }
    }
    return out;
}

NormalOrderedOperator build_Ln()
{
    using Op = NormalOrderedOperator;
    return Op::term(-1, 2, 2) + Op::term(ParamPoly(-2) * ParamPoly::K(), 1, 0) + Op::term(1, 2, 0);
}

NormalOrderedOperator build_Tpm_n(Sign sign)
{
    using Op = NormalOrderedOperator;
    return Op::term(-sign_value(sign), 1, 1) + Op::x_power(1) + Op::term(-ParamPoly::K(), 0, 0);
}

NormalOrderedOperator build_T3()
{
    using Op = NormalOrderedOperator;
    const ParamPoly half(Rational(1, 2));
    const ParamPoly jj = ParamPoly::J() * (ParamPoly::J() + ParamPoly(1));
    return Op::term(-half, 1, 2) + Op::term(half, 1, 0) + Op::term(half * jj, -1, 0);
}

NormalOrderedOperator build_Tpm(Sign sign)
{
    using Op = NormalOrderedOperator;
    return Op::term(-sign_value(sign), 1, 1) + Op::x_power(1) - build_T3();
}

NormalOrderedOperator casimir(Sign variant)
{
    const auto t3 = build_T3();
    const auto tp = build_Tpm(Sign::Plus);
    const auto tm = build_Tpm(Sign::Minus);
    const auto t3sq = compose(t3, t3);
    if (variant == Sign::Plus)
        return -compose(tp, tm) + t3sq - t3;
    return -compose(tm, tp) + t3sq + t3;
}

Generators Generators::standard()
{
    return {build_Ln(), build_Tpm_n(Sign::Plus), build_Tpm_n(Sign::Minus),
            build_T3(), build_Tpm(Sign::Plus),   build_Tpm(Sign::Minus)};
}

LaurentPoly apply_action(const NormalOrderedOperator& op, const LaurentPoly& poly)
{
    LaurentPoly out;
    for (const auto& [power, coeff] : poly) {
        for (const auto& [p, c] : monomial_action(op, power)) {
            auto& slot = out[p];
            slot += coeff * c;
            if (slot.is_zero())
                out.erase(p);
        }
    }
    return out;
}

NormalOrderedOperator expand(const OperatorExpression& expr)
{
    NormalOrderedOperator out;
    for (const auto& term : expr) {
        auto product = NormalOrderedOperator::identity();
        for (const auto& f : term.factors)
            product = compose(product, f);
        out += product * term.coeff;
    }
    return out;
}

LaurentPoly expression_action(const OperatorExpression& expr, int k)
{
    LaurentPoly out;
    for (const auto& term : expr) {
        LaurentPoly image{{k, ParamPoly(1)}};
        for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it)
            image = apply_action(*it, image);
        for (const auto& [p, c] : image) {
            auto& slot = out[p];
            slot += term.coeff * c;
            if (slot.is_zero())
                out.erase(p);
        }
    }
    return out;
}

bool action_vanishes(const IdentityCheck& check, int kmin, int kmax)
{
    for (int k = kmin; k <= kmax; ++k)
        if (!expression_action(check.expression, k).empty())
            return false;
    return true;
}

namespace {

IdentityCheck make_check(std::string name, OperatorExpression expr)
{
    auto remainder = expand(expr);
    return {std::move(name), std::move(expr), std::move(remainder)};
}

} // namespace

std::vector<IdentityCheck> su11_identities(const Generators& g)
{
    using Op = NormalOrderedOperator;
    const ParamPoly J = ParamPoly::J();
    const ParamPoly K = ParamPoly::K();
    const ParamPoly one(1);
    const Op id = Op::identity();

    std::vector<IdentityCheck> out;
    out.push_back(make_check("[T+,T-] + 2 T3", {{1, {g.Tp, g.Tm}}, {-1, {g.Tm, g.Tp}}, {2, {g.T3}}}));
    out.push_back(make_check("[T+,T3] + T+", {{1, {g.Tp, g.T3}}, {-1, {g.T3, g.Tp}}, {1, {g.Tp}}}));
    out.push_back(make_check("[T-,T3] - T-", {{1, {g.Tm, g.T3}}, {-1, {g.T3, g.Tm}}, {-1, {g.Tm}}}));
    out.push_back(make_check("(T-^n - 1) T+^n - Ln - K(K+1)",
                             {{1, {g.Tm_n - id, g.Tp_n}}, {-1, {g.Ln}}, {-(K * (K + one)), {}}}));
    out.push_back(make_check("(T+^n + 1) T-^n - Ln - K(K-1)",
                             {{1, {g.Tp_n + id, g.Tm_n}}, {-1, {g.Ln}}, {-(K * (K - one)), {}}}));
    out.push_back(make_check("-T+ T- + T3^2 - T3 - J(J+1)",
                             {{-1, {g.Tp, g.Tm}}, {1, {g.T3, g.T3}}, {-1, {g.T3}}, {-(J * (J + one)), {}}}));
    return out;
}

std::vector<IdentityCheck> definitional_identities(const Generators& g)
{
    return {
        make_check("T+ - T+^n[K -> T3]", {{1, {g.Tp}}, {-1, {replace_K(g.Tp_n, g.T3)}}}),
        make_check("T- - T-^n[K -> T3]", {{1, {g.Tm}}, {-1, {replace_K(g.Tm_n, g.T3)}}}),
    };
}

NormalOrderedOperator expand_ansatz(const ParamPoly& a, const ParamPoly& b, const ParamPoly& c,
                                    const ParamPoly& f)
{
    using Op = NormalOrderedOperator;
    const Op left = Op::term(1, 1, 1) + Op::term(a, 1, 0) + Op::term(b, 0, 0);
    const Op right = Op::term(-1, 1, 1) + Op::term(c, 1, 0) + Op::term(f, 0, 0);
    return compose(left, right);
}

std::vector<FactorizationSolution> solve_schrodinger_ansatz(const NormalOrderedOperator& target)
{
    const ParamPoly J = ParamPoly::J();
    return solve_schrodinger_ansatz(target, -(J * (J + ParamPoly(1))));
}

std::vector<FactorizationSolution> solve_schrodinger_ansatz(const NormalOrderedOperator& target,
                                                            const ParamPoly& eigenvalue)
{
    using Reason = NoFactorization::Reason;
    // (xD + a x + b)(-xD + c x + f)
    //   = -x^2 D^2 + (c - a) x^2 D + (f - b - 1) x D + a c x^2 + (c + a f + b c) x + b f
    static const std::vector<OpKey> allowed = {{2, 2}, {1, 2}, {1, 1}, {0, 2}, {0, 1}, {0, 0}};
    for (const auto& [key, coeff] : target.terms()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw NoFactorization(Reason::ShapeMismatch,
                                  "target term " + NormalOrderedOperator::term(coeff, key.xpow, key.dorder).to_string() +
                                      " is outside the span of the first-order ansatz");
    }
    if (target.coefficient(2, 2) != ParamPoly(-1))
        throw NoFactorization(Reason::ShapeMismatch, "target must have x^2 D^2 coefficient -1");

    const auto t21 = target.coefficient(2, 1).constant_value();
    const auto t20 = target.coefficient(2, 0).constant_value();
    if (!t21 || !t20)
        throw NoFactorization(Reason::IrrationalRoots,
                              "x^2 and x^2 D coefficients must be rational constants");
    const ParamPoly t11 = target.coefficient(1, 1);
    const ParamPoly t10 = target.coefficient(1, 0);
    const ParamPoly t00 = target.coefficient(0, 0);

    // a^2 + t21 a - t20 = 0, c = a + t21
    const Rational disc = (*t21) * (*t21) + 4 * (*t20);
    const auto root = exact_sqrt(disc);
    if (!root)
        throw NoFactorization(Reason::IrrationalRoots,
                              "a^2 + (" + t21->get_str() + ") a - (" + t20->get_str() +
                                  ") = 0 has no rational root");
    std::vector<Rational> roots;
    roots.push_back(Rational((-(*t21) + *root) / 2));
    if (*root != 0)
        roots.push_back(Rational((-(*t21) - *root) / 2));

    std::vector<FactorizationSolution> out;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const Rational a = roots[i];
        const Rational c = a + *t21;
        // b (a + c) = t10 - c - a (1 + t11)
        const ParamPoly rhs = t10 - ParamPoly(c) - ParamPoly(a) * (ParamPoly(1) + t11);
        const Rational sum = a + c;
        if (sum == 0) {
            if (rhs.is_zero())
                throw NoFactorization(Reason::Underdetermined,
                                      "branch a = " + a.get_str() + " leaves b and f unconstrained");
            continue;
        }
        FactorizationSolution sol;
        sol.a = ParamPoly(a);
        sol.c = ParamPoly(c);
        sol.b = rhs * ParamPoly(Rational(1 / sum));
        sol.f = sol.b + ParamPoly(1) + t11;
        sol.shift = sol.b * sol.f - t00;
        sol.g = sol.shift + eigenvalue;
        sol.branch = i == 0 ? Sign::Plus : Sign::Minus;
        out.push_back(std::move(sol));
    }
    if (out.empty())
        throw NoFactorization(Reason::Inconsistent, "coefficient matching is inconsistent for every branch");
    return out;
}

int NumericOperator::max_dorder() const
{
    int out = 0;
    for (const auto& t : terms)
        out = std::max(out, t.dorder);
    return out;
}

NumericOperator substitute(const NormalOrderedOperator& op, double jval, double kval)
{
    NumericOperator out;
    for (const auto& [key, coeff] : op.terms()) {
        const double value = coeff.evaluate(jval, kval);
        if (value != 0.0)
            out.terms.push_back({key.xpow, key.dorder, value});
    }
    return out;
}

} // namespace su11
