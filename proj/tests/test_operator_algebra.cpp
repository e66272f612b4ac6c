#include <doctest.h>

#include "random_operators.hpp"
#include "su11/operator_algebra.hpp"

#include <random>

using namespace su11;
using Op = NormalOrderedOperator;
using su11::testing::random_operator;

namespace {

const ParamPoly J = ParamPoly::J();
const ParamPoly K = ParamPoly::K();
const ParamPoly one(1);

LaurentPoly mono(int power, const ParamPoly& c) { return {{power, c}}; }

} // namespace

TEST_CASE("compose obeys the Weyl relation")
{
    const Op D = Op::derivative();
    const Op x = Op::x_power(1);
    CHECK(commutator(D, x) == Op::identity());

    const Op xD = compose(x, D);
    CHECK(compose(xD, xD) == Op::term(1, 2, 2) + Op::term(1, 1, 1));
    // oracle: both sides send x^k to k^2 x^k
    for (int k = -4; k <= 12; ++k)
        CHECK(monomial_action(compose(xD, xD), k) == (k == 0 ? LaurentPoly{} : mono(k, ParamPoly(k * k))));

    CHECK(compose(D, Op::x_power(-1)) == Op::term(1, -1, 1) + Op::term(-1, -2, 0));
    for (int k = -4; k <= 12; ++k) {
        const auto expected = (k == 1) ? LaurentPoly{} : mono(k - 2, ParamPoly(k - 1));
        CHECK(monomial_action(compose(D, Op::x_power(-1)), k) == expected);
    }
}

TEST_CASE("monomial action basics")
{
    for (int k = -4; k <= 12; ++k) {
        CHECK(monomial_action(Op::identity(), k) == mono(k, one));
        const auto euler = monomial_action(compose(Op::x_power(1), Op::derivative()), k);
        CHECK(euler == (k == 0 ? LaurentPoly{} : mono(k, ParamPoly(k))));
    }
    // Ln x^2 = -2 x^2 - 2K x^3 + x^4
    const LaurentPoly expected{{2, ParamPoly(-2)}, {3, ParamPoly(-2) * K}, {4, one}};
    CHECK(monomial_action(build_Ln(), 2) == expected);
    // general k: -k(k-1) x^k - 2K x^(k+1) + x^(k+2)
    for (int k = -4; k <= 12; ++k) {
        LaurentPoly general{{k + 1, ParamPoly(-2) * K}, {k + 2, one}};
        if (k * (k - 1) != 0)
            general[k] = ParamPoly(-k * (k - 1));
        CHECK(monomial_action(build_Ln(), k) == general);
    }
}

TEST_CASE("generator coefficients")
{
    const Op ln = build_Ln();
    CHECK(ln.coefficient(2, 2) == ParamPoly(-1));
    CHECK(ln.coefficient(1, 0) == ParamPoly(-2) * K);
    CHECK(ln.coefficient(2, 0) == one);
    CHECK(ln.terms().size() == 3);
    CHECK(ln.to_string() == "(-1) x^2 D^2 + (-2K) x + x^2");

    const Op t3 = build_T3();
    CHECK(t3.coefficient(-1, 0) == ParamPoly(Rational(1, 2)) * J * (J + one));
    CHECK(t3.coefficient(1, 2) == ParamPoly(Rational(-1, 2)));
    CHECK(t3.coefficient(1, 0) == ParamPoly(Rational(1, 2)));
    CHECK(t3.to_string() == "(-(1/2)) x D^2 + ((1/2)J^2 + (1/2)J) x^-1 + ((1/2)) x");

    CHECK(build_Tpm(Sign::Plus) == Op::term(-1, 1, 1) + Op::x_power(1) - build_T3());
    CHECK(build_Tpm(Sign::Minus) == Op::term(1, 1, 1) + Op::x_power(1) - build_T3());
    CHECK(build_Tpm_n(Sign::Plus) == Op::term(-1, 1, 1) + Op::x_power(1) - Op::identity() * K);
    CHECK(build_Tpm_n(Sign::Minus) == Op::term(1, 1, 1) + Op::x_power(1) - Op::identity() * K);
    // T± is second order and inherits the 1/x term
    CHECK(build_Tpm(Sign::Plus).max_dorder() == 2);
    CHECK_FALSE(build_Tpm(Sign::Minus).coefficient(-1, 0).is_zero());
}

TEST_CASE("su(1,1) commutation relations hold exactly")
{
    const Op tp = build_Tpm(Sign::Plus);
    const Op tm = build_Tpm(Sign::Minus);
    const Op t3 = build_T3();
    CHECK(commutator(tp, tm) == t3 * ParamPoly(-2));
    CHECK(commutator(tp, t3) == -tp);
    CHECK(commutator(tm, t3) == tm);
}

TEST_CASE("factorization identities hold exactly")
{
    const Op id = Op::identity();
    const Op ln = build_Ln();
    CHECK(compose(build_Tpm_n(Sign::Minus) - id, build_Tpm_n(Sign::Plus)) == ln + id * (K * (K + one)));
    CHECK(compose(build_Tpm_n(Sign::Plus) + id, build_Tpm_n(Sign::Minus)) == ln + id * (K * (K - one)));
}

TEST_CASE("casimir reduces to J(J+1)")
{
    const Op expected = Op::identity() * (J * (J + one));
    CHECK(casimir(Sign::Plus) == expected);
    CHECK(casimir(Sign::Minus) == expected);
    CHECK(casimir(Sign::Plus) == casimir(Sign::Minus));
    CHECK(casimir().max_dorder() == 0);
}

TEST_CASE("identity suite and its independent oracle")
{
    const auto gens = Generators::standard();
    const auto checks = su11_identities(gens);
    REQUIRE(checks.size() == 6);
    for (const auto& c : checks) {
        CAPTURE(c.name);
        CHECK(c.holds());
        CHECK(c.remainder.to_string() == "0");
        CHECK(action_vanishes(c, -4, 20));
    }
    for (const auto& c : definitional_identities(gens)) {
        CAPTURE(c.name);
        CHECK(c.holds());
        CHECK(action_vanishes(c, -4, 12));
    }
}

TEST_CASE("a corrupted generator is caught by both routes")
{
    auto gens = Generators::standard();
    auto& slot = gens.T3.mutable_terms().at(OpKey{0, 1});
    slot = -slot;
    const auto checks = su11_identities(gens);
    int failing = 0;
    for (const auto& c : checks) {
        if (!c.holds()) {
            ++failing;
            CHECK_FALSE(action_vanishes(c, -4, 12));
            CHECK(c.remainder.to_string() != "0");
        }
    }
    CHECK(failing > 0);
}

TEST_CASE("antisymmetry: [A, A] = 0")
{
    std::mt19937 rng(5);
    for (int i = 0; i < 100; ++i) {
        const Op a = random_operator(rng);
        CHECK(commutator(a, a).is_zero());
    }
}

TEST_CASE("property: ring axioms on canonical forms")
{
    std::mt19937 rng(17);
    for (int i = 0; i < 200; ++i) {
        const Op a = random_operator(rng);
        const Op b = random_operator(rng);
        const Op c = random_operator(rng);
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
        CHECK(compose(a, b + c) == compose(a, b) + compose(a, c));
        CHECK(compose(a + b, c) == compose(a, c) + compose(b, c));
        CHECK(compose(Op::identity(), a) == a);
        CHECK(compose(a, Op::identity()) == a);
        // Jacobi identity of the commutator bracket
        const Op jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                       commutator(c, commutator(a, b));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("property: canonical equality iff monomial-action equality")
{
    std::mt19937 rng(4242);
    std::bernoulli_distribution make_equal(0.5);
    int equal_pairs = 0;
    for (int i = 0; i < 1000; ++i) {
        const Op p = random_operator(rng);
        const Op q = random_operator(rng);
        const Op r = random_operator(rng);
        // lhs = p∘q + p∘r; rhs = p∘(q + r) or a perturbed variant
        const OperatorExpression lhs{{1, {p, q}}, {1, {p, r}}};
        OperatorExpression rhs{{1, {p, q + r}}};
        if (!make_equal(rng))
            rhs.push_back({1, {random_operator(rng)}});
        const bool canonical_equal = expand(lhs) == expand(rhs);
        bool action_equal = true;
        for (int k = -4; k <= 12 && action_equal; ++k)
            action_equal = expression_action(lhs, k) == expression_action(rhs, k);
        CHECK(canonical_equal == action_equal);
        equal_pairs += canonical_equal ? 1 : 0;
    }
    CHECK(equal_pairs > 300);
    CHECK(equal_pairs < 800);
}

TEST_CASE("ansatz recovers both sign branches for Ln")
{
    const auto sols = solve_schrodinger_ansatz(build_Ln());
    REQUIRE(sols.size() == 2);
    const auto& plus = sols[0];
    const auto& minus = sols[1];
    CHECK(plus.branch == Sign::Plus);
    CHECK(plus.a == one);
    CHECK(plus.c == one);
    CHECK(plus.b == -K - one);
    CHECK(plus.f == -K);
    CHECK(plus.g == K * (K + one) - J * (J + one));
    CHECK(minus.branch == Sign::Minus);
    CHECK(minus.a == ParamPoly(-1));
    CHECK(minus.c == ParamPoly(-1));
    CHECK(minus.b == K - one);
    CHECK(minus.f == K);
    CHECK(minus.g == K * (K - one) - J * (J + one));
    for (const auto& s : sols) {
        CHECK(s.f - one == s.b);
        // re-expansion reproduces Ln + shift exactly
        CHECK(expand_ansatz(s.a, s.b, s.c, s.f) == build_Ln() + Op::identity() * s.shift);
    }
    // the plus branch is (T-^n - 1) T+^n
    CHECK(expand_ansatz(plus.a, plus.b, plus.c, plus.f) ==
          compose(build_Tpm_n(Sign::Minus) - Op::identity(), build_Tpm_n(Sign::Plus)));
}

TEST_CASE("ansatz reports degenerate and unsolvable targets")
{
    using Reason = NoFactorization::Reason;
    auto reason_of = [](const Op& target) {
        try {
            solve_schrodinger_ansatz(target);
        } catch (const NoFactorization& e) {
            return e.reason();
        }
        FAIL("expected NoFactorization");
        return Reason::Inconsistent;
    };
    CHECK(reason_of(Op::term(-1, 2, 2)) == Reason::Underdetermined);
    CHECK(reason_of(build_Ln() + Op::x_power(3)) == Reason::ShapeMismatch);
    CHECK(reason_of(Op::term(1, 2, 2)) == Reason::ShapeMismatch);
    CHECK(reason_of(Op::term(-1, 2, 2) + Op::term(2, 2, 0)) == Reason::IrrationalRoots);
    CHECK(reason_of(Op::term(-1, 2, 2) + Op::term(K, 2, 0)) == Reason::IrrationalRoots);
    // a = c = 0 forces c + a f + b c = 0, so a nonzero x term is inconsistent
    CHECK(reason_of(Op::term(-1, 2, 2) + Op::x_power(1)) == Reason::Inconsistent);
}

TEST_CASE("ansatz solves a shifted target generically")
{
    // x^2 D coefficient 2 and x^2 coefficient 3: a^2 + 2a - 3 = 0, a in {1, -3}
    const Op target = Op::term(-1, 2, 2) + Op::term(2, 2, 1) + Op::term(3, 2, 0) + Op::term(K, 1, 0) +
                      Op::term(J, 1, 1) + Op::term(5, 0, 0);
    const auto sols = solve_schrodinger_ansatz(target, ParamPoly(0));
    REQUIRE(sols.size() == 2);
    for (const auto& s : sols)
        CHECK(expand_ansatz(s.a, s.b, s.c, s.f) == target + Op::identity() * s.shift);
}

TEST_CASE("substitute bridges to floating point")
{
    const auto t3 = substitute(build_T3(), 0.0, 7.0);
    for (const auto& t : t3.terms)
        CHECK(t.xpow != -1);
    CHECK(t3.terms.size() == 2);

    const auto ln = substitute(build_Ln(), 0.3, 1.0);
    bool found = false;
    for (const auto& t : ln.terms) {
        if (t.xpow == 1 && t.dorder == 0) {
            CHECK(t.coeff == -2.0);
            found = true;
        }
    }
    CHECK(found);

    const auto cas = substitute(casimir(), 1.5, 0.0);
    REQUIRE(cas.terms.size() == 1);
    CHECK(cas.terms[0].xpow == 0);
    CHECK(cas.terms[0].dorder == 0);
    CHECK(cas.terms[0].coeff == 3.75);
}
