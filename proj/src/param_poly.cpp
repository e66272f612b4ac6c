#include "su11/param_poly.hpp"

#include <cmath>

namespace su11 {

ParamPoly::ParamPoly(const Rational& constant)
{
    add_term({0, 0}, constant);
}

ParamPoly ParamPoly::monomial(const Rational& coeff, int jpow, int kpow)
{
    ParamPoly p;
    p.add_term({jpow, kpow}, coeff);
    return p;
}

void ParamPoly::add_term(const Exponents& e, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (inserted)
        return;
    it->second += c;
    if (it->second == 0)
        terms_.erase(it);
}

bool ParamPoly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{0, 0});
}

std::optional<Rational> ParamPoly::constant_value() const
{
    if (!is_constant())
        return std::nullopt;
    return coefficient(0, 0);
}

Rational ParamPoly::coefficient(int jpow, int kpow) const
{
    auto it = terms_.find({jpow, kpow});
    return it == terms_.end() ? Rational(0) : it->second;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& rhs)
{
    for (const auto& [e, c] : rhs.terms_)
        add_term(e, c);
    return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& rhs)
{
    for (const auto& [e, c] : rhs.terms_)
        add_term(e, -c);
    return *this;
}

ParamPoly& ParamPoly::operator*=(const ParamPoly& rhs)
{
    ParamPoly out;
    for (const auto& [el, cl] : terms_)
        for (const auto& [er, cr] : rhs.terms_)
            out.add_term({el.first + er.first, el.second + er.second}, Rational(cl * cr));
    terms_ = std::move(out.terms_);
    return *this;
}

ParamPoly ParamPoly::operator-() const
{
    ParamPoly out;
    for (const auto& [e, c] : terms_)
        out.terms_.emplace(e, Rational(-c));
    return out;
}

double ParamPoly::evaluate(double jval, double kval) const
{
    double sum = 0.0;
    for (const auto& [e, c] : terms_)
        sum += c.get_d() * std::pow(jval, e.first) * std::pow(kval, e.second);
    return sum;
}

namespace {

std::string monomial_text(int jpow, int kpow)
{
    std::string out;
    auto factor = [&out](const char* sym, int pow) {
        if (pow == 0)
            return;
        out += sym;
        if (pow != 1)
            out += "^" + std::to_string(pow);
    };
    factor("J", jpow);
    factor("K", kpow);
    return out;
}

} // namespace

std::string ParamPoly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        const bool negative = c < 0;
        const Rational mag = abs(c);
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        const std::string mono = monomial_text(e.first, e.second);
        std::string coeff;
        if (mag.get_den() == 1)
            coeff = mag.get_num().get_str();
        else
            coeff = "(" + mag.get_str() + ")";
        if (mono.empty())
            out += coeff;
        else if (mag == 1)
            out += mono;
        else
            out += coeff + mono;
    }
    return out;
}

std::optional<Rational> exact_sqrt(const Rational& value)
{
    if (value < 0)
        return std::nullopt;
    const mpz_class& num = value.get_num();
    const mpz_class& den = value.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational out(rn, rd);
    out.canonicalize();
    return out;
}

} // namespace su11
