#include "su11/quantum_numbers.hpp"

#include "su11/errors.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace su11 {

namespace {

std::int64_t parse_integer(std::string_view text)
{
    std::int64_t value = 0;
    auto first = text.data();
    auto last = text.data() + text.size();
    if (!text.empty() && text.front() == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last)
        throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    return value;
}

std::string invalid_msg(const MonopoleParams& p, HalfInt m, HalfInt j, const std::string& why)
{
    return "invalid quantum numbers (s=" + p.s.to_string() + ", m=" + m.to_string() +
           ", j=" + j.to_string() + "): " + why;
}

} // namespace

HalfInt HalfInt::parse(std::string_view text)
{
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_integer(text.substr(0, slash));
        auto den = parse_integer(text.substr(slash + 1));
        if (den == 1)
            return from_int(num);
        if (den == 2)
            return from_twice(num);
        throw std::invalid_argument("not a half-integer: '" + std::string(text) + "'");
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole_text = text.substr(0, dot);
        auto frac = text.substr(dot + 1);
        bool negative = !whole_text.empty() && whole_text.front() == '-';
        std::int64_t whole = 0;
        if (!whole_text.empty() && whole_text != "-" && whole_text != "+")
            whole = parse_integer(whole_text);
        while (!frac.empty() && frac.back() == '0')
            frac.remove_suffix(1);
        if (frac.find_first_not_of("0123456789") != std::string_view::npos)
            throw std::invalid_argument("not a half-integer: '" + std::string(text) + "'");
        std::int64_t twice = 2 * (whole < 0 ? -whole : whole);
        if (frac == "5")
            twice += 1;
        else if (!frac.empty())
            throw std::invalid_argument("not a half-integer: '" + std::string(text) + "'");
        return from_twice(negative ? -twice : twice);
    }
    return from_int(parse_integer(text));
}

std::string HalfInt::to_string() const
{
    if (is_integer())
        return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

std::string HalfInt::to_decimal() const
{
    if (is_integer())
        return std::to_string(twice_ / 2);
    std::string sign = twice_ < 0 ? "-" : "";
    std::int64_t mag = twice_ < 0 ? -twice_ : twice_;
    return sign + std::to_string(mag / 2) + ".5";
}

void MonopoleParams::validate() const
{
    if (!(std::isfinite(c1) && c1 >= 0.0))
        throw ParamOutOfRange("coupling c1 must be a finite non-negative number");
    if (!(std::isfinite(c2) && c2 >= 0.0))
        throw ParamOutOfRange("coupling c2 must be a finite non-negative number");
}

HalfInt min_j(const MonopoleParams& params, HalfInt m)
{
    if (!m.same_parity(params.s))
        throw InvalidQuantumNumbers("invalid quantum numbers (s=" + params.s.to_string() +
                                    ", m=" + m.to_string() +
                                    "): m must share the integer/half-integer parity of s");
    // (|m+s| + |m-s|)/2 == max(|m|, |s|)
    auto a = (m + params.s).abs();
    auto b = (m - params.s).abs();
    return HalfInt::from_twice((a.twice() + b.twice()) / 2);
}

SectorLabels make_sector(const MonopoleParams& params, HalfInt m, HalfInt j)
{
    params.validate();
    if (!m.same_parity(params.s) || !j.same_parity(params.s))
        throw InvalidQuantumNumbers(
            invalid_msg(params, m, j, "j and m must share the integer/half-integer parity of s"));
    if (m.abs() > j)
        throw InvalidQuantumNumbers(invalid_msg(params, m, j, "|m| must not exceed j"));
    const HalfInt mplus = min_j(params, m);
    if (j < mplus)
        throw InvalidQuantumNumbers(
            invalid_msg(params, m, j, "j >= m+ = " + mplus.to_string() + " is required"));
    if (!(j - mplus).is_integer())
        throw InvalidQuantumNumbers(invalid_msg(params, m, j, "j - m+ must be an integer"));

    SectorLabels out;
    out.params = params;
    out.m = m;
    out.j = j;
    out.mplus = mplus;
    const double ms = (m - params.s).value();
    const double mp = (m + params.s).value();
    out.m1 = std::sqrt(ms * ms + 4.0 * params.c1);
    out.m2 = std::sqrt(mp * mp + 4.0 * params.c2);
    out.delta1 = out.m1 - std::abs(ms);
    out.delta2 = out.m2 - std::abs(mp);
    out.bigJ = j.value() + out.shift();
    out.sep_const = out.bigJ * (out.bigJ + 1.0);
    return out;
}

bool is_valid_sector(const MonopoleParams& params, HalfInt m, HalfInt j)
{
    try {
        make_sector(params, m, j);
        return true;
    } catch (const InvalidQuantumNumbers&) {
        return false;
    }
}

LevelLabels energy(const SectorLabels& sector, HalfInt n)
{
    const HalfInt gap = n - sector.j - HalfInt::from_int(1);
    if (!gap.is_integer() || gap.twice() < 0)
        throw InvalidLevel("invalid level n=" + n.to_string() + " for j=" + sector.j.to_string() +
                           ": n - j - 1 must be a non-negative integer");
    LevelLabels out;
    out.n = n;
    out.nprime = gap.twice() / 2;
    out.K = n.value() + sector.shift();
    out.epsilon = 1.0 / out.K;
    out.energy = -1.0 / (2.0 * out.K * out.K);
    return out;
}

LevelLabels level_at(const SectorLabels& sector, std::int64_t nprime)
{
    if (nprime < 0)
        throw InvalidLevel("n' must be non-negative");
    return energy(sector, sector.j + HalfInt::from_int(nprime + 1));
}

IrrepLabels irrep_labels(const SectorLabels& sector, std::int64_t nprime)
{
    if (nprime < 0)
        throw InvalidLevel("n' must be non-negative");
    IrrepLabels out;
    out.mu = sector.bigJ;
    out.nu = sector.bigJ + static_cast<double>(nprime) + 1.0;
    out.nprime = nprime;
    return out;
}

std::vector<HalfInt> enumerate_j(const MonopoleParams& params, HalfInt m, HalfInt jmax)
{
    std::vector<HalfInt> out;
    for (HalfInt j = min_j(params, m); j <= jmax; j += HalfInt::from_int(1))
        out.push_back(j);
    return out;
}

std::vector<LevelLabels> enumerate_levels(const SectorLabels& sector, std::int64_t count)
{
    std::vector<LevelLabels> out;
    out.reserve(count > 0 ? static_cast<std::size_t>(count) : 0);
    for (std::int64_t k = 0; k < count; ++k)
        out.push_back(level_at(sector, k));
    return out;
}

} // namespace su11
