#include <doctest.h>

#include "su11/errors.hpp"
#include "su11/quantum_numbers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

using namespace su11;

namespace {

HalfInt half(int twice) { return HalfInt::from_twice(twice); }

const MonopoleParams kHydrogen{HalfInt::from_int(0), 0.0, 0.0};
const MonopoleParams kShifted{half(1), 1.0, 0.0};

} // namespace

TEST_CASE("HalfInt parsing accepts fractions and decimals")
{
    CHECK(HalfInt::parse("3/2") == half(3));
    CHECK(HalfInt::parse("1.5") == half(3));
    CHECK(HalfInt::parse("-1/2") == half(-1));
    CHECK(HalfInt::parse("-0.5") == half(-1));
    CHECK(HalfInt::parse("2") == HalfInt::from_int(2));
    CHECK(HalfInt::parse("4/1") == HalfInt::from_int(4));
    CHECK(HalfInt::parse("2.50") == half(5));
    CHECK_THROWS_AS(HalfInt::parse("1/3"), std::invalid_argument);
    CHECK_THROWS_AS(HalfInt::parse("0.25"), std::invalid_argument);
    CHECK_THROWS_AS(HalfInt::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(HalfInt::parse(""), std::invalid_argument);

    CHECK(half(-3).to_string() == "-3/2");
    CHECK(half(-3).to_decimal() == "-1.5");
    CHECK(HalfInt::from_int(7).to_decimal() == "7");
}

TEST_CASE("make_sector at zero coupling has no shifts")
{
    const auto s = make_sector(kHydrogen, HalfInt::from_int(0), HalfInt::from_int(0));
    CHECK(s.delta1 == 0.0);
    CHECK(s.delta2 == 0.0);
    CHECK(s.bigJ == 0.0);
    CHECK(s.sep_const == 0.0);
}

TEST_CASE("make_sector shifted example")
{
    const auto s = make_sector(kShifted, half(1), half(1));
    CHECK(s.delta1 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(s.delta2 == 0.0);
    CHECK(s.m1 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(s.m2 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.mplus == half(1));
    CHECK(s.bigJ == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(s.sep_const == doctest::Approx(3.75).epsilon(1e-15));
}

TEST_CASE("make_sector rejects inconsistent quantum numbers")
{
    const MonopoleParams s1{HalfInt::from_int(1), 0.0, 0.0};
    CHECK_THROWS_AS(make_sector(s1, HalfInt::from_int(0), HalfInt::from_int(0)), InvalidQuantumNumbers);
    try {
        make_sector(s1, HalfInt::from_int(0), HalfInt::from_int(0));
    } catch (const InvalidQuantumNumbers& e) {
        CHECK(std::string(e.what()).find("j >= m+") != std::string::npos);
    }
    // parity mismatch
    CHECK_THROWS_AS(make_sector(kShifted, HalfInt::from_int(0), HalfInt::from_int(1)), InvalidQuantumNumbers);
    CHECK_THROWS_AS(make_sector(kHydrogen, half(1), half(1)), InvalidQuantumNumbers);
    // |m| > j
    CHECK_THROWS_AS(make_sector(kHydrogen, HalfInt::from_int(2), HalfInt::from_int(1)), InvalidQuantumNumbers);
    // negative couplings
    CHECK_THROWS_AS(make_sector({HalfInt::from_int(0), -1.0, 0.0}, HalfInt::from_int(0), HalfInt::from_int(0)),
                    ParamOutOfRange);
}

TEST_CASE("energy closed form")
{
    const auto h = make_sector(kHydrogen, HalfInt::from_int(0), HalfInt::from_int(0));
    const auto e1 = energy(h, HalfInt::from_int(1));
    CHECK(e1.energy == -0.5);
    CHECK(e1.K == 1.0);
    CHECK(e1.epsilon == 1.0);

    const auto s = make_sector(kShifted, half(1), half(1));
    const auto e = energy(s, half(3));
    CHECK(e.energy == doctest::Approx(-0.08).epsilon(1e-15));
    CHECK(e.K == doctest::Approx(2.5).epsilon(1e-15));
    const auto next = energy(s, half(5));
    CHECK(next.K - e.K == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(energy(s, half(1)), InvalidLevel);
    CHECK_THROWS_AS(energy(s, HalfInt::from_int(2)), InvalidLevel);
    CHECK_THROWS_AS(energy(h, HalfInt::from_int(0)), InvalidLevel);
}

TEST_CASE("irrep labels")
{
    const auto h = make_sector(kHydrogen, HalfInt::from_int(0), HalfInt::from_int(0));
    const auto a = irrep_labels(h, 0);
    CHECK(a.mu == 0.0);
    CHECK(a.nu == 1.0);

    const auto s = make_sector(kShifted, half(1), half(1));
    CHECK(irrep_labels(s, 2).nu == doctest::Approx(4.5).epsilon(1e-15));
    for (int k = 0; k < 10; ++k) {
        CHECK(irrep_labels(s, k).nu == level_at(s, k).K);
        CHECK(irrep_labels(s, k).nu == irrep_labels(s, k).mu + k + 1);
    }
    CHECK_THROWS_AS(irrep_labels(s, -1), InvalidLevel);
}

TEST_CASE("property: enumeration and validation agree")
{
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> twice_s(-6, 6);
    std::uniform_real_distribution<double> coupling(0.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const MonopoleParams p{half(twice_s(rng)), coupling(rng), coupling(rng)};
        for (int tm = -9; tm <= 9; ++tm) {
            const HalfInt m = half(tm);
            if (!m.same_parity(p.s))
                continue;
            const auto js = enumerate_j(p, m, half(24));
            for (int tj = -2; tj <= 24; ++tj) {
                const bool listed = std::find(js.begin(), js.end(), half(tj)) != js.end();
                CHECK(listed == is_valid_sector(p, m, half(tj)));
            }
        }
    }
}

TEST_CASE("property: spectrum is negative, increasing, and round-trips K")
{
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> twice_s(-5, 5);
    std::uniform_real_distribution<double> coupling(0.0, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        const MonopoleParams p{half(twice_s(rng)), coupling(rng), coupling(rng)};
        const HalfInt m = p.s; // always admissible
        for (const HalfInt j : enumerate_j(p, m, min_j(p, m) + HalfInt::from_int(4))) {
            const auto sector = make_sector(p, m, j);
            CHECK(sector.sep_const >= 0.0);
            double prev = -std::numeric_limits<double>::infinity();
            for (const auto& level : enumerate_levels(sector, 12)) {
                CHECK(level.energy < 0.0);
                CHECK(level.energy > prev);
                prev = level.energy;
                CHECK(level.K * level.K == doctest::Approx(-1.0 / (2.0 * level.energy)).epsilon(1e-15));
                CHECK(level.epsilon * level.K == doctest::Approx(1.0).epsilon(1e-15));
                // integer s => integer j, m, n; half-odd s => half-odd j, m, n
                CHECK(level.n.is_integer() == p.s.is_integer());
                CHECK(j.is_integer() == p.s.is_integer());
            }
        }
    }
}
