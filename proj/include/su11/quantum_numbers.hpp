#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace su11 {

/// Exact integer or half-odd-integer value, stored as twice its value.
class HalfInt {
public:
    constexpr HalfInt() = default;

    static constexpr HalfInt from_twice(std::int64_t twice) { return HalfInt(twice); }
    static constexpr HalfInt from_int(std::int64_t value) { return HalfInt(2 * value); }

    /// Parses "3/2", "-1/2", "2", "1.5" or "-0.5". Throws std::invalid_argument
    /// unless the text denotes an exact multiple of 1/2.
    static HalfInt parse(std::string_view text);

    constexpr std::int64_t twice() const { return twice_; }
    constexpr double value() const { return static_cast<double>(twice_) / 2.0; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr HalfInt abs() const { return HalfInt(twice_ < 0 ? -twice_ : twice_); }

    /// Same integer/half-odd class.
    constexpr bool same_parity(HalfInt other) const { return (twice_ - other.twice_) % 2 == 0; }

    constexpr HalfInt operator-() const { return HalfInt(-twice_); }
    constexpr HalfInt operator+(HalfInt rhs) const { return HalfInt(twice_ + rhs.twice_); }
    constexpr HalfInt operator-(HalfInt rhs) const { return HalfInt(twice_ - rhs.twice_); }
    constexpr HalfInt& operator+=(HalfInt rhs) { twice_ += rhs.twice_; return *this; }

    constexpr auto operator<=>(const HalfInt&) const = default;

    /// "1/2", "-3/2", "2".
    std::string to_string() const;
    /// Exact decimal form: "0.5", "-1.5", "2".
    std::string to_decimal() const;

private:
    constexpr explicit HalfInt(std::int64_t twice) : twice_(twice) {}
    std::int64_t twice_ = 0;
};

struct MonopoleParams {
    HalfInt s;
    double c1 = 0.0;
    double c2 = 0.0;

    /// Throws ParamOutOfRange when a coupling is negative or not finite.
    void validate() const;
};

/// Derived labels of one (m, j) sector.
struct SectorLabels {
    MonopoleParams params;
    HalfInt m;
    HalfInt j;
    HalfInt mplus;    // (|m+s| + |m-s|)/2
    double m1 = 0.0;  // sqrt((m-s)^2 + 4 c1)
    double m2 = 0.0;  // sqrt((m+s)^2 + 4 c2)
    double delta1 = 0.0;
    double delta2 = 0.0;
    double bigJ = 0.0;      // j + (delta1 + delta2)/2
    double sep_const = 0.0; // J (J + 1)

    double shift() const { return 0.5 * (delta1 + delta2); }
};

struct LevelLabels {
    HalfInt n;
    std::int64_t nprime = 0; // n - j - 1
    double K = 0.0;
    double epsilon = 0.0;
    double energy = 0.0;
};

struct IrrepLabels {
    double mu = 0.0;
    double nu = 0.0;
    std::int64_t nprime = 0;
};

/// Throws InvalidQuantumNumbers (or ParamOutOfRange for bad couplings).
SectorLabels make_sector(const MonopoleParams& params, HalfInt m, HalfInt j);

/// Non-throwing form of the make_sector preconditions.
bool is_valid_sector(const MonopoleParams& params, HalfInt m, HalfInt j);

/// Bound-state level n of the sector. Throws InvalidLevel unless n - j - 1 is a
/// non-negative integer.
LevelLabels energy(const SectorLabels& sector, HalfInt n);

/// Level with n = j + nprime + 1.
LevelLabels level_at(const SectorLabels& sector, std::int64_t nprime);

IrrepLabels irrep_labels(const SectorLabels& sector, std::int64_t nprime);

/// Smallest admissible j for (s, m): max(|m|, |s|). Throws InvalidQuantumNumbers
/// when m and s differ in parity.
HalfInt min_j(const MonopoleParams& params, HalfInt m);

/// Admissible j values m+, m+ + 1, ... up to and including jmax.
std::vector<HalfInt> enumerate_j(const MonopoleParams& params, HalfInt m, HalfInt jmax);

/// First `count` levels n = j+1, j+2, ...
std::vector<LevelLabels> enumerate_levels(const SectorLabels& sector, std::int64_t count);

inline constexpr std::int64_t kDefaultJSpan = 32;
inline constexpr std::int64_t kDefaultLevelSpan = 32;

} // namespace su11
