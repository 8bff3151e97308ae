#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace altroute {

/// Non-negative link or path cost held as fixed-point micro-units.
///
/// Every weight the protocol derives is a sum or difference of input costs,
/// so integer arithmetic keeps distributed and centralized runs bit-identical
/// and lets path sums be compared with recovery costs without a tolerance.
class Cost {
public:
    static constexpr std::int64_t kScale = 1'000'000;
    static constexpr int kDecimals = 6;

    constexpr Cost() = default;

    static constexpr Cost from_units(std::int64_t units) { return Cost{units}; }
    static constexpr Cost whole(std::int64_t value) { return Cost{value * kScale}; }
    static constexpr Cost infinity() { return Cost{std::numeric_limits<std::int64_t>::max()}; }

    /// Parses a plain decimal ("12", "0.25", "7."), at most six fractional digits.
    static Cost parse(std::string_view text);

    constexpr std::int64_t units() const { return units_; }
    constexpr bool is_infinite() const { return units_ == std::numeric_limits<std::int64_t>::max(); }
    constexpr bool is_negative() const { return units_ < 0; }
    double to_double() const { return static_cast<double>(units_) / static_cast<double>(kScale); }

    /// Shortest decimal rendering: "12", "12.5", "inf".
    std::string to_string() const;

    constexpr Cost& operator+=(Cost other) {
        units_ += other.units_;
        return *this;
    }
    constexpr Cost& operator-=(Cost other) {
        units_ -= other.units_;
        return *this;
    }
    friend constexpr Cost operator+(Cost a, Cost b) { return a += b; }
    friend constexpr Cost operator-(Cost a, Cost b) { return a -= b; }
    friend constexpr Cost operator*(std::int64_t k, Cost c) { return Cost{k * c.units_}; }

    constexpr auto operator<=>(const Cost&) const = default;

private:
    constexpr explicit Cost(std::int64_t units) : units_(units) {}

    std::int64_t units_ = 0;
};

}  // namespace altroute
