#pragma once

#include <cstdint>

namespace hfsk {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    bool contains(double p) const { return p >= lo && p <= hi; }
    double half_width() const { return 0.5 * (hi - lo); }
};

// Wilson score interval for k successes out of n trials at the given
// two-sided confidence (normal quantile z).
Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z);

// Normal quantiles used throughout: 95% -> 1.9600, 99% -> 2.5758.
inline constexpr double kZ95 = 1.959963984540054;
inline constexpr double kZ99 = 2.5758293035489004;

} // namespace hfsk
