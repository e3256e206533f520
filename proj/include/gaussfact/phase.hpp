#pragma once

#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "gaussfact/modular.hpp"

namespace gaussfact {

/**
 * An angle held as an exact rational multiple of pi, reduced modulo 2*pi:
 *
 *     value = pi * num / den   with   num in [0, 2*den).
 *
 * All reductions happen in integer arithmetic. The floating view is derived
 * from the reduced fraction, never the other way round, so a phase such as
 * pi * 263193 * 27 / 151 keeps its full precision no matter how large the
 * unreduced coefficient was.
 */
struct RationalAngle {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    // Wraps a signed coefficient into [0, 2*den).
    static RationalAngle wrap(std::int64_t numerator, std::uint64_t denominator)
    {
        if (denominator == 0)
            throw std::domain_error("RationalAngle: zero denominator");
        if (denominator > (std::uint64_t{1} << 62))
            throw std::domain_error("RationalAngle: denominator too large to reduce mod 2");
        const auto two_den = static_cast<std::int64_t>(2 * denominator);
        std::int64_t r = numerator % two_den;
        if (r < 0)
            r += two_den;
        return {static_cast<std::uint64_t>(r), denominator};
    }

    double radians() const
    {
        return std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    }

    double degrees() const
    {
        return 180.0 * static_cast<double>(num) / static_cast<double>(den);
    }

    // Lowest-terms representation of the same direction.
    RationalAngle normalized() const
    {
        if (num == 0)
            return {0, 1};
        const std::uint64_t g = std::gcd(num, den);
        return {num / g, den / g};
    }

    friend bool operator==(const RationalAngle&, const RationalAngle&) = default;
};

// True when two reduced angles denote the same direction (cross-multiplied,
// so 2/4 and 1/2 compare equal).
inline bool same_angle(const RationalAngle& a, const RationalAngle& b)
{
    return static_cast<unsigned __int128>(a.num) * b.den ==
           static_cast<unsigned __int128>(b.num) * a.den;
}

} // namespace gaussfact
