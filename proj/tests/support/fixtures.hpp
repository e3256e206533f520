#pragma once

#include <cstdint>
#include <vector>

// Regression fixtures frozen from the oracle layer (fixture_dump.cpp).
// Instance: n = 263193, trial range 2..200, truncation M = 14, threshold
// 1/sqrt(2). Regenerate with fixture_dump if the instance ever changes.
namespace fixtures {

inline const std::vector<std::uint64_t> kClassifiedFactors = {3, 7, 21, 83, 151};

// Largest |total| over non-divisors (reached at l = 4, where the signal is
// 1 for even m and 0 for odd m, giving 8/15).
inline constexpr double kMaxNonDivisorTotal = 0.533333333333;
inline constexpr std::uint64_t kMaxNonDivisorAt = 4;

// Ideal contrast curve V(M), M = 1..14, over the same trial range.
inline constexpr double kContrastCurve[14] = {
    0.356476211900, 0.455411808878, 0.508196876461, 0.565475727924,
    0.621225403262, 0.625980272477, 0.653654303964, 0.658504830033,
    0.699465369361, 0.701813635322, 0.711153470530, 0.709816178663,
    0.724757076735, 0.728438684715,
};

// Ideal total at l = 150, the non-divisor right next to the factor 151,
// M = 14.
inline constexpr double kTotalAt150 = -0.140948614980;

} // namespace fixtures
