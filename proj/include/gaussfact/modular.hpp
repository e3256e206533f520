#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gaussfact {

// Product modulo m, exact for all 64-bit operands.
constexpr std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    if (m == 0)
        throw std::domain_error("mulmod: zero modulus");
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// Largest r with r*r <= n. The float seed can be off by one in either
// direction for n near 2^53, so it is corrected with integer arithmetic.
inline std::uint64_t integer_sqrt(std::uint64_t n)
{
    if (n == 0)
        return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r)
        --r;
    while (r + 1 <= n / (r + 1))
        ++r;
    return r;
}

// All primes <= limit, ascending.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit)
{
    std::vector<std::uint64_t> primes;
    if (limit < 2)
        return primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (composite[p])
            continue;
        primes.push_back(p);
        if (p <= limit / p)
            for (std::uint64_t q = p * p; q <= limit; q += p)
                composite[q] = true;
    }
    return primes;
}

} // namespace gaussfact
